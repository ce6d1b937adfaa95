#include "vexspace/lebesgue.hpp"

#include <cmath>
#include <limits>

#include "vexspace/balls.hpp"
#include "vexspace/modular_terms.hpp"

namespace vexspace {

double modularLp(const VariableExponent& p, const GridFunction& f) {
  std::vector<double> pv = p.sample(f.grid());
  double sum = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double v = phiP(pv[i], std::abs(f[i]));
    if (v == kInfinity) return kInfinity;
    sum += v;
  }
  return sum * f.grid().cellVolume();
}

double normLp(const VariableExponent& p, const GridFunction& f, const BisectionConfig& cfg) {
  cfg.validate();
  if (f.isZero()) return 0;
  std::vector<double> pv = p.sample(f.grid());
  ModularTerms terms(f, pv);
  std::vector<NodeRun> runs = wholeGridRuns(f.grid());
  return std::exp(terms.infimumLog(runs, 0.0, cfg));
}

double normLpBisection(const VariableExponent& p, const GridFunction& f, const BisectionConfig& cfg) {
  if (f.isZero()) return 0;
  return std::exp(bisectLogThreshold(
      [&](double m) { return modularLp(p, f.scaled(std::exp(-m))) <= 1; }, cfg));
}

}  // namespace vexspace
