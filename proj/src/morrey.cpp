#include "vexspace/morrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vexspace/errors.hpp"
#include "vexspace/modular_terms.hpp"

namespace vexspace {

double morreyNormDirect(const VariableExponent& p, const VariableExponent& u, const GridFunction& f,
                        const BallSearchSet& balls, const BisectionConfig& cfg) {
  cfg.validate();
  requireSameGrid(f.grid(), balls.grid());
  requireOrdered(p, u, balls);
  if (f.isZero()) return 0;
  std::vector<double> pv = p.sample(f.grid());
  ModularTerms terms(f, pv);
  std::vector<double> pref = ballLogPrefactors(p, u, balls);
  return std::exp(sweepInfimumLog(terms, balls, pref, 0.0, cfg));
}

double morreyNormInterchanged(const VariableExponent& p, const VariableExponent& u, const GridFunction& f,
                              const BallSearchSet& balls, const BisectionConfig& cfg) {
  cfg.validate();
  requireSameGrid(f.grid(), balls.grid());
  requireOrdered(p, u, balls);
  if (f.isZero()) return 0;
  std::vector<double> pv = p.sample(f.grid());
  ModularTerms terms(f, pv);
  std::vector<double> pref = ballLogPrefactors(p, u, balls);
  double m = bisectLogThreshold([&](double beta) { return sweepWithinUnit(terms, balls, pref, beta); }, cfg);
  return std::exp(m);
}

CharBallReport charBallNormRatio(const VariableExponent& p, const BallSearchSet& balls, const BisectionConfig& cfg) {
  const Grid& grid = balls.grid();
  int n = grid.dim();
  GridFunction ones = GridFunction::sampleReal(grid, [](const Point&) { return 1.0; });
  std::vector<double> pv = p.sample(grid);
  ModularTerms terms(ones, pv);
  std::optional<double> pInf = p.limitAtInfinity();
  CharBallReport rep;
  rep.minSmall = rep.minLarge = kInfinity;
  std::vector<double> ratioSmall(balls.size(), -1), ratioLarge(balls.size(), -1);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t b = 0; b < balls.size(); ++b) {
    if (!balls.insideBox(b)) continue;
    Ball ball = balls.ball(b);
    double normB = std::exp(terms.infimumLog(balls.runs(b), 0.0, cfg));
    if (ball.radius <= 1) {
      double pc = p(ball.center);
      double scale = pc == kInfinity ? 1.0 : std::pow(ball.radius, n / pc);
      ratioSmall[b] = normB / scale;
    }
    if (ball.radius >= 1 && pInf) {
      double scale = *pInf == kInfinity ? 1.0 : std::pow(ball.radius, n / *pInf);
      ratioLarge[b] = normB / scale;
    }
  }
  for (std::size_t b = 0; b < balls.size(); ++b) {
    if (ratioSmall[b] >= 0) {
      rep.minSmall = std::min(rep.minSmall, ratioSmall[b]);
      rep.maxSmall = std::max(rep.maxSmall, ratioSmall[b]);
      ++rep.countSmall;
    }
    if (ratioLarge[b] >= 0) {
      rep.minLarge = std::min(rep.minLarge, ratioLarge[b]);
      rep.maxLarge = std::max(rep.maxLarge, ratioLarge[b]);
      ++rep.countLarge;
    }
  }
  return rep;
}

}  // namespace vexspace
