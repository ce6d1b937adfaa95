#include "vexspace/mixed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "vexspace/errors.hpp"
#include "vexspace/modular_terms.hpp"

namespace vexspace {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log sum exp with -inf/+inf entries.
double logSumExp(const std::vector<double>& logs) {
  double top = -kInf;
  for (double v : logs) top = std::max(top, v);
  if (top == -kInf || top == kInf) return top;
  double sum = 0;
  for (double v : logs) sum += std::exp(v - top);
  return top + std::log(sum);
}

std::vector<std::unique_ptr<ModularTerms>> compile(const VariableExponent& p, const VariableExponent& q,
                                                   const GridFunctionSequence& fs) {
  std::vector<double> pv = p.sample(fs.grid()), qv = q.sample(fs.grid());
  std::vector<std::unique_ptr<ModularTerms>> out;
  for (const GridFunction& f : fs.entries()) out.push_back(std::make_unique<ModularTerms>(f, pv, qv));
  return out;
}

// Reference Lp norm of raw arrays (F may hold +inf) by plain bisection on
// the pow-based modular.
double referenceNorm(const std::vector<double>& F, const std::vector<double>& P, double cell,
                     const BisectionConfig& cfg) {
  bool any = false;
  for (double v : F) {
    if (v == kInf) return kInf;
    if (v != 0) any = true;
  }
  if (!any) return 0;
  auto within = [&](double m) {
    double lambda = std::exp(m), sum = 0;
    for (std::size_t i = 0; i < F.size(); ++i) {
      if (F[i] == 0) continue;
      double v = phiP(P[i], F[i] / lambda);
      if (v == kInf) return false;
      sum += v;
    }
    return sum * cell <= 1;
  };
  return std::exp(bisectLogThreshold(within, cfg));
}

double quotientExponent(double p, double q) {
  if (p == kInf) return q == kInf ? 1.0 : kInf;
  return p / q;
}

}  // namespace

bool innerInfimumNeedsDirectBranch(const VariableExponent& p, const VariableExponent& q, const Grid& grid) {
  if (q.max() < kInfinity) return false;
  std::vector<double> pv = p.sample(grid), qv = q.sample(grid);
  for (std::size_t i = 0; i < pv.size(); ++i)
    if (qv[i] == kInf && pv[i] < kInf) return true;
  return false;
}

double modularMixedLebesgue(const VariableExponent& p, const VariableExponent& q, const GridFunctionSequence& fs,
                            const BisectionConfig& cfg) {
  cfg.validate();
  auto terms = compile(p, q, fs);
  std::vector<NodeRun> runs = wholeGridRuns(fs.grid());
  BisectionConfig inner = cfg.inner();
  double sum = 0;
  for (const auto& t : terms) {
    double v = std::exp(t->infimumLog(runs, 0.0, inner));
    if (v == kInf) return kInf;
    sum += v;
  }
  return sum;
}

std::optional<double> modularMixedLebesgueSimple(const VariableExponent& p, const VariableExponent& q,
                                                 const GridFunctionSequence& fs, const BisectionConfig& cfg) {
  if (innerInfimumNeedsDirectBranch(p, q, fs.grid())) return std::nullopt;
  std::vector<double> pv = p.sample(fs.grid()), qv = q.sample(fs.grid());
  std::vector<double> P(pv.size());
  for (std::size_t i = 0; i < pv.size(); ++i) P[i] = quotientExponent(pv[i], qv[i]);
  BisectionConfig inner = cfg.inner();
  double sum = 0;
  for (const GridFunction& f : fs.entries()) {
    std::vector<double> F(f.size());
    for (std::size_t i = 0; i < F.size(); ++i) F[i] = phiP(qv[i], std::abs(f[i]));
    double v = referenceNorm(F, P, fs.grid().cellVolume(), inner);
    if (v == kInf) return kInf;
    sum += v;
  }
  return sum;
}

double normMixedLebesgue(const VariableExponent& p, const VariableExponent& q, const GridFunctionSequence& fs,
                         const BisectionConfig& cfg) {
  cfg.validate();
  if (fs.isZero()) return 0;
  auto terms = compile(p, q, fs);
  std::vector<NodeRun> runs = wholeGridRuns(fs.grid());
  BisectionConfig inner = cfg.inner();
  auto logModular = [&](double m) {
    std::vector<double> logs;
    for (const auto& t : terms) logs.push_back(t->infimumLog(runs, -m, inner));
    return logSumExp(logs);
  };
  return std::exp(solveLogThresholdSlope(logModular, cfg, q.min(), q.max()));
}

namespace {

struct MorreySetup {
  std::vector<std::unique_ptr<ModularTerms>> terms;
  std::vector<double> prefactor;
  std::vector<SweepCache> caches;
};

MorreySetup setupMorrey(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                        const GridFunctionSequence& fs, const BallSearchSet& balls) {
  requireSameGrid(fs.grid(), balls.grid());
  requireOrdered(p, u, balls);
  MorreySetup s{compile(p, q, fs), ballLogPrefactors(p, u, balls), {}};
  s.caches.resize(s.terms.size());
  for (SweepCache& c : s.caches) {
    c.slopeMin = q.min();
    c.slopeMax = q.max();
  }
  return s;
}

double sequenceLogModular(MorreySetup& s, const BallSearchSet& balls, double logMu, const BisectionConfig& inner) {
  std::vector<double> logs;
  for (std::size_t k = 0; k < s.terms.size(); ++k)
    logs.push_back(sweepInfimumLog(*s.terms[k], balls, s.prefactor, logMu, inner, nullptr, &s.caches[k]));
  return logSumExp(logs);
}

}  // namespace

double modularMixedMorrey(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                          const GridFunctionSequence& fs, const BallSearchSet& balls, const BisectionConfig& cfg) {
  cfg.validate();
  MorreySetup s = setupMorrey(p, q, u, fs, balls);
  return std::exp(sequenceLogModular(s, balls, 0.0, cfg.inner()));
}

std::optional<double> modularMixedMorreySimple(const VariableExponent& p, const VariableExponent& q,
                                               const VariableExponent& u, const GridFunctionSequence& fs,
                                               const BallSearchSet& balls, const BisectionConfig& cfg) {
  if (innerInfimumNeedsDirectBranch(p, q, fs.grid())) return std::nullopt;
  MorreySetup s = setupMorrey(p, q, u, fs, balls);
  std::vector<double> pv = p.sample(fs.grid()), qv = q.sample(fs.grid());
  BisectionConfig inner = cfg.inner();
  double cell = fs.grid().cellVolume();
  double sum = 0;
  for (std::size_t nu = 0; nu < fs.size(); ++nu) {
    const GridFunction& f = fs[nu];
    if (f.isZero()) continue;
    std::vector<double> bound(balls.size());
    for (std::size_t b = 0; b < balls.size(); ++b)
      bound[b] = s.terms[nu]->infimumLogUpperBound(balls.runs(b), s.prefactor[b]);
    double best = sweepMaxLog(
        bound,
        [&](std::size_t b) {
          double c = std::exp(s.prefactor[b]);
          std::vector<double> F, P;
          for (const NodeRun& run : balls.runs(b))
            for (std::uint32_t i = run.begin; i < run.end; ++i) {
              F.push_back(phiP(qv[i], c * std::abs(f[i])));
              P.push_back(quotientExponent(pv[i], qv[i]));
            }
          return std::log(referenceNorm(F, P, cell, inner));
        },
        inner.logTolerance());
    double v = std::exp(best);
    if (v == kInf) return kInf;
    sum += v;
  }
  return sum;
}

double normMixedMorrey(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                       const GridFunctionSequence& fs, const BallSearchSet& balls, const BisectionConfig& cfg) {
  cfg.validate();
  MorreySetup s = setupMorrey(p, q, u, fs, balls);
  if (fs.isZero()) return 0;
  BisectionConfig inner = cfg.inner();
  return std::exp(
      solveLogThresholdSlope([&](double m) { return sequenceLogModular(s, balls, m, inner); }, cfg, q.min(), q.max()));
}

ModularBoundReport normFromModularBound(const VariableExponent& p, const VariableExponent& q,
                                        const VariableExponent& u, const GridFunctionSequence& fs,
                                        const BallSearchSet& balls, const BisectionConfig& cfg) {
  ModularBoundReport rep;
  double qMin = q.min(), qMax = q.max();
  if (qMin == kInf) {
    rep.note = "q- is infinite";
    return rep;
  }
  rep.modular = modularMixedMorrey(p, q, u, fs, balls, cfg);
  if (qMax == kInf && rep.modular == 0) {
    rep.note = "q+ is infinite and the modular vanishes";
    return rep;
  }
  rep.applicable = true;
  double a = std::pow(rep.modular, 1 / qMin);
  double b = qMax == kInf ? 1.0 : std::pow(rep.modular, 1 / qMax);
  rep.rhs = std::max(a, b);
  rep.lhs = normMixedMorrey(p, q, u, fs, balls, cfg);
  rep.pass = rep.lhs <= rep.rhs * (1 + 1e-8);
  return rep;
}

}  // namespace vexspace
