#include "vexspace/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vexspace/errors.hpp"
#include "vexspace/lebesgue.hpp"
#include "vexspace/mixed.hpp"
#include "vexspace/morrey.hpp"
#include "vexspace/trial.hpp"

namespace vexspace {

double etaValue(int nu, double m, const Point& x, int n) {
  if (!(m > 0)) throw DomainError("eta decay m must be positive");
  double scale = std::ldexp(1.0, nu);
  return std::pow(scale, n) * std::pow(1 + scale * norm(x, n), -m);
}

GridFunction etaKernel(const Grid& grid, int nu, double m) {
  double peak = etaValue(nu, m, {0, 0}, grid.dim());
  double cutoff = 1e-14 * peak;
  return GridFunction::sampleReal(grid, [&](const Point& x) {
    double v = etaValue(nu, m, x, grid.dim());
    return v < cutoff ? 0.0 : v;
  });
}

double etaL1Mass(double m, int n) {
  if (!(m > n)) throw DomainError("eta is integrable only for m > n");
  if (n == 1) return 2 / (m - 1);
  return 2 * std::numbers::pi / ((m - 1) * (m - 2));
}

double etaTailBound(int nu, double m, int n, double boxRadius) {
  if (!(m > n)) throw DomainError("eta is integrable only for m > n");
  double T = std::ldexp(boxRadius, nu);
  if (n == 1) return 2 * std::pow(1 + T, 1 - m) / (m - 1);
  // The box contains the disc of radius R.
  return 2 * std::numbers::pi * (std::pow(1 + T, 2 - m) / (m - 2) - std::pow(1 + T, 1 - m) / (m - 1));
}

GridFunctionSequence convolveEta(const GridFunctionSequence& fs, double m) {
  GridFunctionSequence out(fs.grid());
  for (std::size_t nu = 0; nu < fs.size(); ++nu)
    out.push(convolve(fs[nu], etaKernel(fs.grid(), static_cast<int>(nu), m)));
  return out;
}

ConvolutionThreshold convolutionThreshold(const VariableExponent& p, const VariableExponent& q,
                                          const VariableExponent& u, std::size_t sampleBudget) {
  ConvolutionThreshold t;
  ResolvedConstant c = resolveLogHolder(q, sampleBudget);
  t.cLogInvQ = c.value;
  t.cLogSampled = c.sampled;
  t.cInfinity = cInfinityPU(p, u, sampleBudget);
  t.value = p.dim() + t.cLogInvQ + p.dim() * t.cInfinity;
  return t;
}

namespace {

void finish(RatioReport& rep) {
  rep.maxRatio = 0;
  rep.minRatio = rep.ratios.empty() ? 0 : kInfinity;
  for (double r : rep.ratios) {
    if (!std::isfinite(r)) rep.finite = false;
    rep.maxRatio = std::max(rep.maxRatio, r);
    rep.minRatio = std::min(rep.minRatio, r);
  }
}

double ratioOrZero(double num, double den) { return den == 0 ? 0.0 : num / den; }

}  // namespace

RatioReport convolutionInequalityReport(const VariableExponent& p, const VariableExponent& q,
                                        const VariableExponent& u, double m, const TrialOptions& opt,
                                        const BallSearchSet& balls, const BisectionConfig& cfg) {
  RatioReport rep;
  ConvolutionThreshold th = convolutionThreshold(p, q, u);
  rep.parameter = m;
  rep.threshold = th.value;
  rep.hypothesisMet = m > th.value && p.min() >= 1;
  if (!rep.hypothesisMet) rep.note = "m at or below the threshold; informational";
  if (q.max() == kInfinity) rep.note += rep.note.empty() ? "q+ = inf regime" : "; q+ = inf regime";
  for (std::size_t t = 0; t < opt.trials; ++t) {
    TrialRng rng(trialSeed(opt.seed, t));
    GridFunctionSequence fs = randomBumpSequence(balls.grid(), rng, opt.levels);
    double before = normMixedMorrey(p, q, u, fs, balls, cfg);
    double after = normMixedMorrey(p, q, u, convolveEta(fs, m), balls, cfg);
    rep.ratios.push_back(ratioOrZero(after, before));
  }
  finish(rep);
  return rep;
}

RatioReport morreyConvolutionReport(const VariableExponent& p, const VariableExponent& u, double m,
                                    const TrialOptions& opt, const BallSearchSet& balls,
                                    const BisectionConfig& cfg) {
  RatioReport rep;
  rep.parameter = m;
  rep.threshold = p.dim() + p.dim() * cInfinityPU(p, u, 256);
  rep.hypothesisMet = m > rep.threshold && p.min() >= 1;
  if (!rep.hypothesisMet) rep.note = "m at or below the threshold; informational";
  for (std::size_t t = 0; t < opt.trials; ++t) {
    TrialRng rng(trialSeed(opt.seed, t));
    GridFunction f = randomBumps(balls.grid(), rng);
    double before = morreyNormDirect(p, u, f, balls, cfg);
    double worst = 0;
    for (std::size_t nu = 0; nu < opt.levels; ++nu) {
      GridFunction g = convolve(f, etaKernel(balls.grid(), static_cast<int>(nu), m));
      worst = std::max(worst, ratioOrZero(morreyNormDirect(p, u, g, balls, cfg), before));
    }
    rep.ratios.push_back(worst);
  }
  finish(rep);
  return rep;
}

RatioReport lebesgueConvolutionReport(const VariableExponent& p, double m, const TrialOptions& opt,
                                      const Grid& grid, const BisectionConfig& cfg) {
  RatioReport rep;
  rep.parameter = m;
  rep.threshold = grid.dim();
  rep.hypothesisMet = m > rep.threshold && p.min() >= 1;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    TrialRng rng(trialSeed(opt.seed, t));
    GridFunction f = randomBumps(grid, rng);
    double before = normLp(p, f, cfg);
    double worst = 0;
    for (std::size_t nu = 0; nu < opt.levels; ++nu) {
      GridFunction g = convolve(f, etaKernel(grid, static_cast<int>(nu), m));
      worst = std::max(worst, ratioOrZero(normLp(p, g, cfg), before));
    }
    rep.ratios.push_back(worst);
  }
  finish(rep);
  return rep;
}

WeightShiftReport weightShiftCheck(const VariableExponent& alpha, double m, double l, int levels,
                                   std::size_t samples) {
  if (!(m >= 0) || !(l >= 0)) throw DomainError("weight shift needs m >= 0 and l >= 0");
  if (levels < 1) throw DomainError("weight shift needs at least one level");
  int n = alpha.dim();
  double R = alpha.boxRadius();
  WeightShiftReport rep;
  rep.cLogAlpha =
      logHolderConstantsOf([&](const Point& x) { return alpha(x); }, std::nullopt, n, R, samples).cLocal;
  rep.hypothesisMet = l >= rep.cLogAlpha;

  std::vector<Point> pts = regularitySamplePoints(n, R, samples);
  std::vector<double> a(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) a[i] = alpha(pts[i]);
  rep.perLevel.assign(levels, 0.0);
  for (int nu = 0; nu < levels; ++nu) {
    double scale = std::ldexp(1.0, nu);
    auto ratio = [&](double ax, double ay, double d) {
      return std::exp2(nu * (ax - ay)) * std::pow(1 + scale * d, -l);
    };
    double worst = 1;  // x = y
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t k = 0; k < pts.size(); ++k)
        worst = std::max(worst, ratio(a[i], a[k], distance(pts[i], pts[k], n)));
    // Pairs at distances comparable to 2^{-nu}, where the two factors compete.
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (int k = -8; k <= 8; ++k)
        for (int sign : {-1, 1}) {
          double d = std::exp2(-nu + 0.5 * k);
          Point y = pts[i];
          y[0] += sign * d;
          if (std::abs(y[0]) > R) continue;
          double ay = alpha(y);
          worst = std::max({worst, ratio(a[i], ay, d), ratio(ay, a[i], d)});
        }
    rep.perLevel[nu] = worst;
    rep.worstConstant = std::max(rep.worstConstant, worst);
  }
  return rep;
}

GridFunctionSequence discreteConvolutionSum(const GridFunctionSequence& gs, double delta) {
  if (!(delta > 0)) throw DomainError("delta must be positive");
  for (const GridFunction& g : gs.entries())
    for (const Complex& v : g.values())
      if (v.imag() != 0 || v.real() < 0) throw DomainError("discrete convolution needs nonnegative entries");
  const Grid& grid = gs.grid();
  GridFunctionSequence out(grid);
  std::size_t J = gs.size();
  for (std::size_t nu = 0; nu < J; ++nu) {
    std::vector<Complex> acc(grid.size(), 0.0);
    for (std::size_t j = 0; j < J; ++j) {
      double w = std::exp2(-std::abs(static_cast<double>(nu) - static_cast<double>(j)) * delta);
      const auto& v = gs[j].values();
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * v[i].real();
    }
    out.push(GridFunction(grid, std::move(acc)));
  }
  return out;
}

DiscreteConvolutionReport discreteConvolutionReport(const VariableExponent& p, const VariableExponent& q,
                                                    const VariableExponent& u, std::vector<double> deltas,
                                                    const TrialOptions& opt, const BallSearchSet& balls,
                                                    const BisectionConfig& cfg) {
  std::sort(deltas.begin(), deltas.end());
  DiscreteConvolutionReport rep;
  rep.deltas = deltas;
  rep.maxRatio.assign(deltas.size(), 0.0);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    TrialRng rng(trialSeed(opt.seed, t));
    GridFunctionSequence gs = randomBumpSequence(balls.grid(), rng, opt.levels, true);
    double base = normMixedMorrey(p, q, u, gs, balls, cfg);
    std::vector<double> row;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      double r = ratioOrZero(normMixedMorrey(p, q, u, discreteConvolutionSum(gs, deltas[k]), balls, cfg), base);
      if (!std::isfinite(r)) rep.finite = false;
      if (k > 0 && r > row.back() * (1 + 1e-9)) rep.monotone = false;
      rep.maxRatio[k] = std::max(rep.maxRatio[k], r);
      row.push_back(r);
    }
    rep.ratios.push_back(row);
  }
  return rep;
}

}  // namespace vexspace
