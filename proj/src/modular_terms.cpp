#include "vexspace/modular_terms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "vexspace/errors.hpp"
#include "vexspace/simd.hpp"

namespace vexspace {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class Op>
std::vector<std::vector<double>> buildSparse(const std::vector<double>& v, Op op) {
  std::vector<std::vector<double>> t;
  if (v.empty()) return t;
  t.push_back(v);
  for (std::size_t len = 2; len <= v.size(); len *= 2) {
    const std::vector<double>& prev = t.back();
    std::vector<double> next(v.size() - len + 1);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = op(prev[i], prev[i + len / 2]);
    t.push_back(std::move(next));
  }
  return t;
}

template <class Op>
double querySparse(const std::vector<std::vector<double>>& t, std::uint32_t a, std::uint32_t b, Op op) {
  std::uint32_t len = b - a;
  int level = std::bit_width(len) - 1;
  return op(t[level][a], t[level][b - (1u << level)]);
}

const double& minOp(const double& a, const double& b) { return std::min(a, b); }
const double& maxOp(const double& a, const double& b) { return std::max(a, b); }

}  // namespace

ModularTerms::ModularTerms(const GridFunction& g, std::span<const double> p, std::span<const double> q)
    : cell_(g.grid().cellVolume()) {
  std::size_t n = g.size();
  if (p.size() != n || (!q.empty() && q.size() != n)) throw DomainError("exponent samples do not match the grid");
  rankF_.resize(n + 1);
  rankI_.resize(n + 1);
  sIsP_ = q.empty();
  for (std::size_t i = 0; i < n; ++i) {
    rankF_[i] = static_cast<std::uint32_t>(p_.size());
    rankI_[i] = static_cast<std::uint32_t>(infL_.size());
    double a = std::abs(g[i]);
    if (a == 0) continue;
    double qi = q.empty() ? 1.0 : q[i];
    if (p[i] == kInf) {
      infL_.push_back(std::log(a));
      infInvQ_.push_back(qi == kInf ? 0.0 : 1.0 / qi);
    } else {
      p_.push_back(p[i]);
      logAbs_.push_back(std::log(a));
      double s = qi == kInf ? 0.0 : p[i] / qi;
      s_.push_back(s);
      if (s == 0) hasZeroS_ = true;
    }
  }
  rankF_[n] = static_cast<std::uint32_t>(p_.size());
  rankI_[n] = static_cast<std::uint32_t>(infL_.size());
  positiveS_.resize(p_.size() + 1);
  prefix_.resize(p_.size() + 1);
  for (std::size_t k = 0; k < p_.size(); ++k) {
    positiveS_[k + 1] = positiveS_[k] + (s_[k] > 0 ? 1 : 0);
    prefix_[k + 1] = prefix_[k] + static_cast<long double>(std::exp(p_[k] * logAbs_[k]));
  }
  pMin_ = buildSparse(p_, minOp);
  pMax_ = buildSparse(p_, maxOp);
  if (!sIsP_) {
    sMin_ = buildSparse(s_, minOp);
    sMax_ = buildSparse(s_, maxOp);
  }
}

ModularTerms::Sums ModularTerms::evaluate(std::span<const NodeRun> runs, double alpha, double beta) const {
  for (const NodeRun& run : runs) {
    Range r = infiniteRange(run);
    for (std::uint32_t k = r.begin; k < r.end; ++k)
      if (alpha + infL_[k] - beta * infInvQ_[k] > 0) return {kInf, kInf};
  }
  Sums total;
  for (const NodeRun& run : runs) {
    Range r = finiteRange(run);
    if (r.begin == r.end) continue;
    simd::ExpSums part = simd::sumExpAffine(p_.data() + r.begin, logAbs_.data() + r.begin, s_.data() + r.begin,
                                            r.end - r.begin, alpha, beta);
    total.sum += part.sum;
    total.slope += part.slope;
  }
  total.sum *= cell_;
  total.slope *= cell_;
  return total;
}

bool ModularTerms::withinUnit(std::span<const NodeRun> runs, double alpha, double beta) const {
  return evaluate(runs, alpha, beta).sum <= 1;
}

bool ModularTerms::anyInfinite(std::span<const NodeRun> runs) const {
  for (const NodeRun& run : runs) {
    Range r = infiniteRange(run);
    if (r.begin != r.end) return true;
  }
  return false;
}

double ModularTerms::massAtZero(std::span<const NodeRun> runs) const {
  long double sum = 0, top = 0;
  bool any = false;
  for (const NodeRun& run : runs) {
    Range r = finiteRange(run);
    if (r.begin == r.end) continue;
    any = true;
    sum += prefix_[r.end] - prefix_[r.begin];
    top = std::max(top, prefix_[r.end]);
  }
  if (!any) return 0;
  // Guard against cancellation in the prefix differences.
  double bound = static_cast<double>(sum + top * 1e-15L * static_cast<long double>(runs.size()));
  return bound * cell_ * (1 + 1e-12);
}

ModularTerms::Extremes ModularTerms::extremes(std::span<const NodeRun> runs) const {
  Extremes e{kInf, -kInf, kInf, -kInf};
  for (const NodeRun& run : runs) {
    Range r = finiteRange(run);
    if (r.begin == r.end) continue;
    e.pMin = std::min(e.pMin, querySparse(pMin_, r.begin, r.end, minOp));
    e.pMax = std::max(e.pMax, querySparse(pMax_, r.begin, r.end, maxOp));
    if (!sIsP_) {
      e.sMin = std::min(e.sMin, querySparse(sMin_, r.begin, r.end, minOp));
      e.sMax = std::max(e.sMax, querySparse(sMax_, r.begin, r.end, maxOp));
    }
  }
  if (sIsP_) {
    e.sMin = e.pMin;
    e.sMax = e.pMax;
  }
  return e;
}

double ModularTerms::logModularUpperBound(std::span<const NodeRun> runs, double alpha, double beta) const {
  if (anyInfinite(runs)) return kInf;
  double mass = massAtZero(runs);
  if (mass == 0) return -kInf;
  Extremes e = extremes(runs);
  double shift = std::max(e.pMin * alpha, e.pMax * alpha) + std::max(-e.sMin * beta, -e.sMax * beta);
  return shift + std::log(mass) + 1e-12;
}

double ModularTerms::infimumLogUpperBound(std::span<const NodeRun> runs, double alpha) const {
  if (anyInfinite(runs)) return kInf;
  double mass = massAtZero(runs);
  if (mass == 0) return -kInf;
  Extremes e = extremes(runs);
  double logA = std::max(e.pMin * alpha, e.pMax * alpha) + std::log(mass) + 1e-12;
  if (logA > 0) {
    if (e.sMin <= 0) return kInf;
    return logA / e.sMin * (1 + 1e-12) + 1e-12;
  }
  if (e.sMax <= 0) return -kInf;
  return logA / e.sMax + 1e-12;
}

double ModularTerms::infimumLog(std::span<const NodeRun> runs, double alpha, const BisectionConfig& cfg,
                                double guess) const {
  // Nodes with p = inf force beta >= q (alpha + log|g|), or fail outright when q = inf.
  double betaMin = -kInf;
  for (const NodeRun& run : runs) {
    Range r = infiniteRange(run);
    for (std::uint32_t k = r.begin; k < r.end; ++k) {
      double v = alpha + infL_[k];
      if (infInvQ_[k] == 0) {
        if (v > 0) return kInf;
      } else {
        betaMin = std::max(betaMin, v / infInvQ_[k]);
      }
    }
  }
  std::size_t finite = 0, positive = 0;
  for (const NodeRun& run : runs) {
    Range r = finiteRange(run);
    finite += r.end - r.begin;
    positive += positiveS_[r.end] - positiveS_[r.begin];
  }
  if (finite == 0) return betaMin;
  if (hasZeroS_) {
    // Terms with q = inf do not scale with lambda: lambda^{1/inf} = 1.
    double constant = 0;
    for (const NodeRun& run : runs) {
      Range r = finiteRange(run);
      for (std::uint32_t k = r.begin; k < r.end; ++k)
        if (s_[k] == 0) constant += std::exp(p_[k] * (alpha + logAbs_[k]));
    }
    constant *= cell_;
    if (constant > 1) return kInf;
    if (positive == 0) return betaMin;
  }

  const double tol = cfg.logTolerance();
  // The upper end is padded by a few ulps so that rho(g / lambda) <= 1 also
  // holds when the modular is summed directly with different rounding.
  auto padded = [](double b) { return b + 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b)); };
  double lo = -kInf, hi = kInf;
  double beta = std::isfinite(guess) ? guess : 0.0;
  if (betaMin > -kInf) {
    // Nudge so that phi_inf(|g| e^{-betaMin/q}) sees a value <= 1 despite rounding.
    betaMin += 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(betaMin));
    if (evaluate(runs, alpha, betaMin).sum <= 1) return betaMin;
    lo = betaMin;
    beta = std::max(beta, betaMin + tol);
  }
  double step = std::log(cfg.bracketGrowthFactor);
  for (int it = 0; it < cfg.maxIterations; ++it) {
    Sums v = evaluate(runs, alpha, beta);
    bool inside = v.sum <= 1;
    if (inside)
      hi = beta;
    else
      lo = beta;
    if (hi - lo <= tol) return padded(hi);

    double next = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(v.sum) && v.sum > 0 && v.slope > 0) {
      // log rho is convex in beta, so the Newton point never passes the root from the left.
      next = beta + std::log(v.sum) * v.sum / v.slope;
      if (inside)
        next = std::min(next, beta - tol / 2);
      else
        next += tol / 2;
    }
    if (!std::isfinite(next)) {
      if (std::isfinite(lo) && std::isfinite(hi)) {
        next = lo + (hi - lo) / 2;
      } else {
        next = inside ? beta - step : beta + step;
        step *= 2;
      }
    }
    if (std::isfinite(lo) && std::isfinite(hi)) {
      double margin = tol / 4;
      if (!(next > lo + margin && next < hi - margin)) next = lo + (hi - lo) / 2;
    } else if (std::isfinite(hi) && next >= hi) {
      next = hi - step;
      step *= 2;
    } else if (std::isfinite(lo) && next <= lo) {
      next = lo + step;
      step *= 2;
    }
    beta = next;
  }
  if (std::isfinite(hi)) return padded(hi);
  throw OverflowError("inner infimum did not converge within maxIterations");
}

}  // namespace vexspace
