#include "vexspace/root_find.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vexspace/errors.hpp"

namespace vexspace {

void BisectionConfig::validate() const {
  if (!(relativeTolerance > 0 && relativeTolerance < 1)) throw DomainError("relativeTolerance must lie in (0,1)");
  if (maxIterations < 1) throw DomainError("maxIterations must be positive");
  if (!(bracketGrowthFactor > 1)) throw DomainError("bracketGrowthFactor must exceed 1");
}

BisectionConfig BisectionConfig::inner() const {
  BisectionConfig c = *this;
  c.relativeTolerance = relativeTolerance / 10;
  return c;
}

double BisectionConfig::logTolerance() const { return std::log1p(relativeTolerance); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bracket {
  double lo, hi;
  double flo, fhi;
  bool unbounded_below = false;
};

// Geometric bracketing around start with doubling steps in log space.
template <class Eval>
Bracket bracketThreshold(Eval&& eval, const BisectionConfig& cfg, double start) {
  double step = std::log(cfg.bracketGrowthFactor);
  double f0 = eval(start);
  Bracket b{start, start, f0, f0};
  if (f0 <= 0) {
    double hi = start, fhi = f0;
    for (int it = 0; it < cfg.maxIterations; ++it) {
      double m = hi - step;
      double fm = eval(m);
      if (!(fm <= 0)) return {m, hi, fm, fhi};
      hi = m;
      fhi = fm;
      step *= 2;
      if (!std::isfinite(hi)) break;
    }
    b.hi = hi;
    b.fhi = fhi;
    b.unbounded_below = true;
    return b;
  }
  double lo = start, flo = f0;
  for (int it = 0; it < cfg.maxIterations; ++it) {
    double m = lo + step;
    if (!std::isfinite(m)) break;
    double fm = eval(m);
    if (fm <= 0) return {lo, m, flo, fm};
    lo = m;
    flo = fm;
    step *= 2;
  }
  throw OverflowError("no upper bracket found within maxIterations");
}

}  // namespace

double bisectLogThreshold(const std::function<bool(double)>& withinUnit, const BisectionConfig& cfg, double start) {
  cfg.validate();
  auto eval = [&](double m) { return withinUnit(m) ? -1.0 : 1.0; };
  Bracket b = bracketThreshold(eval, cfg, start);
  if (b.unbounded_below) return -kInf;
  double tol = cfg.logTolerance();
  for (int it = 0; it < cfg.maxIterations && b.hi - b.lo > tol; ++it) {
    double mid = b.lo + (b.hi - b.lo) / 2;
    if (withinUnit(mid))
      b.hi = mid;
    else
      b.lo = mid;
  }
  return b.hi;
}

double solveLogThreshold(const std::function<double(double)>& f, const BisectionConfig& cfg, double start) {
  cfg.validate();
  Bracket b = bracketThreshold(f, cfg, start);
  if (b.unbounded_below) return -kInf;
  double tol = cfg.logTolerance();
  int lastSide = 0;
  double widthTwoAgo = kInf, widthOneAgo = b.hi - b.lo;
  bool forceBisect = false;
  for (int it = 0; it < 4 * cfg.maxIterations && b.hi - b.lo > tol; ++it) {
    double x;
    if (!forceBisect && std::isfinite(b.flo) && std::isfinite(b.fhi) && b.flo > b.fhi) {
      x = b.hi - b.fhi * (b.hi - b.lo) / (b.fhi - b.flo);
    } else {
      x = b.lo + (b.hi - b.lo) / 2;
    }
    double margin = tol / 2;
    if (x < b.lo + margin) x = b.lo + margin;
    if (x > b.hi - margin) x = b.hi - margin;
    double fx = f(x);
    if (fx <= 0) {
      b.hi = x;
      b.fhi = fx;
      if (lastSide == 1) b.flo /= 2;
      lastSide = 1;
    } else {
      b.lo = x;
      b.flo = fx;
      if (lastSide == -1) b.fhi /= 2;
      lastSide = -1;
    }
    double width = b.hi - b.lo;
    forceBisect = width > 0.5 * widthTwoAgo;
    widthTwoAgo = widthOneAgo;
    widthOneAgo = width;
  }
  return b.hi;
}

double solveLogThresholdSlope(const std::function<double(double)>& f, const BisectionConfig& cfg, double slopeMin,
                              double slopeMax, double start) {
  cfg.validate();
  if (!(slopeMin > 0) || !std::isfinite(slopeMin) || !(slopeMax >= slopeMin)) return solveLogThreshold(f, cfg, start);
  const double tol = cfg.logTolerance();
  double lower = -kInf, upper = kInf;  // bounds on the threshold
  double hiEval = kInf;                // smallest evaluated point with F <= 0
  double loEval = -kInf;               // largest evaluated point with F > 0
  double x = start, step = std::log(cfg.bracketGrowthFactor);
  for (int it = 0; it < cfg.maxIterations; ++it) {
    double fx = f(x);
    if (fx <= 0) {
      hiEval = std::min(hiEval, x);
      upper = std::min(upper, x);
      if (std::isfinite(fx)) lower = std::max(lower, x + fx / slopeMin);
    } else {
      loEval = std::max(loEval, x);
      lower = std::max(lower, x);
      if (std::isfinite(fx)) {
        if (std::isfinite(slopeMax)) lower = std::max(lower, x + fx / slopeMax);
        upper = std::min(upper, x + fx / slopeMin);
      }
    }
    lower = std::max(lower, loEval);
    if (hiEval - lower <= tol) return hiEval;
    if (std::isfinite(lower) && std::isfinite(upper)) {
      if (upper - lower <= 0.75 * tol) {
        // The bounds pin the threshold; step just past the upper bound to absorb rounding.
        x = std::max(lower, upper) + tol / 4;
      } else {
        double mid = lower + (upper - lower) / 2;
        // Prefer the rate-weighted estimate from the latest value when it is finite.
        double guess = mid;
        if (std::isfinite(fx) && std::isfinite(slopeMax)) guess = x + fx * 2 / (slopeMin + slopeMax);
        x = std::clamp(guess, lower + tol / 4, upper - tol / 4);
      }
    } else if (std::isfinite(lower)) {
      x = lower + step;
      step *= 2;
    } else if (std::isfinite(upper)) {
      x = upper - step;
      step *= 2;
    } else {
      x = fx > 0 ? x + step : x - step;
      step *= 2;
    }
    if (x >= hiEval) x = lower + (hiEval - lower) / 2;
  }
  if (std::isfinite(hiEval)) return hiEval;
  throw OverflowError("no upper bracket found within maxIterations");
}

}  // namespace vexspace
