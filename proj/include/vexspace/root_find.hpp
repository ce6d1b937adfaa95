#pragma once

#include <functional>

namespace vexspace {

struct BisectionConfig {
  double relativeTolerance = 1e-10;
  int maxIterations = 200;
  double bracketGrowthFactor = 2.0;

  void validate() const;
  // Configuration for nested (inner) solves: tolerance / 10.
  BisectionConfig inner() const;
  double logTolerance() const;
};

// Finds inf{m : withinUnit(m)} for a predicate that is false below and true
// above the threshold m* (m = log lambda). Brackets by geometric steps from
// start, then bisects until the bracket width is below log(1 + tol).
// Returns the upper bracket end; -inf if the predicate holds everywhere
// probed down to the iteration limit.
// Throws OverflowError if no upper bracket is found.
double bisectLogThreshold(const std::function<bool(double)>& withinUnit, const BisectionConfig& cfg,
                          double start = 0.0);

// Same contract for a nonincreasing function F(m) (values may be +-inf),
// threshold inf{m : F(m) <= 0}. Uses regula falsi (Illinois variant) inside
// the bracket with bisection fallback.
double solveLogThreshold(const std::function<double(double)>& f, const BisectionConfig& cfg, double start = 0.0);

// Same contract when the decrease rate of F is known to lie in
// [slopeMin, slopeMax] (0 < slopeMin <= slopeMax <= inf):
//   slopeMin (m' - m) <= F(m) - F(m') <= slopeMax (m' - m) for m < m'.
// Every finite evaluation then narrows the bracket from both sides.
double solveLogThresholdSlope(const std::function<double(double)>& f, const BisectionConfig& cfg, double slopeMin,
                              double slopeMax, double start = 0.0);

}  // namespace vexspace
