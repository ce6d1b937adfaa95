#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vexspace/exponent.hpp"
#include "vexspace/grid.hpp"
#include "vexspace/modular_terms.hpp"
#include "vexspace/root_find.hpp"

namespace vexspace {

struct Ball {
  Point center;
  double radius;
};

// Finite set of open balls (centers x radii) standing in for the supremum
// over all x and r > 0. Each ball's node set is precomputed as runs of flat
// indices; balls are truncated at the box and never wrap.
class BallSearchSet {
 public:
  // Default: 1-D centers at every node and every cell midpoint; 2-D centers
  // on every centerStride-th node per axis (default 4). Radii h 2^{k/2} below
  // twice the box diameter, then the whole-box radius (twice the diameter).
  static BallSearchSet standard(const Grid& grid, std::size_t centerStride = 0, bool midpoints = true);
  BallSearchSet(const Grid& grid, std::vector<Point> centers, std::vector<double> radii);

  const Grid& grid() const { return grid_; }
  const std::vector<Point>& centers() const { return centers_; }
  const std::vector<double>& radii() const { return radii_; }
  std::size_t size() const { return centers_.size() * radii_.size(); }
  Ball ball(std::size_t b) const { return {centers_[b / radii_.size()], radii_[b % radii_.size()]}; }
  std::span<const NodeRun> runs(std::size_t b) const {
    return {runs_.data() + offsets_[b], runs_.data() + offsets_[b + 1]};
  }
  // True if the ball lies inside the box (no truncation).
  bool insideBox(std::size_t b) const;

  static std::vector<double> standardRadii(const Grid& grid);

 private:
  void buildRuns();
  Grid grid_;
  std::vector<Point> centers_;
  std::vector<double> radii_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeRun> runs_;
};

// All nodes of the grid as runs (one per row).
std::vector<NodeRun> wholeGridRuns(const Grid& grid);

// log r^{n/u(x) - n/p(x)} per ball, x the ball center.
std::vector<double> ballLogPrefactors(const VariableExponent& p, const VariableExponent& u, const BallSearchSet& balls);

// Throws OrderingError if p > u at any grid node or ball center.
void requireOrdered(const VariableExponent& p, const VariableExponent& u, const BallSearchSet& balls);

struct SweepStats {
  std::size_t balls = 0;
  std::size_t evaluated = 0;
};

// Generic pruned maximum: visits indices in decreasing order of bound and
// evaluates evaluate(b) until no remaining bound exceeds the best value by
// more than margin. Deterministic for any thread count.
double sweepMaxLog(std::span<const double> bound, const std::function<double(std::size_t)>& evaluate, double margin,
                   SweepStats* stats = nullptr);

// Per-ball upper bounds carried between sweeps of the same terms at
// different logMu. The per-ball log infimum decreases in logMu at a rate
// between slopeMin and slopeMax (the range of q), so an earlier value bounds
// the next one.
struct SweepCache {
  double slopeMin = 0;
  double slopeMax = 0;
  bool valid = false;
  double logMu = 0;
  std::vector<double> value;
};

// max over balls of terms.infimumLog(ball, logPrefactor[b] - logMu). Balls
// whose cheap upper bound cannot beat the running maximum are skipped.
double sweepInfimumLog(const ModularTerms& terms, const BallSearchSet& balls, std::span<const double> logPrefactor,
                       double logMu, const BisectionConfig& cfg, SweepStats* stats = nullptr,
                       SweepCache* cache = nullptr);

// True iff rho(prefactor * g chi_B / lambda) <= 1 on every ball, beta = log lambda (q = 1 terms).
bool sweepWithinUnit(const ModularTerms& terms, const BallSearchSet& balls, std::span<const double> logPrefactor,
                     double beta);

}  // namespace vexspace
