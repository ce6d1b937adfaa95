#include "vexspace/balls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vexspace/errors.hpp"

namespace vexspace {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest index range [a, b) of axis nodes with pred(i) true, given pred is an interval.
template <class Pred>
std::pair<long, long> axisInterval(const Grid& grid, double center, double halfWidth, Pred pred) {
  long n = static_cast<long>(grid.pointsPerAxis());
  double h = grid.spacing(), r0 = grid.boxRadius();
  long a = static_cast<long>(std::floor((center - halfWidth + r0) / h)) - 1;
  long b = static_cast<long>(std::ceil((center + halfWidth + r0) / h)) + 1;
  a = std::clamp(a, 0L, n - 1);
  b = std::clamp(b, 0L, n - 1);
  while (a <= b && !pred(a)) ++a;
  while (b >= a && !pred(b)) --b;
  if (a > b) return {0, 0};
  // Extend in case the estimate was too tight.
  while (a > 0 && pred(a - 1)) --a;
  while (b < n - 1 && pred(b + 1)) ++b;
  return {a, b + 1};
}

}  // namespace

std::vector<double> BallSearchSet::standardRadii(const Grid& grid) {
  double diameter = 2 * grid.boxRadius() * (grid.dim() == 2 ? std::sqrt(2.0) : 1.0);
  double cap = 2 * diameter;
  std::vector<double> radii;
  for (int k = 0;; ++k) {
    double r = grid.spacing() * std::exp2(0.5 * k);
    if (r >= cap) break;
    radii.push_back(r);
  }
  radii.push_back(cap);
  return radii;
}

BallSearchSet BallSearchSet::standard(const Grid& grid, std::size_t centerStride, bool midpoints) {
  std::vector<Point> centers;
  std::size_t n = grid.pointsPerAxis();
  if (grid.dim() == 1) {
    std::size_t stride = centerStride == 0 ? 1 : centerStride;
    for (std::size_t i = 0; i < n; i += stride) {
      centers.push_back({grid.coord(i), 0});
      if (midpoints && i + 1 < n) centers.push_back({grid.coord(i) + grid.spacing() / 2, 0});
    }
  } else {
    std::size_t stride = centerStride == 0 ? 4 : centerStride;
    for (std::size_t iy = 0; iy < n; iy += stride)
      for (std::size_t ix = 0; ix < n; ix += stride) centers.push_back({grid.coord(ix), grid.coord(iy)});
  }
  return BallSearchSet(grid, std::move(centers), standardRadii(grid));
}

BallSearchSet::BallSearchSet(const Grid& grid, std::vector<Point> centers, std::vector<double> radii)
    : grid_(grid), centers_(std::move(centers)), radii_(std::move(radii)) {
  if (centers_.empty() || radii_.empty()) throw DomainError("ball search set must be nonempty");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0)) throw DomainError("ball radii must be positive");
    if (i > 0 && !(radii_[i] > radii_[i - 1])) throw DomainError("ball radii must be strictly increasing");
  }
  for (const Point& c : centers_)
    if (!grid_.contains(c)) throw DomainError("ball center outside the box");
  buildRuns();
}

void BallSearchSet::buildRuns() {
  const Grid& g = grid_;
  std::size_t n = g.pointsPerAxis();
  offsets_.assign(1, 0);
  for (const Point& c : centers_) {
    for (double r : radii_) {
      if (g.dim() == 1) {
        auto [a, b] = axisInterval(g, c[0], r, [&](long i) { return std::abs(g.coord(i) - c[0]) < r; });
        if (b > a) runs_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
      } else {
        for (std::size_t iy = 0; iy < n; ++iy) {
          double dy = g.coord(iy) - c[1];
          if (std::abs(dy) >= r) continue;
          double half = std::sqrt(r * r - dy * dy);
          auto [a, b] = axisInterval(g, c[0], half, [&](long i) { return std::hypot(g.coord(i) - c[0], dy) < r; });
          if (b > a)
            runs_.push_back({static_cast<std::uint32_t>(iy * n + a), static_cast<std::uint32_t>(iy * n + b)});
        }
      }
      offsets_.push_back(runs_.size());
    }
  }
}

bool BallSearchSet::insideBox(std::size_t b) const {
  Ball ball = this->ball(b);
  for (int d = 0; d < grid_.dim(); ++d) {
    double lo = ball.center[d] - ball.radius, hi = ball.center[d] + ball.radius;
    // Nodes live on [-R, R - h]; the periodic box is [-R, R).
    if (lo < -grid_.boxRadius() || hi > grid_.boxRadius() - grid_.spacing()) return false;
  }
  return true;
}

std::vector<NodeRun> wholeGridRuns(const Grid& grid) {
  std::size_t n = grid.pointsPerAxis();
  std::vector<NodeRun> runs;
  if (grid.dim() == 1) {
    runs.push_back({0, static_cast<std::uint32_t>(n)});
  } else {
    runs.push_back({0, static_cast<std::uint32_t>(n * n)});
  }
  return runs;
}

std::vector<double> ballLogPrefactors(const VariableExponent& p, const VariableExponent& u,
                                      const BallSearchSet& balls) {
  int n = balls.grid().dim();
  std::vector<double> out(balls.size());
  std::size_t nr = balls.radii().size();
  for (std::size_t c = 0; c < balls.centers().size(); ++c) {
    const Point& x = balls.centers()[c];
    double pv = p(x), uv = u(x);
    double e = (uv == kInf ? 0.0 : n / uv) - (pv == kInf ? 0.0 : n / pv);
    for (std::size_t k = 0; k < nr; ++k) out[c * nr + k] = e * std::log(balls.radii()[k]);
  }
  return out;
}

void requireOrdered(const VariableExponent& p, const VariableExponent& u, const BallSearchSet& balls) {
  const Grid& g = balls.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point x = g.node(i);
    if (p(x) > u(x)) throw OrderingError("p(x) > u(x) at a grid node");
  }
  for (const Point& x : balls.centers())
    if (p(x) > u(x)) throw OrderingError("p(x) > u(x) at a ball center");
}

double sweepMaxLog(std::span<const double> bound, const std::function<double(std::size_t)>& evaluate, double margin,
                   SweepStats* stats) {
  std::size_t count = bound.size();
  std::vector<double> key(bound.begin(), bound.end());
  for (double& k : key)
    if (std::isnan(k)) k = kInf;
  bound = key;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bound[a] != bound[b] ? bound[a] > bound[b] : a < b;
  });
  const std::size_t block = 32;
  double best = -kInf;
  std::vector<double> value(block);
  std::size_t evaluated = 0;
  auto skip = [&](std::size_t b) { return bound[b] == -kInf || bound[b] + margin <= best; };
  for (std::size_t start = 0; start < count; start += block) {
    if (skip(order[start])) break;
    std::size_t stop = std::min(count, start + block);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = start; k < stop; ++k) {
      std::size_t b = order[k];
      value[k - start] = skip(b) ? -kInf : evaluate(b);
    }
    for (std::size_t k = start; k < stop; ++k) {
      if (!skip(order[k])) ++evaluated;
    }
    for (std::size_t k = start; k < stop; ++k) best = std::max(best, value[k - start]);
    if (best == kInf) break;
  }
  if (stats) *stats = {count, evaluated};
  return best;
}

double sweepInfimumLog(const ModularTerms& terms, const BallSearchSet& balls, std::span<const double> logPrefactor,
                       double logMu, const BisectionConfig& cfg, SweepStats* stats, SweepCache* cache) {
  std::size_t count = balls.size();
  if (terms.isZero()) {
    if (stats) *stats = {count, 0};
    return -kInf;
  }
  std::vector<double> bound(count);
  bool useCache = cache && cache->valid && cache->value.size() == count && cache->slopeMin > 0;
  double d = useCache ? logMu - cache->logMu : 0.0;
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < count; ++b) {
    double v = terms.infimumLogUpperBound(balls.runs(b), logPrefactor[b] - logMu);
    if (useCache) {
      double c = cache->value[b];
      // inf * 0 and inf - inf come out NaN and carry no information.
      double derived = d == 0 ? c : d > 0 ? c - cache->slopeMin * d : c - cache->slopeMax * d;
      if (!std::isnan(derived)) v = std::min(v, derived);
    }
    bound[b] = v;
  }
  std::vector<double> exact;
  if (cache) exact.assign(count, std::numeric_limits<double>::quiet_NaN());
  // A ball is skipped only if its bound trails the best value by more than the
  // solver tolerance, so pruning never lowers the reported maximum.
  double best = sweepMaxLog(
      bound,
      [&](std::size_t b) {
        double guess = std::isfinite(bound[b]) ? bound[b] : 0.0;
        double v = terms.infimumLog(balls.runs(b), logPrefactor[b] - logMu, cfg, guess);
        if (cache) exact[b] = v;
        return v;
      },
      cfg.logTolerance(), stats);
  if (cache) {
    cache->value.resize(count);
    for (std::size_t b = 0; b < count; ++b) cache->value[b] = std::isnan(exact[b]) ? bound[b] : exact[b];
    cache->logMu = logMu;
    cache->valid = true;
  }
  return best;
}

bool sweepWithinUnit(const ModularTerms& terms, const BallSearchSet& balls, std::span<const double> logPrefactor,
                     double beta) {
  std::size_t count = balls.size();
  bool ok = true;
#pragma omp parallel for schedule(dynamic, 64) shared(ok)
  for (std::size_t b = 0; b < count; ++b) {
    bool stop;
#pragma omp atomic read
    stop = ok;
    if (!stop) continue;
    auto runs = balls.runs(b);
    if (terms.logModularUpperBound(runs, logPrefactor[b], beta) <= 0) continue;
    if (!terms.withinUnit(runs, logPrefactor[b], beta)) {
#pragma omp atomic write
      ok = false;
    }
  }
  return ok;
}

}  // namespace vexspace
