#include "vexspace/besov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vexspace/errors.hpp"
#include "vexspace/mixed.hpp"
#include "vexspace/simd.hpp"
#include "vexspace/trial.hpp"

namespace vexspace {

double smoothStep(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  double a = std::exp(-1 / t), b = std::exp(-1 / (1 - t));
  return a / (a + b);
}

int maxLevelForGrid(const Grid& grid) {
  double nyq = grid.nyquist();
  int J = -1;
  while (std::ldexp(1.0, J + 2) <= nyq) ++J;
  return J;
}

AdmissibleSystem::AdmissibleSystem(const Grid& grid, int J, WindowParams params)
    : grid_(grid), J_(J), params_(params) {
  if (J < 0) throw DomainError("admissible system needs J >= 0");
  const WindowParams& w = params_;
  if (!(0.5 <= w.riseLo && w.riseLo < w.riseHi && w.riseHi <= 0.6 && 5.0 / 3.0 <= w.fallLo &&
        w.fallLo < w.fallHi && w.fallHi <= 2.0))
    throw DomainError("window parameters violate the admissibility supports");
  if (std::ldexp(1.0, J + 1) > grid.nyquist())
    throw ResolutionError("2^(J+1) = " + std::to_string(std::ldexp(1.0, J + 1)) + " exceeds the Nyquist frequency " +
                          std::to_string(grid.nyquist()));
}

double AdmissibleSystem::Phi(double r) const {
  return 1 - smoothStep((r - params_.fallLo) / (params_.fallHi - params_.fallLo));
}

double AdmissibleSystem::phi(double r) const {
  return smoothStep((r - params_.riseLo) / (params_.riseHi - params_.riseLo)) * Phi(r);
}

double AdmissibleSystem::window(int j, const Point& xi) const {
  double r = norm(xi, grid_.dim());
  return j == 0 ? Phi(r) : phi(std::ldexp(r, -j));
}

std::vector<std::function<double(const Point&)>> AdmissibleSystem::windows() const {
  std::vector<std::function<double(const Point&)>> out;
  for (int j = 0; j <= J_; ++j) out.push_back([this, j](const Point& xi) { return window(j, xi); });
  return out;
}

LatticeCheck AdmissibleSystem::checkLattice() const {
  LatticeCheck c;
  c.minPlateauPhi0 = kInfinity;
  c.minPlateauPhi = kInfinity;
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    Point xi = grid_.frequencyPoint(k);
    double r = norm(xi, grid_.dim());
    double v0 = std::abs(window(0, xi));
    if (r >= 2 && v0 != 0) c.supportPhi0 = false;
    if (r <= 5.0 / 3.0) c.minPlateauPhi0 = std::min(c.minPlateauPhi0, v0);
    for (int j = 1; j <= J_; ++j) {
      double s = std::ldexp(r, -j);
      double v = std::abs(window(j, xi));
      if ((s <= 0.5 || s >= 2) && v != 0) c.supportPhi = false;
      if (s >= 0.6 && s <= 5.0 / 3.0) c.minPlateauPhi = std::min(c.minPlateauPhi, v);
    }
  }
  if (c.minPlateauPhi == kInfinity) c.minPlateauPhi = 0;  // no lattice point on any plateau
  return c;
}

GridFunctionSequence littlewoodPaleyPieces(const AdmissibleSystem& sys, const GridFunction& f) {
  requireSameGrid(sys.grid(), f.grid());
  return GridFunctionSequence(f.grid(), fourierMultipliers(f, sys.windows()));
}

GridFunctionSequence weightedSequence(const GridFunctionSequence& gs, const WeightSequence& w) {
  if (static_cast<std::size_t>(w.levels) < gs.size()) throw DomainError("weight sequence has too few levels");
  const Grid& grid = gs.grid();
  GridFunctionSequence out(grid);
  for (std::size_t j = 0; j < gs.size(); ++j) {
    int level = static_cast<int>(j);
    out.push(gs[j].map([&](const Point& x, Complex v) { return v * w(level, x); }));
  }
  return out;
}

double besovMorreyNorm(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                       const WeightSequence& w, const AdmissibleSystem& sys, const GridFunction& f,
                       const BallSearchSet& balls, const BisectionConfig& cfg) {
  if (w.levels < sys.levels()) throw DomainError("weight sequence has fewer levels than the system");
  return normMixedMorrey(p, q, u, weightedSequence(littlewoodPaleyPieces(sys, f), w), balls, cfg);
}

PeetreSystem::PeetreSystem(const Grid& grid, int J, double epsilon, double k, WindowParams params)
    : base_(grid, J, params), epsilon_(epsilon), k_(k) {
  if (!(epsilon > 0) || !(k > 1 && k <= 2)) throw DomainError("Peetre system needs eps > 0 and k in (1,2]");
}

double PeetreSystem::window(int j, const Point& xi) const {
  double r = norm(xi, grid().dim());
  if (j == 0) return base_.Phi(r);
  return base_.phi(std::ldexp(r, 1 - j));
}

std::vector<std::function<double(const Point&)>> PeetreSystem::windows() const {
  std::vector<std::function<double(const Point&)>> out;
  for (int j = 0; j <= maxLevel(); ++j) out.push_back([this, j](const Point& xi) { return window(j, xi); });
  return out;
}

PeetreCheck PeetreSystem::checkPositivity() const {
  PeetreCheck c;
  c.minPsi0 = kInfinity;
  c.minPsi1 = kInfinity;
  const Grid& g = grid();
  for (std::size_t k = 0; k < g.size(); ++k) {
    Point xi = g.frequencyPoint(k);
    double r = norm(xi, g.dim());
    double v0 = std::abs(window(0, xi)), v1 = std::abs(window(1, xi));
    if (r <= k_ * epsilon_) c.minPsi0 = std::min(c.minPsi0, v0);
    if (r >= epsilon_ && r <= 2 * k_ * epsilon_) c.minPsi1 = std::min(c.minPsi1, v1);
    if (r < 0.5 && v1 != 0) c.vanishesNearOrigin = false;
  }
  if (c.minPsi0 == kInfinity) c.minPsi0 = 0;
  if (c.minPsi1 == kInfinity) c.minPsi1 = 0;
  return c;
}

GridFunctionSequence peetrePieces(const PeetreSystem& sys, const GridFunction& f) {
  requireSameGrid(sys.grid(), f.grid());
  return GridFunctionSequence(f.grid(), fourierMultipliers(f, sys.windows()));
}

GridFunction peetreMaximal(const GridFunction& g, int j, double a, std::size_t rowStride) {
  if (!(a > 0)) throw DomainError("Peetre maximal function needs a > 0");
  const Grid& grid = g.grid();
  std::size_t N = grid.pointsPerAxis();
  double step = std::ldexp(grid.spacing(), j);
  std::vector<double> mag(grid.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(g[i]);
  std::vector<Complex> out(grid.size());

  if (grid.dim() == 1) {
    std::vector<double> w(N), rev(mag.rbegin(), mag.rend());
    for (std::size_t d = 0; d < N; ++d) w[d] = 1 / (1 + std::pow(step * static_cast<double>(d), a));
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < N; ++i) {
      double right = simd::maxProduct(mag.data() + i, w.data(), N - i);
      double left = simd::maxProduct(rev.data() + (N - 1 - i), w.data(), i + 1);
      out[i] = std::max(left, right);
    }
    return GridFunction(grid, std::move(out));
  }

  if (rowStride == 0) rowStride = 1;
  std::vector<double> W(N * N);
  for (std::size_t dy = 0; dy < N; ++dy)
    for (std::size_t dx = 0; dx < N; ++dx)
      W[dy * N + dx] = 1 / (1 + std::pow(step * std::hypot(double(dx), double(dy)), a));
  // Rows reversed once so that leftward scans are contiguous.
  std::vector<double> rev(grid.size());
  for (std::size_t ky = 0; ky < N; ++ky)
    for (std::size_t kx = 0; kx < N; ++kx) rev[ky * N + kx] = mag[ky * N + (N - 1 - kx)];
#pragma omp parallel for schedule(static)
  for (std::size_t iy = 0; iy < N; ++iy) {
    for (std::size_t ix = 0; ix < N; ++ix) {
      double best = 0;
      auto scanRow = [&](std::size_t ky) {
        std::size_t dy = ky > iy ? ky - iy : iy - ky;
        const double* wr = W.data() + dy * N;
        best = std::max(best, simd::maxProduct(mag.data() + ky * N + ix, wr, N - ix));
        best = std::max(best, simd::maxProduct(rev.data() + ky * N + (N - 1 - ix), wr, ix + 1));
      };
      for (std::size_t ky = 0; ky < N; ky += rowStride)
        if (ky != iy) scanRow(ky);
      scanRow(iy);
      out[iy * N + ix] = best;
    }
  }
  return GridFunction(grid, std::move(out));
}

GridFunction peetreMaximal(const PeetreSystem& sys, const GridFunction& f, int j, double a, std::size_t rowStride) {
  if (j < 0 || j > sys.maxLevel()) throw DomainError("Peetre level out of range");
  GridFunction piece = fourierMultiplier(f, [&](const Point& xi) { return sys.window(j, xi); });
  return peetreMaximal(piece, j, a, rowStride);
}

double peetreSizeBound(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                       const WeightSequence& w, std::size_t sampleBudget) {
  double cq = resolveLogHolder(q, sampleBudget).value;
  double ci = cInfinityPU(p, u, sampleBudget);
  return w.alpha + cq + p.dim() * (1 / p.min() + ci);
}

PeetreReport peetreCharacterizationReport(const VariableExponent& p, const VariableExponent& q,
                                          const VariableExponent& u, const WeightSequence& w,
                                          const AdmissibleSystem& sysA, const PeetreSystem& sysP, double a,
                                          const TrialOptions& opt, const BallSearchSet& balls,
                                          const BisectionConfig& cfg) {
  PeetreReport rep;
  rep.aBound = peetreSizeBound(p, q, u, w);
  rep.a = a;
  rep.hypothesisMet = a > rep.aBound;
  if (!rep.hypothesisMet) rep.note = "a at or below the size bound; informational";
  if (balls.grid().dim() == 2) rep.note += rep.note.empty() ? "2-D maximal sweep is a lower approximation"
                                                            : "; 2-D maximal sweep is a lower approximation";
  const Grid& grid = balls.grid();
  rep.minRatio12 = rep.minRatio23 = rep.minRatio13 = kInfinity;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    TrialRng rng(trialSeed(opt.seed, t));
    GridFunction f = randomBumps(grid, rng);
    double n1 = besovMorreyNorm(p, q, u, w, sysA, f, balls, cfg);
    GridFunctionSequence pieces = peetrePieces(sysP, f);
    GridFunctionSequence maximal(grid);
    for (std::size_t j = 0; j < pieces.size(); ++j) maximal.push(peetreMaximal(pieces[j], static_cast<int>(j), a));
    double n2 = normMixedMorrey(p, q, u, weightedSequence(pieces, w), balls, cfg);
    double n3 = normMixedMorrey(p, q, u, weightedSequence(maximal, w), balls, cfg);
    rep.besov.push_back(n1);
    rep.convolution.push_back(n2);
    rep.maximal.push_back(n3);
    if (n2 > n3 * (1 + 1e-9)) rep.dominationHolds = false;
    if (n2 > 0 && n3 > 0) {
      auto track = [](double r, double& lo, double& hi) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      };
      track(n1 / n2, rep.minRatio12, rep.maxRatio12);
      track(n2 / n3, rep.minRatio23, rep.maxRatio23);
      track(n1 / n3, rep.minRatio13, rep.maxRatio13);
    }
  }
  if (rep.minRatio12 == kInfinity) rep.minRatio12 = rep.minRatio23 = rep.minRatio13 = 0;
  return rep;
}

}  // namespace vexspace
