#include "vexspace/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "vexspace/errors.hpp"
#include "vexspace/mixed.hpp"

namespace vexspace {

Point DyadicCube::center(int dim) const {
  Point c{0, 0};
  for (int k = 0; k < dim; ++k) c[k] = std::ldexp(static_cast<double>(m[k]), -j);
  return c;
}

bool DyadicCube::dilateContains(const Point& x, double d, int dim) const {
  Point c = center(dim);
  double half = d * side() / 2;
  for (int k = 0; k < dim; ++k)
    if (std::abs(x[k] - c[k]) > half) return false;
  return true;
}

namespace {

// Central difference (v_{i+1} - v_{i-1}) / 2h with zeros outside.
std::vector<double> centralDifference(const std::vector<double>& v, double h) {
  std::size_t n = v.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double right = i + 1 < n ? v[i + 1] : 0.0;
    double left = i > 0 ? v[i - 1] : 0.0;
    out[i] = (right - left) / (2 * h);
  }
  return out;
}

struct Profile {
  std::vector<double> values;
  std::vector<double> derivativeScale;  // sup |D^k P| / 2^{kj}, k = 0..K
};

// sup_t |psi^{(n)}(t)| for psi(t) = exp(-1/(1-t^2)), n = 0..kMaxOrder.
// psi^{(n)} = P_n(t) (1-t^2)^{-2n} psi(t) with
//   P_{n+1} = P_n' (1-t^2)^2 + 4 n t (1-t^2) P_n - 2 t P_n.
constexpr int kMaxOrder = 16;

const std::vector<double>& bumpDerivativeSups() {
  static const std::vector<double> sups = [] {
    std::vector<double> out;
    std::vector<std::vector<double>> polys{{1.0}};
    for (int n = 0; n < kMaxOrder; ++n) {
      const std::vector<double>& P = polys.back();
      std::vector<double> next(P.size() + 4, 0.0);
      auto add = [&](std::size_t deg, double c) { next[deg] += c; };
      for (std::size_t k = 0; k < P.size(); ++k) {
        double c = P[k];
        if (k >= 1) {  // P' (1 - 2t^2 + t^4)
          double d = c * static_cast<double>(k);
          add(k - 1, d);
          add(k + 1, -2 * d);
          add(k + 3, d);
        }
        add(k + 1, 4.0 * n * c - 2 * c);  // 4 n t P - 2 t P
        add(k + 3, -4.0 * n * c);         // -4 n t^3 P
      }
      polys.push_back(std::move(next));
    }
    const int samples = 400000;
    for (const auto& P : polys) {
      int n = static_cast<int>(&P - polys.data());
      double top = 0;
      for (int i = 0; i <= samples; ++i) {
        double t = -1 + 2.0 * i / samples;
        double w = 1 - t * t;
        if (w <= 0) continue;
        double poly = 0;
        for (std::size_t k = P.size(); k-- > 0;) poly = poly * t + P[k];
        double v = poly * std::exp(-1 / w - 2 * n * std::log(w));
        top = std::max(top, std::abs(v));
      }
      out.push_back(top);
    }
    return out;
  }();
  return sups;
}

// The bump has radius 3/8 d 2^{-j}, independent of the grid, so refining the
// grid refines one fixed continuum atom. Central differences average the
// derivative they approximate, hence |D_h^k P| <= sup |P^{(k)}| and the
// analytic normalization also bounds the discrete derivatives.
Profile axisProfile(const AtomFamily& fam, int j, double center, const Grid& grid) {
  double h = grid.spacing();
  int moments = j >= 1 ? fam.L : 0;
  if (moments + fam.K > kMaxOrder) throw DomainError("K + L too large");
  double half = fam.d * std::ldexp(1.0, -j) / 2;
  double rho = 0.75 * half;
  if (rho + (moments + 1) * h > half || rho < 4 * h)
    throw ResolutionError("grid too coarse for the bump inside d Q_jm");
  std::size_t N = grid.pointsPerAxis();
  Profile pr;
  pr.values.assign(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    double t = (grid.coord(i) - center) / rho;
    if (std::abs(t) < 1) pr.values[i] = std::exp(-1 / (1 - t * t));
  }
  for (int k = 0; k < moments; ++k) pr.values = centralDifference(pr.values, h);
  const std::vector<double>& sups = bumpDerivativeSups();
  for (int k = 0; k <= fam.K; ++k)
    pr.derivativeScale.push_back(sups[moments + k] * std::pow(rho, -(moments + k)) * std::ldexp(1.0, -k * j));
  return pr;
}

void requireResolvable(const AtomFamily& fam, int j, const LatticeIndex& m, const Grid& grid) {
  if (j < 0) throw DomainError("level must be nonnegative");
  if (!(fam.d > 1)) throw DomainError("atom dilation d must exceed 1");
  if (fam.K < 0 || fam.L < 0) throw DomainError("K and L must be nonnegative");
  if (std::ldexp(1.0, -j) / grid.spacing() < 8)
    throw ResolutionError("level " + std::to_string(j) + " needs at least 8 nodes per cube side");
  DyadicCube cube{j, m};
  Point c = cube.center(grid.dim());
  double half = fam.d * cube.side() / 2;
  for (int k = 0; k < grid.dim(); ++k)
    if (c[k] - half < -grid.boxRadius() || c[k] + half > grid.boxRadius())
      throw DomainError("d Q_jm leaves the box");
}

double moleculeFactor(const AtomFamily& fam, int dim) {
  return std::pow(1 + fam.d * std::sqrt(static_cast<double>(dim)) / 2, -fam.M);
}

}  // namespace

GridFunction buildAtom(const AtomFamily& fam, int j, const LatticeIndex& m, const Grid& grid) {
  requireResolvable(fam, j, m, grid);
  Point c = DyadicCube{j, m}.center(grid.dim());
  Profile px = axisProfile(fam, j, c[0], grid);
  std::size_t N = grid.pointsPerAxis();
  if (grid.dim() == 1) {
    double scale = *std::max_element(px.derivativeScale.begin(), px.derivativeScale.end());
    std::vector<Complex> v(N);
    for (std::size_t i = 0; i < N; ++i) v[i] = px.values[i] / scale;
    return GridFunction(grid, std::move(v));
  }
  Profile py = axisProfile(fam, j, c[1], grid);
  double scale = 0;
  for (int a = 0; a <= fam.K; ++a)
    for (int b = 0; a + b <= fam.K; ++b) scale = std::max(scale, px.derivativeScale[a] * py.derivativeScale[b]);
  std::vector<Complex> v(N * N);
  for (std::size_t iy = 0; iy < N; ++iy)
    for (std::size_t ix = 0; ix < N; ++ix) v[iy * N + ix] = px.values[ix] * py.values[iy] / scale;
  return GridFunction(grid, std::move(v));
}

GridFunction buildMolecule(const AtomFamily& fam, int j, const LatticeIndex& m, const Grid& grid) {
  if (!(fam.M > 0)) throw DomainError("molecule decay M must be positive");
  GridFunction mol = buildAtom(fam, j, m, grid).scaled(moleculeFactor(fam, grid.dim()));
  BlockCheck chk = verifyBuildingBlock(mol, fam, j, m, true);
  if (!chk.derivativeOk())
    throw ConstructionError("molecule decay bound violated (worst ratio " + std::to_string(chk.worstDerivative) + ")");
  return mol;
}

namespace {

using CacheKey = std::tuple<int, int, double, bool, double, int, long, long, int, double, std::size_t>;
std::shared_mutex cacheMutex;
std::map<CacheKey, std::shared_ptr<const GridFunction>> blockCache;

}  // namespace

std::shared_ptr<const GridFunction> buildBlock(const AtomFamily& fam, int j, const LatticeIndex& m, const Grid& grid) {
  CacheKey key{fam.K,  fam.L, fam.d,      fam.molecule,     fam.molecule ? fam.M : 0.0, j,
               m[0],   m[1],  grid.dim(), grid.boxRadius(), grid.pointsPerAxis()};
  {
    std::shared_lock lock(cacheMutex);
    auto it = blockCache.find(key);
    if (it != blockCache.end()) return it->second;
  }
  auto block = std::make_shared<const GridFunction>(fam.molecule ? buildMolecule(fam, j, m, grid)
                                                                 : buildAtom(fam, j, m, grid));
  std::unique_lock lock(cacheMutex);
  return blockCache.emplace(key, block).first->second;
}

void clearBlockCache() {
  std::unique_lock lock(cacheMutex);
  blockCache.clear();
}

BlockCheck verifyBuildingBlock(const GridFunction& f, const AtomFamily& fam, int j, const LatticeIndex& m,
                               bool asMolecule) {
  const Grid& grid = f.grid();
  int n = grid.dim();
  std::size_t N = grid.pointsPerAxis();
  double h = grid.spacing();
  DyadicCube cube{j, m};
  Point c = cube.center(n);
  double scale = std::ldexp(1.0, j);
  BlockCheck chk;
  chk.derivativeSlack = 1 + 5 * h * scale;

  std::vector<double> re(f.size()), im(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    re[i] = f[i].real();
    im[i] = f[i].imag();
  }
  std::vector<double> decay(f.size(), 1.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    Point x = grid.node(i);
    if (asMolecule) decay[i] = std::pow(1 + scale * distance(x, c, n), -fam.M);
    if (!asMolecule && f[i] != Complex(0) && !cube.dilateContains(x, fam.d, n)) chk.supportOk = false;
  }

  // Difference along one axis of a flattened array.
  auto diff = [&](const std::vector<double>& v, int axis) {
    std::vector<double> out(v.size(), 0.0);
    std::size_t stride = axis == 0 ? 1 : N;
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::size_t pos = axis == 0 ? i % N : i / N;
      double right = pos + 1 < N ? v[i + stride] : 0.0;
      double left = pos > 0 ? v[i - stride] : 0.0;
      out[i] = (right - left) / (2 * h);
    }
    return out;
  };
  auto track = [&](const std::vector<double>& dr, const std::vector<double>& di, int order) {
    double bound = std::ldexp(1.0, order * j);
    for (std::size_t i = 0; i < dr.size(); ++i)
      chk.worstDerivative = std::max(chk.worstDerivative, std::hypot(dr[i], di[i]) / (bound * decay[i]));
  };
  std::vector<double> xr = re, xi = im;
  for (int a = 0; a <= fam.K; ++a) {
    if (n == 1) {
      track(xr, xi, a);
    } else {
      std::vector<double> yr = xr, yi = xi;
      for (int b = 0; a + b <= fam.K; ++b) {
        track(yr, yi, a + b);
        yr = diff(yr, 1);
        yi = diff(yi, 1);
      }
    }
    xr = diff(xr, 0);
    xi = diff(xi, 0);
  }

  if (j >= 1) {
    for (int a = 0; a < fam.L; ++a)
      for (int b = 0; (n == 2 ? a + b : a) < fam.L && (n == 2 || b == 0); ++b) {
        Complex sum = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
          Point x = grid.node(i);
          sum += f[i] * std::pow(x[0], a) * (n == 2 ? std::pow(x[1], b) : 1.0);
        }
        chk.worstMoment = std::max(chk.worstMoment, std::abs(sum) * grid.cellVolume());
      }
  }
  return chk;
}

GridFunctionSequence coefficientLevels(const WeightSequence& w, const CoefficientArray& lambda, const Grid& grid,
                                       int levels) {
  int n = grid.dim();
  std::vector<std::vector<Complex>> acc(levels, std::vector<Complex>(grid.size(), 0.0));
  for (const Coefficient& co : lambda) {
    if (co.j < 0 || co.j >= levels) throw DomainError("coefficient level out of range");
    if (co.j >= w.levels) throw DomainError("weight sequence has too few levels");
    DyadicCube cube{co.j, co.m};
    Point c = cube.center(n);
    double half = cube.side() / 2;
    Point lo{0, 0}, hi{0, 0};
    for (int k = 0; k < n; ++k) {
      lo[k] = c[k] - half;
      hi[k] = c[k] + half;
      if (lo[k] < -grid.boxRadius() || hi[k] > grid.boxRadius()) throw DomainError("cube Q_jm leaves the box");
    }
    Complex amp = co.value * w(co.j, c);
    GridFunction chi = boxIndicator(grid, lo, hi);
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (chi[i] != Complex(0)) acc[co.j][i] += amp;
  }
  GridFunctionSequence out(grid);
  for (auto& v : acc) out.push(GridFunction(grid, std::move(v)));
  return out;
}

namespace {

int levelsOf(const CoefficientArray& lambda) {
  int top = 0;
  for (const Coefficient& c : lambda) top = std::max(top, c.j + 1);
  return std::max(top, 1);
}

}  // namespace

double sequenceSpaceNorm(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                         const WeightSequence& w, const CoefficientArray& lambda, const BallSearchSet& balls,
                         const BisectionConfig& cfg) {
  GridFunctionSequence seq = coefficientLevels(w, lambda, balls.grid(), levelsOf(lambda));
  return normMixedMorrey(p, q, u, seq, balls, cfg);
}

GridFunction synthesize(const AtomFamily& fam, const CoefficientArray& lambda, const Grid& grid) {
  std::vector<Complex> acc(grid.size(), 0.0);
  for (const Coefficient& co : lambda) {
    if (co.value == Complex(0)) continue;
    auto block = buildBlock(fam, co.j, co.m, grid);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += co.value * (*block)[i];
  }
  return GridFunction(grid, std::move(acc));
}

SynthesisHypotheses synthesisHypotheses(const VariableExponent& p, const VariableExponent& q,
                                        const VariableExponent& u, const WeightSequence& w,
                                        const AtomFamily& fam, const Grid& grid, std::size_t sampleBudget) {
  SynthesisHypotheses hy;
  int n = grid.dim();
  double pMin = p.min();
  hy.sigma = sigmaT(pMin, n);
  hy.cLogInvQ = resolveLogHolder(q, sampleBudget).value;
  hy.cLogInvP = resolveLogHolder(p, sampleBudget).value;
  hy.cInfinity = cInfinityPU(p, u, sampleBudget);
  hy.cInfinityAlt = cInfinityPU(p, u, sampleBudget, std::min(1.0, pMin));

  // inf u over grid nodes; flagged when a boundary node attains it.
  std::vector<double> uv = u.sample(grid);
  hy.infU = *std::min_element(uv.begin(), uv.end());
  std::size_t N = grid.pointsPerAxis();
  for (std::size_t i = 0; i < uv.size(); ++i) {
    std::size_t ix = i % N, iy = i / N;
    bool edge = ix == 0 || ix == N - 1 || (n == 2 && (iy == 0 || iy == N - 1));
    if (edge && uv[i] <= hy.infU) hy.infUAtBoundary = true;
  }

  double common = hy.sigma + hy.cLogInvQ + n * hy.cInfinity;
  hy.lBound = -w.alpha1 + std::max(n / hy.infU, common);
  hy.mBound = fam.L + 2 * n + 2 * w.alpha + common;
  hy.kOk = fam.K > w.alpha2;
  // Atoms are molecules for every M after scaling, so only L binds for them.
  bool mOk = !fam.molecule || fam.M > hy.mBound;
  hy.primaryMet = hy.kOk && fam.L > hy.lBound && mOk;

  std::vector<double> pv = p.sample(grid);
  double supRatio = -kInfinity;
  for (std::size_t i = 0; i < pv.size(); ++i) supRatio = std::max(supRatio, 1 - pv[i] / uv[i]);
  hy.alternativeApplies = supRatio < pMin;
  double commonAlt = hy.cLogInvQ + n * hy.cInfinityAlt;
  hy.lBoundAlt = -w.alpha1 + hy.sigma + commonAlt;
  hy.mBoundAlt = fam.L + 2 * n + 2 * w.alpha + std::max(1.0, 2 * hy.cLogInvP) * hy.sigma + commonAlt;
  bool mAltOk = !fam.molecule || fam.M > hy.mBoundAlt;
  hy.alternativeMet = hy.alternativeApplies && hy.kOk && fam.L > hy.lBoundAlt && mAltOk;
  hy.used = hy.primaryMet ? "primary" : hy.alternativeMet ? "alternative" : "none";
  return hy;
}

CoefficientArray randomCoefficients(TrialRng& rng, const AtomFamily& fam, const Grid& grid, int maxLevel) {
  CoefficientArray out;
  int n = grid.dim();
  int count = static_cast<int>(rng.integer(1, 6));
  double R = grid.boxRadius();
  for (int k = 0; k < count; ++k) {
    int j = static_cast<int>(rng.integer(0, maxLevel));
    double scale = std::ldexp(1.0, j);
    long reach = static_cast<long>(std::floor(std::min(scale * R / 2, scale * R - fam.d / 2)));
    if (reach < 0) continue;
    Coefficient co;
    co.j = j;
    for (int a = 0; a < n; ++a) co.m[a] = rng.integer(-reach, reach);
    co.value = rng.logUniform(1e-2, 1.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    out.push_back(co);
  }
  return out;
}

SynthesisReport synthesisBoundReport(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                                     const WeightSequence& w, const AtomFamily& fam,
                                     const std::vector<CoefficientArray>& corpus, const AdmissibleSystem& sys,
                                     const BallSearchSet& balls, const BisectionConfig& cfg) {
  SynthesisReport rep;
  rep.hypotheses = synthesisHypotheses(p, q, u, w, fam, balls.grid());
  rep.minRatio = kInfinity;
  for (const CoefficientArray& lambda : corpus) {
    bool zero = std::all_of(lambda.begin(), lambda.end(), [](const Coefficient& c) { return c.value == Complex(0); });
    if (zero) {
      ++rep.skipped;
      continue;
    }
    double seqNorm = sequenceSpaceNorm(p, q, u, w, lambda, balls, cfg);
    double fNorm = besovMorreyNorm(p, q, u, w, sys, synthesize(fam, lambda, balls.grid()), balls, cfg);
    double r = fNorm / seqNorm;
    if (!std::isfinite(r)) rep.finite = false;
    rep.ratios.push_back(r);
    rep.minRatio = std::min(rep.minRatio, r);
    rep.maxRatio = std::max(rep.maxRatio, r);
  }
  if (rep.ratios.empty()) rep.minRatio = 0;
  return rep;
}

EmbeddingReport sequenceEmbeddingCheck(const VariableExponent& p, const VariableExponent& q,
                                       const VariableExponent& u, const WeightSequence& w,
                                       const std::vector<CoefficientArray>& corpus, const BallSearchSet& balls,
                                       const BisectionConfig& cfg) {
  EmbeddingReport rep;
  VariableExponent qInf = VariableExponent::constant(kInfinity, p.dim(), p.boxRadius());
  for (const CoefficientArray& lambda : corpus) {
    double lhs = sequenceSpaceNorm(p, qInf, u, w, lambda, balls, cfg);
    double rhs = sequenceSpaceNorm(p, q, u, w, lambda, balls, cfg);
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    if (lhs > rhs + 1e-9 * std::max(1.0, rhs)) rep.pass = false;
  }
  return rep;
}

AtomSpec parseAtomSpec(const nlohmann::json& doc) {
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!doc.contains(name)) throw ParseError(std::string("atom spec: missing field '") + name + "'");
    return doc.at(name);
  };
  AtomSpec spec;
  try {
    spec.family.K = field("K").get<int>();
    spec.family.L = field("L").get<int>();
    if (doc.contains("d")) spec.family.d = doc.at("d").get<double>();
    if (doc.contains("M")) {
      spec.family.molecule = true;
      spec.family.M = doc.at("M").get<double>();
    }
    const nlohmann::json& coeffs = field("coefficients");
    if (!coeffs.is_array()) throw ParseError("atom spec: 'coefficients' must be an array");
    int dim = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const nlohmann::json& e = coeffs[k];
      std::string where = "atom spec: coefficients[" + std::to_string(k) + "]";
      if (!e.contains("j") || !e.contains("m")) throw ParseError(where + " needs 'j' and 'm'");
      Coefficient co;
      co.j = e.at("j").get<int>();
      const nlohmann::json& m = e.at("m");
      if (m.is_number_integer()) {
        co.m[0] = m.get<long>();
        if (dim == 0) dim = 1;
        if (dim != 1) throw ParseError(where + ".m has the wrong dimension");
      } else {
        if (!m.is_array() || m.empty() || m.size() > 2) throw ParseError(where + ".m must hold 1 or 2 integers");
        int md = static_cast<int>(m.size());
        if (dim == 0) dim = md;
        if (dim != md) throw ParseError(where + ".m has the wrong dimension");
        for (int a = 0; a < md; ++a) co.m[a] = m[a].get<long>();
      }
      co.value = Complex(e.value("re", 0.0), e.value("im", 0.0));
      spec.coefficients.push_back(co);
    }
    if (dim == 0) dim = 1;
    double R = 8.0;
    std::size_t N = 512;
    if (doc.contains("grid")) {
      const nlohmann::json& g = doc.at("grid");
      dim = g.value("dim", dim);
      R = g.value("R", R);
      N = g.value("N", N);
    }
    spec.grid = Grid(dim, R, N);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("atom spec: ") + e.what());
  }
  return spec;
}

}  // namespace vexspace
