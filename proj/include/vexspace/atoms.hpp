#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "vexspace/balls.hpp"
#include "vexspace/besov.hpp"
#include "vexspace/exponent.hpp"
#include "vexspace/grid.hpp"
#include "vexspace/root_find.hpp"
#include "vexspace/trial.hpp"
#include "vexspace/weights.hpp"

namespace vexspace {

using LatticeIndex = std::array<long, 2>;

// Q_{jm}: center 2^{-j} m, side 2^{-j}.
struct DyadicCube {
  int j = 0;
  LatticeIndex m{0, 0};
  Point center(int dim) const;
  double side() const { return std::ldexp(1.0, -j); }
  // Closed dilate d Q_{jm} (sup-distance <= d side / 2).
  bool dilateContains(const Point& x, double d, int dim) const;
};

struct AtomFamily {
  int K = 3;          // derivative order
  int L = 2;          // vanishing moments (j >= 1)
  double d = 3;       // support dilation, > 1
  bool molecule = false;
  double M = 10;      // molecule decay
};

struct Coefficient {
  int j = 0;
  LatticeIndex m{0, 0};
  Complex value = 0;
};
using CoefficientArray = std::vector<Coefficient>;

// Tensor product of 1-D profiles: L central differences of exp(-1/(1-t^2))
// (no differences at j = 0) with bump radius 3/8 d 2^{-j}, divided by the
// analytic max_{|g| <= K} sup |D^g .| / 2^{|g| j}.
// ResolutionError when 2^{-j}/h < 8 or the bump would not fit inside d Q_{jm}.
GridFunction buildAtom(const AtomFamily& family, int j, const LatticeIndex& m, const Grid& grid);
// (1 + d sqrt(n)/2)^{-M} times the atom; ConstructionError if the decay bound fails at a node.
GridFunction buildMolecule(const AtomFamily& family, int j, const LatticeIndex& m, const Grid& grid);
// Atom or molecule according to family.molecule, memoized.
std::shared_ptr<const GridFunction> buildBlock(const AtomFamily& family, int j, const LatticeIndex& m, const Grid& grid);
void clearBlockCache();

struct BlockCheck {
  bool supportOk = true;         // atoms: zero outside d Q_{jm}
  double worstDerivative = 0;    // max |D^g f| / (2^{|g| j} decay(x))
  double derivativeSlack = 1;    // 1 + 5 h 2^j
  double worstMoment = 0;        // max |int x^g f| over |g| < L (j >= 1)
  bool derivativeOk() const { return worstDerivative <= derivativeSlack; }
  bool momentOk() const { return worstMoment <= 1e-8; }
  bool pass() const { return supportOk && derivativeOk() && momentOk(); }
};
BlockCheck verifyBuildingBlock(const GridFunction& block, const AtomFamily& family, int j, const LatticeIndex& m,
                               bool asMolecule);

// Per-level step functions sum_m lambda_{jm} w_j(2^{-j} m) chi_{jm}, j = 0..levels-1.
// Cubes are sampled half-open; DomainError if a cube leaves the box.
GridFunctionSequence coefficientLevels(const WeightSequence& w, const CoefficientArray& lambda, const Grid& grid,
                                       int levels);
double sequenceSpaceNorm(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                         const WeightSequence& w, const CoefficientArray& lambda, const BallSearchSet& balls,
                         const BisectionConfig& cfg = {});

GridFunction synthesize(const AtomFamily& family, const CoefficientArray& lambda, const Grid& grid);

struct SynthesisHypotheses {
  double sigma = 0;
  double cLogInvQ = 0;
  double cLogInvP = 0;
  double cInfinity = 0;     // c_inf(1/p,1/u)
  double cInfinityAlt = 0;  // c_inf(1/p,1/u,min{1,p-})
  double infU = 0;
  bool infUAtBoundary = false;
  double lBound = 0, mBound = 0;        // primary conditions
  double lBoundAlt = 0, mBoundAlt = 0;  // alternative conditions
  bool kOk = false;
  bool primaryMet = false;
  bool alternativeApplies = false;
  bool alternativeMet = false;
  std::string used;  // "primary", "alternative" or "none"
};
SynthesisHypotheses synthesisHypotheses(const VariableExponent& p, const VariableExponent& q,
                                        const VariableExponent& u, const WeightSequence& w,
                                        const AtomFamily& family, const Grid& grid, std::size_t sampleBudget = 256);

// Random sparse coefficients: 1-6 entries over j <= maxLevel with the dilated
// cube inside the box, magnitudes log-uniform in [1e-2, 1].
CoefficientArray randomCoefficients(TrialRng& rng, const AtomFamily& family, const Grid& grid, int maxLevel);

struct SynthesisReport {
  SynthesisHypotheses hypotheses;
  std::vector<double> ratios;  // per non-zero corpus element
  std::size_t skipped = 0;
  double minRatio = 0, maxRatio = 0;
  bool finite = true;
};
SynthesisReport synthesisBoundReport(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                                     const WeightSequence& w, const AtomFamily& family,
                                     const std::vector<CoefficientArray>& corpus, const AdmissibleSystem& sys,
                                     const BallSearchSet& balls, const BisectionConfig& cfg = {});

struct EmbeddingReport {
  std::vector<double> lhs;  // q = inf
  std::vector<double> rhs;  // given q
  bool pass = true;
};
EmbeddingReport sequenceEmbeddingCheck(const VariableExponent& p, const VariableExponent& q,
                                       const VariableExponent& u, const WeightSequence& w,
                                       const std::vector<CoefficientArray>& corpus, const BallSearchSet& balls,
                                       const BisectionConfig& cfg = {});

// {"K":..,"L":..,"d":..,"M":..,"grid":{...},"coefficients":[{"j":..,"m":[..],"re":..,"im":..}]}
// "M" present means molecules. The grid defaults to n = len(m), R = 8, N = 512.
struct AtomSpec {
  AtomFamily family;
  CoefficientArray coefficients;
  Grid grid{1, 8.0, 512};
};
AtomSpec parseAtomSpec(const nlohmann::json& doc);

}  // namespace vexspace
