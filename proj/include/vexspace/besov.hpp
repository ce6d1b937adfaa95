#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "vexspace/balls.hpp"
#include "vexspace/convolution.hpp"
#include "vexspace/exponent.hpp"
#include "vexspace/grid.hpp"
#include "vexspace/root_find.hpp"
#include "vexspace/weights.hpp"

namespace vexspace {

// exp(-1/t) / (exp(-1/t) + exp(-1/(1-t))), 0 for t <= 0 and 1 for t >= 1.
double smoothStep(double t);

// Radial profile g: rises on [riseLo, riseHi], equals 1 up to fallLo, vanishes from fallHi.
struct WindowParams {
  double riseLo = 0.5;
  double riseHi = 0.6;
  double fallLo = 5.0 / 3.0;
  double fallHi = 2.0;

  static WindowParams standard() { return {}; }
  static WindowParams alternate() { return {0.52, 0.58, 1.7, 1.95}; }
};

// Largest J with 2^{J+1} <= Nyquist frequency.
int maxLevelForGrid(const Grid& grid);

struct LatticeCheck {
  bool supportPhi0 = true;  // Phi = 0 on lattice points with |xi| >= 2
  bool supportPhi = true;   // phi_j = 0 outside 2^j [1/2, 2]
  double minPlateauPhi0 = 0;  // min |Phi| on |xi| <= 5/3
  double minPlateauPhi = 0;   // min |phi_j| on 2^j [3/5, 5/3]
  bool pass() const { return supportPhi0 && supportPhi && minPlateauPhi0 > 0 && minPlateauPhi > 0; }
};

// phi_0 = Phi, phi_j = phi(2^{-j} .) on the frequency lattice, j = 0..J.
class AdmissibleSystem {
 public:
  AdmissibleSystem(const Grid& grid, int J, WindowParams params = WindowParams::standard());

  const Grid& grid() const { return grid_; }
  int maxLevel() const { return J_; }
  int levels() const { return J_ + 1; }
  const WindowParams& params() const { return params_; }

  double Phi(double radius) const;
  double phi(double radius) const;
  double window(int j, const Point& xi) const;
  std::vector<std::function<double(const Point&)>> windows() const;
  LatticeCheck checkLattice() const;

 private:
  Grid grid_;
  int J_;
  WindowParams params_;
};

// (phi_j hat f)^vee, j = 0..J.
GridFunctionSequence littlewoodPaleyPieces(const AdmissibleSystem& sys, const GridFunction& f);

// (w_j(x) g_j(x))_j
GridFunctionSequence weightedSequence(const GridFunctionSequence& gs, const WeightSequence& w);

double besovMorreyNorm(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                       const WeightSequence& w, const AdmissibleSystem& sys, const GridFunction& f,
                       const BallSearchSet& balls, const BisectionConfig& cfg = {});

struct PeetreCheck {
  double minPsi0 = 0;  // min |psi_0| on lattice points with |xi| <= k eps
  double minPsi1 = 0;  // min |psi_1| on eps <= |xi| <= 2 k eps
  bool vanishesNearOrigin = true;  // psi_1 = 0 on lattice points with |xi| < 1/2
  bool pass() const { return minPsi0 > 0 && minPsi1 > 0 && vanishesNearOrigin; }
};

// psi_0 = Phi, psi_1 = phi, psi_j = psi_1(2^{1-j} .), j = 0..J.
class PeetreSystem {
 public:
  PeetreSystem(const Grid& grid, int J, double epsilon = 0.6, double k = 1.5,
               WindowParams params = WindowParams::standard());

  const Grid& grid() const { return base_.grid(); }
  int maxLevel() const { return base_.maxLevel(); }
  int levels() const { return base_.levels(); }
  double epsilon() const { return epsilon_; }
  double k() const { return k_; }
  double window(int j, const Point& xi) const;
  std::vector<std::function<double(const Point&)>> windows() const;
  PeetreCheck checkPositivity() const;

 private:
  AdmissibleSystem base_;
  double epsilon_;
  double k_;
};

// (Psi_j * f)_j as Fourier multipliers.
GridFunctionSequence peetrePieces(const PeetreSystem& sys, const GridFunction& f);

// sup_y |g(y)| / (1 + |2^j (x - y)|^a) over grid nodes y. Exact in 1-D; in
// 2-D the y rows are subsampled with rowStride (the row of x always kept), a
// lower approximation.
GridFunction peetreMaximal(const GridFunction& g, int j, double a, std::size_t rowStride = 4);
GridFunction peetreMaximal(const PeetreSystem& sys, const GridFunction& f, int j, double a,
                           std::size_t rowStride = 4);

// alpha + c_log(1/q) + n (1/p- + c_inf(1/p,1/u))
double peetreSizeBound(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                       const WeightSequence& w, std::size_t sampleBudget = 256);

struct PeetreReport {
  double aBound = 0;
  double a = 0;
  bool hypothesisMet = false;
  std::vector<double> besov;       // (1)
  std::vector<double> convolution; // (2)
  std::vector<double> maximal;     // (3)
  double minRatio12 = 0, maxRatio12 = 0;
  double minRatio23 = 0, maxRatio23 = 0;
  double minRatio13 = 0, maxRatio13 = 0;
  bool dominationHolds = true;  // (2) <= (3) on every trial
  std::string note;
};

PeetreReport peetreCharacterizationReport(const VariableExponent& p, const VariableExponent& q,
                                          const VariableExponent& u, const WeightSequence& w,
                                          const AdmissibleSystem& sysA, const PeetreSystem& sysP, double a,
                                          const TrialOptions& opt, const BallSearchSet& balls,
                                          const BisectionConfig& cfg = {});

}  // namespace vexspace
