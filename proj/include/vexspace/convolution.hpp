#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vexspace/balls.hpp"
#include "vexspace/exponent.hpp"
#include "vexspace/grid.hpp"
#include "vexspace/root_find.hpp"

namespace vexspace {

// 2^{n nu} (1 + 2^nu |x|)^{-m}
double etaValue(int nu, double m, const Point& x, int n);

// eta_{nu,m} sampled with its origin at the node x = 0 (index N/2 per axis),
// values below 1e-14 eta(0) set to 0.
GridFunction etaKernel(const Grid& grid, int nu, double m);

// ||eta_{0,m}||_{L1(R^n)} for m > n: 2/(m-1) in 1-D, 2 pi/((m-1)(m-2)) in 2-D.
double etaL1Mass(double m, int n);
// Upper bound for the mass of eta_{nu,m} outside [-R,R]^n.
double etaTailBound(int nu, double m, int n, double boxRadius);

// (eta_{nu,m} * f_nu)_nu
GridFunctionSequence convolveEta(const GridFunctionSequence& fs, double m);

struct ConvolutionThreshold {
  double cLogInvQ = 0;
  bool cLogSampled = false;
  double cInfinity = 0;  // c_inf(1/p, 1/u)
  double value = 0;      // n + c_log(1/q) + n c_inf(1/p,1/u)
};
ConvolutionThreshold convolutionThreshold(const VariableExponent& p, const VariableExponent& q,
                                          const VariableExponent& u, std::size_t sampleBudget = 256);

struct RatioReport {
  bool hypothesisMet = false;
  double parameter = 0;  // m, delta, a ...
  double threshold = 0;
  std::vector<double> ratios;
  double maxRatio = 0;
  double minRatio = 0;
  bool finite = true;
  std::string note;
};

struct TrialOptions {
  std::size_t trials = 10;
  std::size_t levels = 4;
  std::uint64_t seed = 42;
};

// Ratios ||(eta_{nu,m} * f_nu)|| / ||(f_nu)|| in the mixed Morrey-sequence space
// over random bump sequences.
RatioReport convolutionInequalityReport(const VariableExponent& p, const VariableExponent& q,
                                        const VariableExponent& u, double m, const TrialOptions& opt,
                                        const BallSearchSet& balls, const BisectionConfig& cfg = {});

// Single-function variant: max over nu < levels of ||eta_{nu,m} * f|| / ||f|| in M_{p,u}.
RatioReport morreyConvolutionReport(const VariableExponent& p, const VariableExponent& u, double m,
                                    const TrialOptions& opt, const BallSearchSet& balls,
                                    const BisectionConfig& cfg = {});

// Same quantity with the Lp norm (the u = p reference).
RatioReport lebesgueConvolutionReport(const VariableExponent& p, double m, const TrialOptions& opt,
                                      const Grid& grid, const BisectionConfig& cfg = {});

struct WeightShiftReport {
  double worstConstant = 0;
  std::vector<double> perLevel;  // worst ratio at each nu
  double cLogAlpha = 0;          // sampled log-Holder constant of alpha
  bool hypothesisMet = false;    // l >= cLogAlpha
};

// Worst sampled 2^{nu alpha(x)} eta_{nu,m+l}(x-y) / (2^{nu alpha(y)} eta_{nu,m}(x-y)),
// nu = 0..levels-1. The ratio does not depend on m.
WeightShiftReport weightShiftCheck(const VariableExponent& alpha, double m, double l, int levels,
                                   std::size_t samples);

// G_nu = sum_j 2^{-|nu-j| delta} g_j; entries must be real and nonnegative.
GridFunctionSequence discreteConvolutionSum(const GridFunctionSequence& gs, double delta);

struct DiscreteConvolutionReport {
  std::vector<double> deltas;
  std::vector<std::vector<double>> ratios;  // [trial][delta]
  std::vector<double> maxRatio;             // per delta
  bool monotone = true;                     // nonincreasing in delta on every trial
  bool finite = true;
};

DiscreteConvolutionReport discreteConvolutionReport(const VariableExponent& p, const VariableExponent& q,
                                                    const VariableExponent& u, std::vector<double> deltas,
                                                    const TrialOptions& opt, const BallSearchSet& balls,
                                                    const BisectionConfig& cfg = {});

}  // namespace vexspace
