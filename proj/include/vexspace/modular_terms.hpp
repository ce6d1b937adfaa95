#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vexspace/grid.hpp"
#include "vexspace/root_find.hpp"

namespace vexspace {

// Half-open range of flat node indices.
struct NodeRun {
  std::uint32_t begin;
  std::uint32_t end;
};

// |g| compiled against exponents p and q for fast evaluation of
//   rho(alpha, beta) = h^n sum_{i in runs} phi_{p_i}(e^alpha |g_i| e^{-beta / q_i}),
// i.e. the modular of e^alpha g chi / lambda^{1/q} with beta = log lambda.
// Zero nodes are dropped; nodes with p = inf are kept apart.
class ModularTerms {
 public:
  // q empty means q = 1.
  ModularTerms(const GridFunction& g, std::span<const double> p, std::span<const double> q = {});

  struct Sums {
    double sum = 0;    // rho
    double slope = 0;  // -d rho / d beta
  };

  bool isZero() const { return finiteCount() == 0 && infL_.empty(); }
  std::size_t finiteCount() const { return p_.size(); }

  Sums evaluate(std::span<const NodeRun> runs, double alpha, double beta) const;

  // log inf{lambda > 0 : rho(alpha, log lambda) <= 1}; -inf means lambda = 0,
  // +inf means no lambda works. Returns the upper end of a bracket of
  // relative width <= cfg tolerance.
  double infimumLog(std::span<const NodeRun> runs, double alpha, const BisectionConfig& cfg, double guess = 0) const;

  // Cheap bound: infimumLog(runs, alpha) <= result. +inf when no bound is available.
  double infimumLogUpperBound(std::span<const NodeRun> runs, double alpha) const;
  // Cheap bound on log rho(alpha, beta).
  double logModularUpperBound(std::span<const NodeRun> runs, double alpha, double beta) const;
  // Exact test rho(alpha, beta) <= 1.
  bool withinUnit(std::span<const NodeRun> runs, double alpha, double beta) const;

 private:
  struct Range {
    std::uint32_t begin, end;
  };
  Range finiteRange(const NodeRun& r) const { return {rankF_[r.begin], rankF_[r.end]}; }
  Range infiniteRange(const NodeRun& r) const { return {rankI_[r.begin], rankI_[r.end]}; }

  struct Extremes {
    double pMin, pMax, sMin, sMax;
  };
  Extremes extremes(std::span<const NodeRun> runs) const;
  bool anyInfinite(std::span<const NodeRun> runs) const;
  double massAtZero(std::span<const NodeRun> runs) const;  // sum of t0 = |g|^p h^n

  double cell_;
  std::vector<double> p_, logAbs_, s_;
  std::vector<std::uint32_t> rankF_;
  std::vector<double> infL_, infInvQ_;
  std::vector<std::uint32_t> rankI_;
  std::vector<std::uint32_t> positiveS_;  // prefix count of s > 0 among finite nodes
  bool hasZeroS_ = false;
  std::vector<long double> prefix_;  // prefix sums of |g|^p
  // Sparse tables for range extremes of p and s.
  std::vector<std::vector<double>> pMin_, pMax_, sMin_, sMax_;
  bool sIsP_ = false;
};

}  // namespace vexspace
