#pragma once

#include <functional>
#include <optional>
#include <string>

#include "vexspace/exponent.hpp"
#include "vexspace/point.hpp"

namespace vexspace {

// Weights w_j(x) > 0, j = 0..levels-1, with declared class parameters:
//   2^alpha1 w_j <= w_{j+1} <= 2^alpha2 w_j,  w_j(x) <= c w_j(y) (1 + 2^j |x-y|)^alpha.
struct WeightSequence {
  int levels = 1;
  int dim = 1;
  double boxRadius = 8.0;
  std::function<double(int, const Point&)> evaluate;
  double alpha = 0;
  double alpha1 = 0;
  double alpha2 = 0;
  double declaredConstant = 1;
  std::string name;

  double operator()(int j, const Point& x) const { return evaluate(j, x); }

  static WeightSequence unit(int levels, int dim = 1, double boxRadius = 8.0);
  // 2^{j s}
  static WeightSequence constantSmoothness(double s, int levels, int dim = 1, double boxRadius = 8.0);
  // 2^{j s(x)} with declared alpha from the log-Holder constant of s.
  static WeightSequence variableSmoothness(const VariableExponent& s, int levels, std::size_t sampleBudget = 1024);
};

struct AdmissibilityReport {
  double worstRatioLow = 0;       // min over samples of w_{j+1}/w_j
  double worstRatioHigh = 0;      // max over samples of w_{j+1}/w_j
  double worstAlphaConstant = 0;  // max of w_j(x) / (w_j(y) (1+2^j|x-y|)^alpha)
  bool ratioPass = false;
  bool alphaPass = false;
  bool pass() const { return ratioPass && alphaPass; }
};

AdmissibilityReport checkAdmissibleWeights(const WeightSequence& w, std::size_t sampleBudget);

}  // namespace vexspace
