#include "vexspace/weights.hpp"

#include <algorithm>
#include <cmath>

#include "vexspace/errors.hpp"

namespace vexspace {

WeightSequence WeightSequence::unit(int levels, int dim, double boxRadius) {
  return constantSmoothness(0.0, levels, dim, boxRadius);
}

WeightSequence WeightSequence::constantSmoothness(double s, int levels, int dim, double boxRadius) {
  WeightSequence w;
  w.levels = levels;
  w.dim = dim;
  w.boxRadius = boxRadius;
  w.evaluate = [s](int j, const Point&) { return std::exp2(j * s); };
  w.alpha = 0;
  w.alpha1 = w.alpha2 = s;
  w.declaredConstant = 1;
  w.name = "2^(j*" + std::to_string(s) + ")";
  return w;
}

WeightSequence WeightSequence::variableSmoothness(const VariableExponent& s, int levels, std::size_t sampleBudget) {
  if (s.max() == kInfinity) throw DomainError("smoothness must be finite");
  WeightSequence w;
  w.levels = levels;
  w.dim = s.dim();
  w.boxRadius = s.boxRadius();
  w.evaluate = [s](int j, const Point& x) { return std::exp2(j * s(x)); };
  // |s(x)-s(y)| <= C / log(e + 1/|x-y|) gives 2^{j(s(x)-s(y))} <= e^C (1 + 2^j|x-y|)^C.
  LogHolderConstants c = logHolderConstantsOf([&](const Point& x) { return s(x); }, std::nullopt, s.dim(),
                                              s.boxRadius(), sampleBudget);
  w.alpha = c.cLocal;
  w.declaredConstant = std::exp(c.cLocal) * (1 + 1e-9);
  w.alpha1 = s.min();
  w.alpha2 = s.max();
  w.name = "2^(j*s(x)), s=" + s.describe();
  return w;
}

AdmissibilityReport checkAdmissibleWeights(const WeightSequence& w, std::size_t sampleBudget) {
  if (w.levels < 2) throw DomainError("weight check needs at least two levels");
  std::vector<Point> pts = regularitySamplePoints(w.dim, w.boxRadius, sampleBudget);
  AdmissibilityReport r;
  r.worstRatioLow = kInfinity;
  std::vector<double> vals(pts.size());
  for (int j = 0; j < w.levels; ++j) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      vals[i] = w(j, pts[i]);
      if (!(vals[i] > 0) || !std::isfinite(vals[i])) throw ValidityError("weight value must be positive and finite");
    }
    if (j + 1 < w.levels) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        double next = w(j + 1, pts[i]);
        if (!(next > 0)) throw ValidityError("weight value must be positive and finite");
        double ratio = next / vals[i];
        r.worstRatioLow = std::min(r.worstRatioLow, ratio);
        r.worstRatioHigh = std::max(r.worstRatioHigh, ratio);
      }
    }
    double scale = std::exp2(j);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t k = 0; k < pts.size(); ++k) {
        double d = distance(pts[i], pts[k], w.dim);
        double c = vals[i] / (vals[k] * std::pow(1 + scale * d, w.alpha));
        r.worstAlphaConstant = std::max(r.worstAlphaConstant, c);
      }
  }
  const double slack = 1e-12;
  r.ratioPass = r.worstRatioLow >= std::exp2(w.alpha1) * (1 - slack) && r.worstRatioHigh <= std::exp2(w.alpha2) * (1 + slack);
  r.alphaPass = r.worstAlphaConstant <= w.declaredConstant * (1 + slack);
  return r;
}

}  // namespace vexspace
