#include <algorithm>
#include <cmath>

#include "vexspace/simd.hpp"

namespace vexspace::simd::scalar {

ExpSums sumExpAffine(const double* p, const double* logAbs, const double* s, std::size_t n,
                     double alpha, double beta) {
  ExpSums out;
  for (std::size_t i = 0; i < n; ++i) {
    double t = std::exp(p[i] * (alpha + logAbs[i]) - s[i] * beta);
    out.sum += t;
    out.slope += s[i] * t;
  }
  return out;
}

double maxProduct(const double* a, const double* b, std::size_t n) {
  double best = 0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, a[i] * b[i]);
  return best;
}

}  // namespace vexspace::simd::scalar
