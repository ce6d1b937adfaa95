#pragma once

#include <cstddef>

namespace vexspace::simd {

enum class Backend { scalar, avx2 };

struct ExpSums {
  double sum = 0;    // sum of t_i
  double slope = 0;  // sum of s_i * t_i
};

// t_i = exp(p_i * (alpha + logAbs_i) - s_i * beta). Terms below exp(-708)
// may be flushed to zero by vector backends.
ExpSums sumExpAffine(const double* p, const double* logAbs, const double* s, std::size_t n,
                     double alpha, double beta);

// max_i a_i * b_i for nonnegative inputs, 0 when n == 0.
double maxProduct(const double* a, const double* b, std::size_t n);

Backend activeBackend();
// Forces a backend (tests). Falls back to scalar if AVX2 is unavailable.
void setBackend(Backend backend);
bool avx2Available();
const char* backendName(Backend backend);

namespace scalar {
ExpSums sumExpAffine(const double* p, const double* logAbs, const double* s, std::size_t n,
                     double alpha, double beta);
double maxProduct(const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
ExpSums sumExpAffine(const double* p, const double* logAbs, const double* s, std::size_t n,
                     double alpha, double beta);
double maxProduct(const double* a, const double* b, std::size_t n);
}  // namespace avx2

}  // namespace vexspace::simd
