#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "vexspace/simd.hpp"

namespace vexspace::simd::avx2 {
namespace {

// exp(x) to about 1 ulp on [-708, 709.78]; 0 below, +inf above.
inline __m256d expPd(__m256d x) {
  const __m256d hiLimit = _mm256_set1_pd(709.782712893384);
  const __m256d loLimit = _mm256_set1_pd(-708.0);
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
  const __m256d ln2hi = _mm256_set1_pd(0.693147180369123816490);
  const __m256d ln2lo = _mm256_set1_pd(1.90821492927058770002e-10);

  __m256d overflow = _mm256_cmp_pd(x, hiLimit, _CMP_GT_OQ);
  __m256d underflow = _mm256_cmp_pd(x, loLimit, _CMP_LT_OQ);
  __m256d xc = _mm256_min_pd(_mm256_max_pd(x, loLimit), hiLimit);

  __m256d k = _mm256_round_pd(_mm256_mul_pd(xc, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2hi, xc);
  r = _mm256_fnmadd_pd(k, ln2lo, r);

  // Taylor polynomial of degree 12 on |r| <= ln2/2.
  __m256d poly = _mm256_set1_pd(1.0 / 479001600.0);
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 39916800.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 3628800.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 362880.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 40320.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 5040.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 720.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 120.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 24.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0 / 6.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(0.5));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0));
  poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(1.0));

  // 2^k with k in [-1022, 1024]; split k=1024 into 2^512 * 2^512.
  __m128i k32 = _mm256_cvtpd_epi32(k);
  __m128i half = _mm_srai_epi32(k32, 1);
  __m128i rest = _mm_sub_epi32(k32, half);
  const __m256i bias = _mm256_set1_epi64x(1023);
  __m256i e1 = _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(half), bias), 52);
  __m256i e2 = _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(rest), bias), 52);
  __m256d result = _mm256_mul_pd(_mm256_mul_pd(poly, _mm256_castsi256_pd(e1)), _mm256_castsi256_pd(e2));

  result = _mm256_blendv_pd(result, _mm256_set1_pd(std::numeric_limits<double>::infinity()), overflow);
  result = _mm256_blendv_pd(result, _mm256_setzero_pd(), underflow);
  return result;
}

inline double horizontalSum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

inline double horizontalMax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

}  // namespace

ExpSums sumExpAffine(const double* p, const double* logAbs, const double* s, std::size_t n,
                     double alpha, double beta) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  __m256d sum = _mm256_setzero_pd();
  __m256d slope = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vp = _mm256_loadu_pd(p + i);
    __m256d vl = _mm256_loadu_pd(logAbs + i);
    __m256d vs = _mm256_loadu_pd(s + i);
    __m256d arg = _mm256_fnmadd_pd(vs, vb, _mm256_mul_pd(vp, _mm256_add_pd(va, vl)));
    __m256d t = expPd(arg);
    sum = _mm256_add_pd(sum, t);
    slope = _mm256_fmadd_pd(vs, t, slope);
  }
  if (i < n) {
    alignas(32) double bp[4] = {0, 0, 0, 0}, bl[4] = {0, 0, 0, 0}, bs[4] = {0, 0, 0, 0};
    alignas(32) long long maskBits[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; i + k < n; ++k) {
      bp[k] = p[i + k];
      bl[k] = logAbs[i + k];
      bs[k] = s[i + k];
      maskBits[k] = -1;
    }
    __m256d mask = _mm256_castsi256_pd(_mm256_load_si256(reinterpret_cast<const __m256i*>(maskBits)));
    __m256d vp = _mm256_load_pd(bp);
    __m256d vl = _mm256_load_pd(bl);
    __m256d vs = _mm256_load_pd(bs);
    __m256d arg = _mm256_fnmadd_pd(vs, vb, _mm256_mul_pd(vp, _mm256_add_pd(va, vl)));
    __m256d t = _mm256_and_pd(expPd(arg), mask);
    sum = _mm256_add_pd(sum, t);
    slope = _mm256_fmadd_pd(vs, t, slope);
  }
  return {horizontalSum(sum), horizontalSum(slope)};
}

double maxProduct(const double* a, const double* b, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    best = _mm256_max_pd(best, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double out = horizontalMax(best);
  for (; i < n; ++i) out = std::max(out, a[i] * b[i]);
  return out;
}

}  // namespace vexspace::simd::avx2
