#include <doctest.h>

#include <cmath>
#include <vector>

#include "vexspace/simd.hpp"
#include "vexspace/trial.hpp"

using namespace vexspace;

namespace {

struct Inputs {
  std::vector<double> p, logAbs, s;
};

Inputs randomInputs(std::size_t n, std::uint64_t seed) {
  TrialRng rng(seed);
  Inputs in;
  for (std::size_t i = 0; i < n; ++i) {
    in.p.push_back(rng.uniform(0.3, 6));
    in.logAbs.push_back(rng.uniform(-8, 2));
    in.s.push_back(rng.uniform(0, 4));
  }
  return in;
}

double plainSum(const Inputs& in, double alpha, double beta, double* slope) {
  double sum = 0, sl = 0;
  for (std::size_t i = 0; i < in.p.size(); ++i) {
    double t = std::exp(in.p[i] * (alpha + in.logAbs[i]) - in.s[i] * beta);
    sum += t;
    sl += in.s[i] * t;
  }
  *slope = sl;
  return sum;
}

}  // namespace

TEST_CASE("scalar sumExpAffine matches a direct loop") {
  for (std::size_t n : {0, 1, 3, 4, 7, 64, 1001}) {
    Inputs in = randomInputs(n, 11 + n);
    double slope = 0;
    double ref = plainSum(in, 0.3, -0.7, &slope);
    simd::ExpSums got = simd::scalar::sumExpAffine(in.p.data(), in.logAbs.data(), in.s.data(), n, 0.3, -0.7);
    CHECK(got.sum == doctest::Approx(ref).epsilon(1e-13));
    CHECK(got.slope == doctest::Approx(slope).epsilon(1e-13));
  }
}

TEST_CASE("avx2 kernels agree with scalar") {
  if (!simd::avx2Available()) {
    MESSAGE("AVX2 not available, equivalence not exercised");
    return;
  }
  for (std::size_t n : {0, 1, 2, 3, 4, 5, 8, 13, 255, 4096}) {
    Inputs in = randomInputs(n, 100 + n);
    for (double alpha : {-3.0, 0.0, 1.5}) {
      for (double beta : {-2.0, 0.0, 4.0}) {
        auto a = simd::scalar::sumExpAffine(in.p.data(), in.logAbs.data(), in.s.data(), n, alpha, beta);
        auto b = simd::avx2::sumExpAffine(in.p.data(), in.logAbs.data(), in.s.data(), n, alpha, beta);
        CHECK(b.sum == doctest::Approx(a.sum).epsilon(1e-12));
        CHECK(b.slope == doctest::Approx(a.slope).epsilon(1e-12));
      }
    }
    // maxProduct is exact: no rounding beyond the products themselves.
    std::vector<double> x(in.logAbs.size()), y(in.s.size());
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::exp(in.logAbs[i]);
      y[i] = in.s[i];
    }
    CHECK(simd::avx2::maxProduct(x.data(), y.data(), n) == simd::scalar::maxProduct(x.data(), y.data(), n));
  }
}

TEST_CASE("avx2 flushes only negligible terms") {
  if (!simd::avx2Available()) return;
  std::vector<double> p{1, 1, 1, 1, 1}, la{-800, -1, -900, 0, -710}, s{0, 0, 0, 0, 0};
  auto a = simd::scalar::sumExpAffine(p.data(), la.data(), s.data(), 5, 0, 0);
  auto b = simd::avx2::sumExpAffine(p.data(), la.data(), s.data(), 5, 0, 0);
  CHECK(b.sum == doctest::Approx(a.sum).epsilon(1e-14));
  CHECK(std::isfinite(b.sum));
}

TEST_CASE("maxProduct of an empty range is zero") {
  CHECK(simd::scalar::maxProduct(nullptr, nullptr, 0) == 0);
  CHECK(simd::maxProduct(nullptr, nullptr, 0) == 0);
}

TEST_CASE("backend switch") {
  simd::Backend before = simd::activeBackend();
  simd::setBackend(simd::Backend::scalar);
  CHECK(simd::activeBackend() == simd::Backend::scalar);
  CHECK(std::string(simd::backendName(simd::Backend::scalar)) == "scalar");
  simd::setBackend(simd::Backend::avx2);
  CHECK(simd::activeBackend() == (simd::avx2Available() ? simd::Backend::avx2 : simd::Backend::scalar));
  simd::setBackend(before);
}
