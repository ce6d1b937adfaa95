#include <atomic>
#include <cstdlib>
#include <cstring>

#include "vexspace/simd.hpp"

namespace vexspace::simd {
namespace {

Backend detectDefault() {
  const char* env = std::getenv("VEXSPACE_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Backend::scalar;
  return avx2Available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detectDefault()};
  return backend;
}

}  // namespace

bool avx2Available() {
  static const bool available = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return available;
}

Backend activeBackend() { return current().load(std::memory_order_relaxed); }

void setBackend(Backend backend) {
  if (backend == Backend::avx2 && !avx2Available()) backend = Backend::scalar;
  current().store(backend, std::memory_order_relaxed);
}

const char* backendName(Backend backend) { return backend == Backend::avx2 ? "avx2" : "scalar"; }

ExpSums sumExpAffine(const double* p, const double* logAbs, const double* s, std::size_t n,
                     double alpha, double beta) {
  if (activeBackend() == Backend::avx2) return avx2::sumExpAffine(p, logAbs, s, n, alpha, beta);
  return scalar::sumExpAffine(p, logAbs, s, n, alpha, beta);
}

double maxProduct(const double* a, const double* b, std::size_t n) {
  if (activeBackend() == Backend::avx2) return avx2::maxProduct(a, b, n);
  return scalar::maxProduct(a, b, n);
}

}  // namespace vexspace::simd
