#include "vexspace/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace vexspace::fft {
namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

// FFTW_UNALIGNED keeps the same codelets for every buffer, so results do not
// depend on where std::vector happened to allocate.
fftw_plan planFor(int dim, std::size_t n, int sign) {
  PlanCache& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  auto key = std::make_tuple(dim, n, sign);
  auto it = c.plans.find(key);
  if (it != c.plans.end()) return it->second;
  std::size_t total = dim == 1 ? n : n * n;
  fftw_complex* scratch = fftw_alloc_complex(total);
  fftw_plan plan = dim == 1
      ? fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
      : fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), scratch, scratch, sign,
                         FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  c.plans.emplace(key, plan);
  return plan;
}

}  // namespace

void transform(std::vector<std::complex<double>>& data, int dim, std::size_t n, int sign) {
  fftw_plan plan = planFor(dim, n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace vexspace::fft
