#include "vexspace/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace vexspace {

void configureThreadsFromEnvironment() {
  const char* env = std::getenv("VEXSPACE_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  long n = std::strtol(env, &end, 10);
  if (end != env && n > 0) omp_set_num_threads(static_cast<int>(n));
}

int maxThreads() { return omp_get_max_threads(); }

}  // namespace vexspace
