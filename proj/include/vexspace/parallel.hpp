#pragma once

#include <cstddef>

namespace vexspace {

// Reads VEXSPACE_THREADS (if set) and caps the OpenMP team size.
void configureThreadsFromEnvironment();

int maxThreads();

}  // namespace vexspace
