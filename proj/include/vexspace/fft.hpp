#pragma once

#include <complex>
#include <vector>

namespace vexspace::fft {

// Unnormalized in-place DFT on an N (dim 1) or N x N (dim 2, row-major) array.
// sign = -1 forward, +1 backward.
void transform(std::vector<std::complex<double>>& data, int dim, std::size_t n, int sign);

}  // namespace vexspace::fft
