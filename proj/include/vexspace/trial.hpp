#pragma once

#include <cstddef>
#include <cstdint>

#include "vexspace/exponent.hpp"
#include "vexspace/grid.hpp"

namespace vexspace {

// SplitMix64 mixing of (master seed, index); the per-trial seed.
std::uint64_t trialSeed(std::uint64_t master, std::uint64_t index);

// Small portable generator (SplitMix64 stream). Distributions are built from
// raw 64-bit outputs so sequences do not depend on the standard library.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [lo, hi].
  long integer(long lo, long hi);
  double logUniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

// Sum of 1-5 Gaussian bumps, centers in [-R/2, R/2]^n, widths in [R/64, R/16],
// amplitudes of random sign (and phase when complexValues), scaled to unit sup.
GridFunction randomBumps(const Grid& grid, TrialRng& rng, bool complexValues = false);
GridFunction randomNonnegativeBumps(const Grid& grid, TrialRng& rng);
GridFunctionSequence randomBumpSequence(const Grid& grid, TrialRng& rng, std::size_t entries,
                                        bool nonnegative = false);

// A random member of the shipped families with values in [lo, hi].
VariableExponent randomExponent(TrialRng& rng, double lo, double hi, int dim, double boxRadius);

}  // namespace vexspace
