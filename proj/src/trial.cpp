#include "vexspace/trial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vexspace {

std::uint64_t trialSeed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t TrialRng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double TrialRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

long TrialRng::integer(long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(next() % span);
}

double TrialRng::logUniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

namespace {

struct Bump {
  Point center{0, 0};
  double width = 1;
  Complex amplitude = 1;
};

GridFunction sumOfBumps(const Grid& grid, TrialRng& rng, bool complexValues, bool nonnegative) {
  double R = grid.boxRadius();
  int count = static_cast<int>(rng.integer(1, 5));
  std::vector<Bump> bumps(count);
  for (Bump& b : bumps) {
    for (int d = 0; d < grid.dim(); ++d) b.center[d] = rng.uniform(-R / 2, R / 2);
    b.width = rng.uniform(R / 64, R / 16);
    double mag = rng.uniform(0.2, 1.0);
    if (nonnegative) {
      b.amplitude = mag;
    } else if (complexValues) {
      b.amplitude = std::polar(mag, rng.uniform(0, 2 * std::numbers::pi));
    } else {
      b.amplitude = rng.uniform() < 0.5 ? -mag : mag;
    }
  }
  GridFunction f = GridFunction::sample(grid, [&](const Point& x) {
    Complex v = 0;
    for (const Bump& b : bumps) {
      double r = distance(x, b.center, grid.dim()) / b.width;
      v += b.amplitude * std::exp(-0.5 * r * r);
    }
    return v;
  });
  double top = f.maxAbs();
  return top > 0 ? f.scaled(1 / top) : f;
}

}  // namespace

GridFunction randomBumps(const Grid& grid, TrialRng& rng, bool complexValues) {
  return sumOfBumps(grid, rng, complexValues, false);
}

GridFunction randomNonnegativeBumps(const Grid& grid, TrialRng& rng) { return sumOfBumps(grid, rng, false, true); }

GridFunctionSequence randomBumpSequence(const Grid& grid, TrialRng& rng, std::size_t entries, bool nonnegative) {
  GridFunctionSequence seq(grid);
  for (std::size_t k = 0; k < entries; ++k) {
    GridFunction f = nonnegative ? randomNonnegativeBumps(grid, rng) : randomBumps(grid, rng);
    seq.push(f.scaled(rng.logUniform(0.1, 2.0)));
  }
  return seq;
}

VariableExponent randomExponent(TrialRng& rng, double lo, double hi, int dim, double boxRadius) {
  double a = rng.uniform(lo, (lo + hi) / 2);
  double b = rng.uniform(0, hi - a);
  switch (rng.integer(0, 2)) {
    case 0:
      return VariableExponent::constant(a, dim, boxRadius);
    case 1:
      return VariableExponent::logSmooth(a, b, dim, boxRadius);
    default:
      return VariableExponent::canonical(a, b, dim, boxRadius);
  }
}

}  // namespace vexspace
