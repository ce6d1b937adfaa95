#pragma once

#include <array>
#include <cmath>

namespace vexspace {

// Points carry two coordinates; in 1-D the second one is ignored (kept 0).
using Point = std::array<double, 2>;

inline double norm(const Point& x, int dim) {
  return dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
}

inline double distance(const Point& x, const Point& y, int dim) {
  return dim == 1 ? std::abs(x[0] - y[0]) : std::hypot(x[0] - y[0], x[1] - y[1]);
}

}  // namespace vexspace
