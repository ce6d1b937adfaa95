#pragma once

#include <cstddef>

#include "vexspace/balls.hpp"
#include "vexspace/exponent.hpp"
#include "vexspace/grid.hpp"
#include "vexspace/root_find.hpp"

namespace vexspace {

// max over the search set of r^{n/u(x)-n/p(x)} ||f chi_B(x,r)||_p.
double morreyNormDirect(const VariableExponent& p, const VariableExponent& u, const GridFunction& f,
                        const BallSearchSet& balls, const BisectionConfig& cfg = {});

// One bisection on lambda of sup_B rho_p(r^{n/u(x)-n/p(x)} f chi_B / lambda) <= 1.
double morreyNormInterchanged(const VariableExponent& p, const VariableExponent& u, const GridFunction& f,
                              const BallSearchSet& balls, const BisectionConfig& cfg = {});

struct CharBallReport {
  // ||chi_B||_p / r^{n/p(x)} over balls with r <= 1, and / r^{n/p_inf} for r >= 1.
  double minSmall = 0, maxSmall = 0;
  double minLarge = 0, maxLarge = 0;
  std::size_t countSmall = 0, countLarge = 0;
};

// Only balls lying inside the box are used, since truncated balls are not balls of R^n.
CharBallReport charBallNormRatio(const VariableExponent& p, const BallSearchSet& balls,
                                 const BisectionConfig& cfg = {});

}  // namespace vexspace
