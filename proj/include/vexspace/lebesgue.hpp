#pragma once

#include "vexspace/exponent.hpp"
#include "vexspace/grid.hpp"
#include "vexspace/root_find.hpp"

namespace vexspace {

// h^n sum phi_{p(x)}(|f(x)|); +inf if any node gives +inf.
double modularLp(const VariableExponent& p, const GridFunction& f);

// inf{lambda > 0 : modularLp(f / lambda) <= 1}, upper bracket end; 0 for f = 0.
double normLp(const VariableExponent& p, const GridFunction& f, const BisectionConfig& cfg = {});

// Same quantity by plain bisection on modularLp; slow reference for tests.
double normLpBisection(const VariableExponent& p, const GridFunction& f, const BisectionConfig& cfg = {});

}  // namespace vexspace
