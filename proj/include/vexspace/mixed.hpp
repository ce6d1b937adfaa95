#pragma once

#include <optional>
#include <string>

#include "vexspace/balls.hpp"
#include "vexspace/exponent.hpp"
#include "vexspace/grid.hpp"
#include "vexspace/root_find.hpp"

namespace vexspace {

// sum_nu inf{lambda : rho_p(f_nu / lambda^{1/q}) <= 1}, lambda^{1/inf} = 1.
// Inner solves run at cfg.inner().
double modularMixedLebesgue(const VariableExponent& p, const VariableExponent& q, const GridFunctionSequence& fs,
                            const BisectionConfig& cfg = {});
// sum_nu || phi_q(|f_nu|) ||_{p/q}; empty when the form does not apply
// (some node with q = inf and p < q).
std::optional<double> modularMixedLebesgueSimple(const VariableExponent& p, const VariableExponent& q,
                                                 const GridFunctionSequence& fs, const BisectionConfig& cfg = {});
double normMixedLebesgue(const VariableExponent& p, const VariableExponent& q, const GridFunctionSequence& fs,
                         const BisectionConfig& cfg = {});

double modularMixedMorrey(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                          const GridFunctionSequence& fs, const BallSearchSet& balls, const BisectionConfig& cfg = {});
std::optional<double> modularMixedMorreySimple(const VariableExponent& p, const VariableExponent& q,
                                               const VariableExponent& u, const GridFunctionSequence& fs,
                                               const BallSearchSet& balls, const BisectionConfig& cfg = {});
double normMixedMorrey(const VariableExponent& p, const VariableExponent& q, const VariableExponent& u,
                       const GridFunctionSequence& fs, const BallSearchSet& balls, const BisectionConfig& cfg = {});

struct ModularBoundReport {
  bool applicable = false;
  double modular = 0;
  double lhs = 0;  // the quasinorm
  double rhs = 0;  // max{rho^{1/q-}, rho^{1/q+}}
  bool pass = false;
  std::string note;
};

ModularBoundReport normFromModularBound(const VariableExponent& p, const VariableExponent& q,
                                        const VariableExponent& u, const GridFunctionSequence& fs,
                                        const BallSearchSet& balls, const BisectionConfig& cfg = {});

// True when some node has q = inf while p < inf there: the inner infimum then
// has no simple form and is handled by the direct branch.
bool innerInfimumNeedsDirectBranch(const VariableExponent& p, const VariableExponent& q, const Grid& grid);

}  // namespace vexspace
