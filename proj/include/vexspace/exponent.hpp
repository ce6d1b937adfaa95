#pragma once

#include <functional>
#include <json.hpp>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vexspace/grid.hpp"
#include "vexspace/point.hpp"

namespace vexspace {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Exponent values above this cap are treated as infinity.
inline constexpr double kExponentCap = 1e6;

enum class ExponentKind { constant, logSmooth, canonical, table, step, closedForm };

// x -> p(x) in (0, inf] on the box [-R,R]^n.
class VariableExponent {
 public:
  static VariableExponent constant(double value, int dim = 1, double boxRadius = 8.0);
  // a + b (1 + cos(pi x_1 / R)) / 2
  static VariableExponent logSmooth(double a, double b, int dim = 1, double boxRadius = 8.0);
  // a + b / log(e + |x|)
  static VariableExponent canonical(double a, double b, int dim = 1, double boxRadius = 8.0);
  // Values on the periodic lattice x_i = -R + i 2R/K (K per axis, row-major in 2-D);
  // evaluation picks the nearest lattice node.
  static VariableExponent table(std::vector<double> values, int dim = 1, double boxRadius = 8.0);
  // left for x_1 < at, right otherwise
  static VariableExponent step(double left, double right, double at = 0.0, int dim = 1, double boxRadius = 8.0);
  // Arbitrary formula; extremes are found by dense sampling.
  static VariableExponent closedForm(std::string name, std::function<double(const Point&)> fn, int dim,
                                     double boxRadius, std::optional<double> limitAtInfinity,
                                     std::optional<double> declaredLogHolder = std::nullopt);

  static VariableExponent fromJson(const nlohmann::json& doc, int dim, double boxRadius);
  nlohmann::json toJson() const;

  // Throws DomainError outside the box.
  double operator()(const Point& x) const;
  std::vector<double> sample(const Grid& grid) const;

  double min() const;
  double max() const;
  std::optional<double> limitAtInfinity() const;
  // Analytic upper bound for the log-Holder constant of 1/p on the box, when known.
  std::optional<double> declaredLogHolder() const;
  ExponentKind kind() const;
  std::string describe() const;
  bool isConstant() const;
  int dim() const;
  double boxRadius() const;

  // x -> factor * p(x)
  VariableExponent scaled(double factor) const;

  struct Impl;

 private:
  explicit VariableExponent(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend VariableExponent conjugateExponent(const VariableExponent& p);
  std::shared_ptr<const Impl> impl_;
};

// 1/p + 1/p' = 1, mapping 1 to infinity and infinity to 1; requires p >= 1.
VariableExponent conjugateExponent(const VariableExponent& p);

// phi_p(t): t^p, or for p = inf: 0 when t <= 1, inf otherwise.
double phiP(double p, double t);

// n (1/min{1,t} - 1)
double sigmaT(double t, int n);

// Nested low-discrepancy sample points in the box (van der Corput / Halton).
std::vector<Point> regularitySamplePoints(int dim, double boxRadius, std::size_t budget);

struct LogHolderConstants {
  double cLocal = 0;
  std::optional<double> cInfinity;  // empty when the limit at infinity is undefined
  double combined() const { return cInfinity ? std::max(cLocal, *cInfinity) : cLocal; }
};

// Sampled lower estimates for g = 1/p.
LogHolderConstants logHolderConstants(const VariableExponent& p, std::size_t sampleBudget);
// Same for an arbitrary real function g with optional limit at infinity.
LogHolderConstants logHolderConstantsOf(const std::function<double(const Point&)>& g, std::optional<double> gInfinity,
                                        int dim, double boxRadius, std::size_t sampleBudget);

// Declared analytic constant when available, otherwise the sampled estimate.
struct ResolvedConstant {
  double value = 0;
  bool sampled = false;
};
ResolvedConstant resolveLogHolder(const VariableExponent& p, std::size_t sampleBudget = 256);

// max{0, sup (1/p - 1/u) - r/p_inf}; OrderingError if p > u at a sample,
// DomainError if p has no limit at infinity.
double cInfinityPU(const VariableExponent& p, const VariableExponent& u, std::size_t sampleBudget, double r = 1.0);

}  // namespace vexspace
