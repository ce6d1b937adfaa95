#include "vexspace/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vexspace/errors.hpp"

namespace vexspace {

struct VariableExponent::Impl {
  ExponentKind kind = ExponentKind::constant;
  std::string name;
  std::vector<double> params;
  std::vector<double> table;
  std::size_t tableK = 0;
  int dim = 1;
  double radius = 8.0;
  std::function<double(const Point&)> raw;
  double min = 0, max = 0;
  std::optional<double> limit;
  std::optional<double> declared;
};

namespace {

double capped(double v) { return v > kExponentCap ? kInfinity : v; }

void checkBox(int dim, double radius) {
  if (dim != 1 && dim != 2) throw DomainError("exponent dimension must be 1 or 2");
  if (!(radius > 0)) throw DomainError("exponent box radius must be positive");
}

// Bound for c/log(e+1/d) >= min(L d, osc): sup_d min(L d, osc) log(e + 1/d).
double lipschitzLogHolder(double lipschitz, double oscillation) {
  if (oscillation <= 0 || lipschitz <= 0) return 0;
  return oscillation * std::log(M_E + lipschitz / oscillation);
}

std::shared_ptr<VariableExponent::Impl> makeImpl(ExponentKind kind, int dim, double radius) {
  checkBox(dim, radius);
  auto impl = std::make_shared<VariableExponent::Impl>();
  impl->kind = kind;
  impl->dim = dim;
  impl->radius = radius;
  return impl;
}

void denseExtremes(VariableExponent::Impl& impl) {
  std::size_t n = impl.dim == 1 ? 8193 : 257;
  double lo = kInfinity, hi = 0;
  auto visit = [&](const Point& x) {
    double v = capped(impl.raw(x));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (std::size_t i = 0; i < n; ++i) {
    double x = -impl.radius + 2 * impl.radius * static_cast<double>(i) / static_cast<double>(n - 1);
    if (impl.dim == 1) {
      visit({x, 0});
    } else {
      for (std::size_t k = 0; k < n; ++k)
        visit({x, -impl.radius + 2 * impl.radius * static_cast<double>(k) / static_cast<double>(n - 1)});
    }
  }
  impl.min = lo;
  impl.max = hi;
}

void requirePositive(const VariableExponent::Impl& impl) {
  if (!(impl.min > 0) || std::isnan(impl.min)) throw DomainError("exponent must be bounded away from zero");
}

}  // namespace

VariableExponent VariableExponent::constant(double value, int dim, double boxRadius) {
  if (!(value > 0)) throw DomainError("exponent must be positive");
  auto impl = makeImpl(ExponentKind::constant, dim, boxRadius);
  double v = capped(value);
  impl->name = "constant";
  impl->params = {value};
  impl->raw = [v](const Point&) { return v; };
  impl->min = impl->max = v;
  impl->limit = v;
  impl->declared = 0.0;
  return VariableExponent(impl);
}

VariableExponent VariableExponent::logSmooth(double a, double b, int dim, double boxRadius) {
  auto impl = makeImpl(ExponentKind::logSmooth, dim, boxRadius);
  impl->name = "log-smooth";
  impl->params = {a, b};
  double radius = boxRadius;
  impl->raw = [a, b, radius](const Point& x) { return a + b * (1 + std::cos(M_PI * x[0] / radius)) / 2; };
  impl->min = capped(a + std::min(0.0, b));
  impl->max = capped(a + std::max(0.0, b));
  requirePositive(*impl);
  impl->limit = capped(a);
  // |d(1/p)/dx| <= |p'| / min p^2 with |p'| <= |b| pi / (2R).
  double lip = std::abs(b) * M_PI / (2 * radius) / (impl->min * impl->min);
  double osc = 1 / impl->min - 1 / impl->max;
  double local = lipschitzLogHolder(lip, osc);
  double rmax = radius * (dim == 2 ? std::sqrt(2.0) : 1.0);
  double decay = osc * std::log(M_E + rmax);
  impl->declared = std::max(local, decay);
  return VariableExponent(impl);
}

VariableExponent VariableExponent::canonical(double a, double b, int dim, double boxRadius) {
  auto impl = makeImpl(ExponentKind::canonical, dim, boxRadius);
  impl->name = "canonical";
  impl->params = {a, b};
  impl->raw = [a, b, dim](const Point& x) { return a + b / std::log(M_E + norm(x, dim)); };
  double rmax = boxRadius * (dim == 2 ? std::sqrt(2.0) : 1.0);
  double v0 = a + b, v1 = a + b / std::log(M_E + rmax);
  impl->min = capped(std::min(v0, v1));
  impl->max = capped(std::max(v0, v1));
  requirePositive(*impl);
  impl->limit = capped(a);
  // 1/p(x) - 1/a = -(b / log(e+|x|)) / (a p(x)), so the decay constant is |b| / (a min p).
  double decay = std::abs(b) / (a * impl->min);
  // |d/drho (b / log(e+rho))| <= |b| / e.
  double lip = std::abs(b) / M_E / (impl->min * impl->min);
  double osc = 1 / impl->min - 1 / impl->max;
  impl->declared = std::max(decay, lipschitzLogHolder(lip, osc));
  return VariableExponent(impl);
}

VariableExponent VariableExponent::table(std::vector<double> values, int dim, double boxRadius) {
  auto impl = makeImpl(ExponentKind::table, dim, boxRadius);
  if (values.empty()) throw DomainError("exponent table is empty");
  std::size_t k = values.size();
  if (dim == 2) {
    k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(values.size()))));
    if (k * k != values.size()) throw DomainError("2-D exponent table must be square");
  }
  impl->name = "table";
  impl->tableK = k;
  for (double& v : values) {
    if (!(v > 0)) throw DomainError("exponent table values must be positive");
    v = capped(v);
  }
  impl->table = values;
  double radius = boxRadius;
  auto tab = std::make_shared<std::vector<double>>(std::move(values));
  impl->raw = [tab, k, dim, radius](const Point& x) {
    double step = 2 * radius / static_cast<double>(k);
    auto axis = [&](double v) {
      long i = std::lround((v + radius) / step);
      long kk = static_cast<long>(k);
      return static_cast<std::size_t>(((i % kk) + kk) % kk);
    };
    if (dim == 1) return (*tab)[axis(x[0])];
    return (*tab)[axis(x[1]) * k + axis(x[0])];
  };
  impl->min = *std::min_element(tab->begin(), tab->end());
  impl->max = *std::max_element(tab->begin(), tab->end());
  // Node 0 sits at the corner (-R,...,-R), the largest-radius node of the lattice.
  impl->limit = (*tab)[0];
  return VariableExponent(impl);
}

VariableExponent VariableExponent::step(double left, double right, double at, int dim, double boxRadius) {
  if (!(left > 0) || !(right > 0)) throw DomainError("exponent must be positive");
  auto impl = makeImpl(ExponentKind::step, dim, boxRadius);
  impl->name = "step";
  impl->params = {left, right, at};
  double l = capped(left), r = capped(right);
  impl->raw = [l, r, at](const Point& x) { return x[0] < at ? l : r; };
  impl->min = std::min(l, r);
  impl->max = std::max(l, r);
  impl->limit = std::nullopt;
  return VariableExponent(impl);
}

VariableExponent VariableExponent::closedForm(std::string name, std::function<double(const Point&)> fn, int dim,
                                              double boxRadius, std::optional<double> limitAtInfinity,
                                              std::optional<double> declaredLogHolder) {
  auto impl = makeImpl(ExponentKind::closedForm, dim, boxRadius);
  impl->name = std::move(name);
  impl->raw = std::move(fn);
  denseExtremes(*impl);
  requirePositive(*impl);
  if (limitAtInfinity) impl->limit = capped(*limitAtInfinity);
  impl->declared = declaredLogHolder;
  return VariableExponent(impl);
}

double VariableExponent::operator()(const Point& x) const {
  const Impl& impl = *impl_;
  double slack = impl.radius * (1 + 1e-12);
  for (int d = 0; d < impl.dim; ++d)
    if (!(std::abs(x[d]) <= slack)) throw DomainError("point outside the exponent box");
  return capped(impl.raw(x));
}

std::vector<double> VariableExponent::sample(const Grid& grid) const {
  if (grid.dim() != impl_->dim) throw DomainError("exponent and grid dimensions differ");
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(grid.node(i));
  return out;
}

double VariableExponent::min() const { return impl_->min; }
double VariableExponent::max() const { return impl_->max; }
std::optional<double> VariableExponent::limitAtInfinity() const { return impl_->limit; }
std::optional<double> VariableExponent::declaredLogHolder() const { return impl_->declared; }
ExponentKind VariableExponent::kind() const { return impl_->kind; }
bool VariableExponent::isConstant() const { return impl_->min == impl_->max; }
int VariableExponent::dim() const { return impl_->dim; }
double VariableExponent::boxRadius() const { return impl_->radius; }

std::string VariableExponent::describe() const {
  std::string out = impl_->name;
  if (!impl_->params.empty()) {
    out += "(";
    for (std::size_t i = 0; i < impl_->params.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%s%.6g", i ? "," : "", impl_->params[i]);
      out += buf;
    }
    out += ")";
  }
  return out;
}

VariableExponent VariableExponent::scaled(double factor) const {
  if (!(factor > 0) || !std::isfinite(factor)) throw DomainError("scale factor must be positive");
  auto impl = std::make_shared<Impl>(*impl_);
  auto parent = impl_;
  impl->kind = ExponentKind::closedForm;
  impl->name = impl_->name + "*" + std::to_string(factor);
  impl->raw = [parent, factor](const Point& x) { return capped(parent->raw(x)) * factor; };
  impl->min = capped(impl_->min * factor);
  impl->max = capped(impl_->max * factor);
  if (impl_->limit) impl->limit = capped(*impl_->limit * factor);
  if (impl_->declared) impl->declared = *impl_->declared / factor;
  impl->params.clear();
  impl->table.clear();
  return VariableExponent(impl);
}

nlohmann::json VariableExponent::toJson() const {
  const Impl& impl = *impl_;
  switch (impl.kind) {
    case ExponentKind::constant: return {{"kind", "constant"}, {"value", impl.params[0]}};
    case ExponentKind::logSmooth: return {{"kind", "log-smooth"}, {"a", impl.params[0]}, {"b", impl.params[1]}};
    case ExponentKind::canonical: return {{"kind", "canonical"}, {"a", impl.params[0]}, {"b", impl.params[1]}};
    case ExponentKind::table: return {{"kind", "table"}, {"values", impl.table}};
    case ExponentKind::step:
      return {{"kind", "step"}, {"left", impl.params[0]}, {"right", impl.params[1]}, {"at", impl.params[2]}};
    case ExponentKind::closedForm: return {{"kind", "closed-form"}, {"name", impl.name}};
  }
  return {};
}

namespace {

double requireNumber(const nlohmann::json& doc, const char* field, const std::string& where) {
  if (!doc.contains(field) || !doc[field].is_number())
    throw ParseError("field '" + where + "." + field + "': expected a number");
  return doc[field].get<double>();
}

}  // namespace

VariableExponent VariableExponent::fromJson(const nlohmann::json& doc, int dim, double boxRadius) {
  if (doc.is_number()) return constant(doc.get<double>(), dim, boxRadius);
  if (doc.is_string() && (doc == "inf" || doc == "infinity")) return constant(kInfinity, dim, boxRadius);
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw ParseError("exponent: expected an object with a string field 'kind'");
  std::string kind = doc["kind"];
  try {
    if (kind == "constant") return constant(requireNumber(doc, "value", kind), dim, boxRadius);
    if (kind == "log-smooth")
      return logSmooth(requireNumber(doc, "a", kind), requireNumber(doc, "b", kind), dim, boxRadius);
    if (kind == "canonical")
      return canonical(requireNumber(doc, "a", kind), requireNumber(doc, "b", kind), dim, boxRadius);
    if (kind == "step")
      return step(requireNumber(doc, "left", kind), requireNumber(doc, "right", kind), doc.value("at", 0.0), dim,
                  boxRadius);
    if (kind == "table") {
      if (!doc.contains("values") || !doc["values"].is_array()) throw ParseError("field 'table.values': expected an array");
      std::vector<double> values;
      for (const auto& v : doc["values"]) {
        if (!v.is_number()) throw ParseError("field 'table.values': expected numbers");
        values.push_back(v.get<double>());
      }
      return table(std::move(values), dim, boxRadius);
    }
  } catch (const DomainError& e) {
    throw ParseError(std::string("exponent '") + kind + "': " + e.what());
  }
  throw ParseError("exponent: unknown kind '" + kind + "'");
}

VariableExponent conjugateExponent(const VariableExponent& p) {
  if (p.min() < 1) throw DomainError("conjugate exponent needs p >= 1");
  auto conj = [](double v) {
    if (v == kInfinity) return 1.0;
    if (v == 1.0) return kInfinity;
    return capped(v / (v - 1));
  };
  auto impl = std::make_shared<VariableExponent::Impl>(*p.impl_);
  auto parent = p.impl_;
  impl->kind = ExponentKind::closedForm;
  impl->name = "conjugate(" + p.describe() + ")";
  impl->raw = [parent, conj](const Point& x) { return conj(capped(parent->raw(x))); };
  impl->min = conj(p.max());
  impl->max = conj(p.min());
  if (p.limitAtInfinity()) impl->limit = conj(*p.limitAtInfinity());
  impl->params.clear();
  impl->table.clear();
  return VariableExponent(impl);
}

double phiP(double p, double t) {
  if (p == kInfinity) return t <= 1 ? 0.0 : kInfinity;
  if (t == 0) return 0;
  return std::pow(t, p);
}

double sigmaT(double t, int n) {
  if (!(t > 0)) throw DomainError("sigma_t needs t > 0");
  return n * (1 / std::min(1.0, t) - 1);
}

namespace {

double radicalInverse(std::size_t k, unsigned base) {
  double inv = 1.0 / base, f = inv, out = 0;
  while (k > 0) {
    out += static_cast<double>(k % base) * f;
    k /= base;
    f *= inv;
  }
  return out;
}

double inverseOrZero(double v) { return v == kInfinity ? 0.0 : 1.0 / v; }

}  // namespace

std::vector<Point> regularitySamplePoints(int dim, double boxRadius, std::size_t budget) {
  std::vector<Point> pts(budget);
  for (std::size_t k = 0; k < budget; ++k) {
    double a = -boxRadius + 2 * boxRadius * radicalInverse(k, 2);
    double b = dim == 2 ? -boxRadius + 2 * boxRadius * radicalInverse(k, 3) : 0.0;
    pts[k] = {a, b};
  }
  return pts;
}

LogHolderConstants logHolderConstantsOf(const std::function<double(const Point&)>& g, std::optional<double> gInfinity,
                                        int dim, double boxRadius, std::size_t sampleBudget) {
  if (sampleBudget < 2) throw DomainError("sample budget must be at least 2");
  std::vector<Point> pts = regularitySamplePoints(dim, boxRadius, sampleBudget);
  std::vector<double> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = g(pts[i]);
  LogHolderConstants out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = i + 1; k < pts.size(); ++k) {
      double d = distance(pts[i], pts[k], dim);
      if (d == 0) continue;
      out.cLocal = std::max(out.cLocal, std::abs(vals[i] - vals[k]) * std::log(M_E + 1 / d));
    }
  }
  if (gInfinity) {
    double c = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      c = std::max(c, std::abs(vals[i] - *gInfinity) * std::log(M_E + norm(pts[i], dim)));
    out.cInfinity = c;
  }
  return out;
}

LogHolderConstants logHolderConstants(const VariableExponent& p, std::size_t sampleBudget) {
  std::optional<double> gInf;
  if (p.limitAtInfinity()) gInf = inverseOrZero(*p.limitAtInfinity());
  return logHolderConstantsOf([&](const Point& x) { return inverseOrZero(p(x)); }, gInf, p.dim(), p.boxRadius(),
                              sampleBudget);
}

ResolvedConstant resolveLogHolder(const VariableExponent& p, std::size_t sampleBudget) {
  if (p.declaredLogHolder()) return {*p.declaredLogHolder(), false};
  return {logHolderConstants(p, sampleBudget).combined(), true};
}

double cInfinityPU(const VariableExponent& p, const VariableExponent& u, std::size_t sampleBudget, double r) {
  if (!p.limitAtInfinity()) throw DomainError("limit at infinity of p is undefined");
  std::vector<Point> pts = regularitySamplePoints(p.dim(), p.boxRadius(), sampleBudget);
  double sup = -kInfinity;
  for (const Point& x : pts) {
    double pv = p(x), uv = u(x);
    if (pv > uv) throw OrderingError("p(x) > u(x) at a sample point");
    sup = std::max(sup, inverseOrZero(pv) - inverseOrZero(uv));
  }
  return std::max(0.0, sup - r * inverseOrZero(*p.limitAtInfinity()));
}

}  // namespace vexspace
