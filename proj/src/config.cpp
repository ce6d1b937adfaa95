#include "vexspace/config.hpp"

#include <fstream>
#include <sstream>

#include "vexspace/besov.hpp"
#include "vexspace/errors.hpp"

namespace vexspace {

int Config::besovLevels() const { return levels >= 0 ? levels : maxLevelForGrid(grid); }

WeightSequence Config::weightSequence(int levelCount) const {
  std::string kind = weights.value("kind", "unit");
  if (kind == "unit") return WeightSequence::unit(levelCount, grid.dim(), grid.boxRadius());
  if (kind == "constant")
    return WeightSequence::constantSmoothness(weights.at("s").get<double>(), levelCount, grid.dim(), grid.boxRadius());
  VariableExponent s = VariableExponent::fromJson(weights.at("s"), grid.dim(), grid.boxRadius());
  return WeightSequence::variableSmoothness(s, levelCount);
}

BallSearchSet Config::ballSearchSet() const { return BallSearchSet::standard(grid, centerStride, midpoints); }

namespace {

std::string joinPath(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError("field '" + path + "': " + msg);
}

double number(const nlohmann::json& obj, const std::string& key, const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  const nlohmann::json& v = obj.at(key);
  if (!v.is_number()) fail(joinPath(path, key), "expected a number");
  return v.get<double>();
}

VariableExponent exponent(const nlohmann::json& doc, const std::string& key, const Grid& grid,
                          const VariableExponent& fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return VariableExponent::fromJson(doc.at(key), grid.dim(), grid.boxRadius());
  } catch (const ParseError& e) {
    fail(key, e.what());
  } catch (const DomainError& e) {
    fail(key, e.what());
  }
}

}  // namespace

Config defaultConfig() {
  Config c;
  c.p = VariableExponent::logSmooth(1.5, 1.0);
  c.q = VariableExponent::canonical(1.2, 0.8);
  c.u = VariableExponent::constant(4.0);
  c.weights = {{"kind", "constant"}, {"s", 0.5}};
  return c;
}

Config parseConfig(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("config: top level must be an object");
  static const char* known[] = {"grid", "p", "q", "u", "weights", "levels", "bisection", "balls", "trials"};
  for (const auto& item : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) fail(item.key(), "unknown field");
  }
  Config c = defaultConfig();
  if (doc.contains("grid")) {
    const nlohmann::json& g = doc.at("grid");
    if (!g.is_object()) fail("grid", "expected an object");
    double dim = number(g, "dim", "grid", 1);
    double R = number(g, "R", "grid", 8);
    double N = number(g, "N", "grid", 512);
    if (dim != 1 && dim != 2) fail("grid.dim", "must be 1 or 2");
    if (!(R > 0)) fail("grid.R", "must be positive");
    try {
      c.grid = Grid(static_cast<int>(dim), R, static_cast<std::size_t>(N));
    } catch (const DomainError& e) {
      fail("grid.N", e.what());
    }
    // Exponent defaults follow the grid's box.
    c.p = VariableExponent::logSmooth(1.5, 1.0, c.grid.dim(), R);
    c.q = VariableExponent::canonical(1.2, 0.8, c.grid.dim(), R);
    c.u = VariableExponent::constant(4.0, c.grid.dim(), R);
  }
  c.p = exponent(doc, "p", c.grid, c.p);
  c.q = exponent(doc, "q", c.grid, c.q);
  c.u = exponent(doc, "u", c.grid, c.u);
  if (doc.contains("weights")) {
    const nlohmann::json& w = doc.at("weights");
    if (!w.is_object()) fail("weights", "expected an object");
    std::string kind = w.value("kind", "unit");
    if (kind == "constant") {
      if (!w.contains("s") || !w.at("s").is_number()) fail("weights.s", "expected a number");
    } else if (kind == "variable") {
      if (!w.contains("s")) fail("weights.s", "missing");
      try {
        VariableExponent::fromJson(w.at("s"), c.grid.dim(), c.grid.boxRadius());
      } catch (const std::exception& e) {
        fail("weights.s", e.what());
      }
    } else if (kind != "unit") {
      fail("weights.kind", "expected unit, constant or variable");
    }
    c.weights = w;
  }
  if (doc.contains("levels")) {
    const nlohmann::json& l = doc.at("levels");
    if (!l.is_number_integer() || l.get<int>() < 0) fail("levels", "expected a nonnegative integer");
    c.levels = l.get<int>();
  }
  if (doc.contains("bisection")) {
    const nlohmann::json& b = doc.at("bisection");
    if (!b.is_object()) fail("bisection", "expected an object");
    c.bisection.relativeTolerance = number(b, "tolerance", "bisection", c.bisection.relativeTolerance);
    c.bisection.maxIterations = static_cast<int>(number(b, "maxIterations", "bisection", c.bisection.maxIterations));
    c.bisection.bracketGrowthFactor = number(b, "growth", "bisection", c.bisection.bracketGrowthFactor);
    try {
      c.bisection.validate();
    } catch (const std::exception& e) {
      fail("bisection", e.what());
    }
  }
  if (doc.contains("balls")) {
    const nlohmann::json& b = doc.at("balls");
    if (!b.is_object()) fail("balls", "expected an object");
    double stride = number(b, "stride", "balls", 0);
    if (stride < 0) fail("balls.stride", "must be nonnegative");
    c.centerStride = static_cast<std::size_t>(stride);
    if (b.contains("midpoints")) {
      if (!b.at("midpoints").is_boolean()) fail("balls.midpoints", "expected a boolean");
      c.midpoints = b.at("midpoints").get<bool>();
    }
  }
  if (doc.contains("trials")) {
    double t = number(doc, "trials", "", 1.0);
    if (!(t > 0)) fail("trials", "must be positive");
    c.trialScale = t;
  }
  return c;
}

Config parseConfigText(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("config: line " + std::to_string(line) + ", column " + std::to_string(col) + ": syntax error");
  }
  return parseConfig(doc);
}

Config loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parseConfigText(buf.str());
}

}  // namespace vexspace
