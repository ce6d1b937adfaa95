#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "vexspace/balls.hpp"
#include "vexspace/exponent.hpp"
#include "vexspace/grid.hpp"
#include "vexspace/root_find.hpp"
#include "vexspace/weights.hpp"

namespace vexspace {

// Configuration document:
// {
//   "grid": {"dim": 1, "R": 8, "N": 512},
//   "p": <exponent>, "q": <exponent>, "u": <exponent>,
//   "weights": {"kind": "unit"} | {"kind": "constant", "s": 0.5} | {"kind": "variable", "s": <exponent>},
//   "levels": J,                       (Besov levels; default: largest allowed by the grid)
//   "bisection": {"tolerance": 1e-10, "maxIterations": 200, "growth": 2},
//   "balls": {"stride": 0, "midpoints": true},
//   "trials": 1.0                      (multiplier on suite trial counts)
// }
// Exponents use the exponent JSON forms; a bare number is a constant and "inf" is infinity.
struct Config {
  Grid grid{1, 8.0, 512};
  VariableExponent p = VariableExponent::constant(2.0);
  VariableExponent q = VariableExponent::constant(2.0);
  VariableExponent u = VariableExponent::constant(2.0);
  nlohmann::json weights = {{"kind", "unit"}};
  int levels = -1;
  BisectionConfig bisection;
  std::size_t centerStride = 0;
  bool midpoints = true;
  double trialScale = 1.0;

  int besovLevels() const;
  WeightSequence weightSequence(int levelCount) const;
  BallSearchSet ballSearchSet() const;
};

// ParseError messages name the offending field ("field 'grid.N': ...").
Config parseConfig(const nlohmann::json& doc);
// ParseError messages carry the line and column for syntax errors.
Config parseConfigText(const std::string& text);
Config loadConfig(const std::string& path);
Config defaultConfig();

}  // namespace vexspace
