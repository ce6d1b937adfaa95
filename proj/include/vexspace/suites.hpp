#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vexspace/config.hpp"
#include "vexspace/report.hpp"

namespace vexspace {

// identities, semimodular-axioms, convolution, peetre, atoms, embeddings, all
const std::vector<std::string>& suiteNames();

// Runs the named suite; results come back in canonical order. wall_ms is 0
// unless timings is set. Throws UsageError for an unknown suite name.
std::vector<SuiteResult> runSuite(const std::string& name, const Config& config, std::uint64_t seed,
                                  bool timings = false);

}  // namespace vexspace
