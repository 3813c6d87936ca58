#pragma once

#include <json.hpp>

#include "twogal/criterion.hpp"

namespace twogal {

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;  // 0 all declared checks pass, 1 at least one failed
};

// Runs the declared check batteries for the scenario in order and assembles
// the report. The equivalence battery and the model check only run once the
// base conditions hold, mirroring the logical dependency between them.
RunResult run_scenario(const ScenarioCtx& S, uint64_t seed, bool timing);

}  // namespace twogal
