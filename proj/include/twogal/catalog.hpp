#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twogal/criterion.hpp"

namespace twogal {

// Knobs every builder accepts.  Zero keeps the scenario default.
struct BuildOpts {
  uint32_t sample_degree = 0;  // test-set degree override
  uint32_t cap_bits = 0;       // ambient field size bound, log2
};

// Generator data for the externally-supplied tower: each row holds the
// (a, b, c) parameters of one displayed unipotent map, as canonical element
// indices of the coefficient field.
struct ReeGeneratorConfig {
  std::vector<std::array<uint32_t, 3>> g1;
  std::vector<std::array<uint32_t, 3>> g2;
};
ReeGeneratorConfig load_ree_generators(const std::string& path);

struct ScenarioInfo {
  std::string name;
  std::string params;    // flags with their constraints
  std::string degree;    // plane-model degree formula
  std::string controls;  // available perturbations
};
const std::vector<ScenarioInfo>& catalog_entries();

// The five builders.  `control` names a perturbation that must flip its
// target condition to Fail: "b".."f" on the quartic cover scenario, "c"
// (a moved second place) on the other desk scenarios.
ScenarioCtx make_gk(uint32_t q, uint32_t h_order, const BuildOpts& opts = {},
                    const std::string& control = "");
ScenarioCtx make_hermitian(uint32_t q, uint32_t s, const BuildOpts& opts = {},
                           const std::string& control = "", bool outer = false);
ScenarioCtx make_suzuki(uint32_t q0, uint32_t h_order, const BuildOpts& opts = {},
                        const std::string& control = "");
ScenarioCtx make_ree(uint32_t q0, uint32_t h_order,
                     const std::optional<ReeGeneratorConfig>& gens,
                     const BuildOpts& opts = {}, const std::string& control = "");
ScenarioCtx make_fermat(uint32_t p, const BuildOpts& opts = {},
                        const std::string& control = "");

// By-name construction from parsed flags; also the scenario-file schema.
struct ScenarioRequest {
  std::string name;
  std::optional<uint32_t> q, q0, p, s, h;
  bool outer = false;
  std::string control;
  std::optional<std::string> generators_path;
  BuildOpts opts;
};
ScenarioCtx make_scenario(const ScenarioRequest& req);
ScenarioRequest load_scenario_file(const std::string& path);

}  // namespace twogal
