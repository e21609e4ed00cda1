// Copyright (c) 2026 The fsolink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "fsolink/sim.hpp"

namespace fsolink {

/// Parses and validates a scenario config JSON file. Unknown keys are errors
/// (they usually mean a mistyped physics parameter); every failure names the
/// offending key path. Relative trace/spectrum paths resolve against the
/// config file's directory. A `spectrum_file` entry is integrated over the
/// receiver's optical filter band into i_b_w_per_m2 at load time.
ScenarioConfig load_config(const std::string& path,
                           std::optional<std::uint64_t> seed_override = {});

ScenarioConfig config_from_json(const nlohmann::json& j,
                                const std::string& base_dir);

/// Canonical resolved form: every field explicit, keys sorted, shortest
/// round-trip numbers. Byte-stable across machines for identical configs.
nlohmann::json resolved_config_json(const ScenarioConfig& cfg);

/// FNV-1a 64-bit digest (hex) of the canonical resolved config.
std::string config_hash(const ScenarioConfig& cfg);

nlohmann::json ar_model_to_json(const ARModel& model);
ARModel ar_model_from_json(const nlohmann::json& j, const std::string& key);

/// Built-in scenario defaults (the shipped data/default_config.json mirrors
/// these): 1550 nm / 1 mm waist beam, 1 mm^2 receiver, 1 GHz bandwidth,
/// distances 5:5:100 m, powers 1 and 10 mW, dynamic compensation at 20 ms
/// with a 16-bit quantizer, and the default vertical stroke model on both
/// vehicles.
ScenarioConfig default_config();

}  // namespace fsolink
