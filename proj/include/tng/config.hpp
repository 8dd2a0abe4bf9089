// Copyright 2026 The TNG Authors.
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

#ifndef TNG_CONFIG_HPP
#define TNG_CONFIG_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "tng/sim.hpp"

namespace tng {

inline constexpr const char* kArtifactName = "tng";
inline constexpr const char* kArtifactVersion = "0.1.0";

// Parses and validates a config document. Unknown keys are rejected with a
// ConfigError naming the offending path.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

// Fully resolved document (defaults filled in); parsing it again yields an
// identical config.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Manifest written next to every trace: artifact identity plus the
// resolved config.
nlohmann::json run_manifest(const ExperimentConfig& cfg);

// One sweep axis: a dotted config path and the values it takes.
struct SweepAxis {
  std::string path;
  std::vector<nlohmann::json> values;
};

// Reads the optional "grid" block; empty when absent.
std::vector<SweepAxis> parse_grid(const nlohmann::json& doc);

// Sets doc[path] for a dotted path like "problem.c_sk".
void set_by_path(nlohmann::json& doc, const std::string& path,
                 const nlohmann::json& value);

}  // namespace tng

#endif  // TNG_CONFIG_HPP
