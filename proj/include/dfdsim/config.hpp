// SPDX-License-Identifier: Apache-2.0
//
// dfdsim: system-level simulator for distributed FD-MIMO downlink networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef dfdsim_config_H
#define dfdsim_config_H

#include <string>
#include <vector>

#include "dfdsim/experiments.hpp"

namespace dfdsim
{

// Named scenario presets, one per (scenario kind x ISD) evaluation cell:
// fd_mimo uses UMi/10m/44dBm at ISD 200 and UMa/25m/49dBm at ISD 500;
// circular and distributed kinds use UMi at 10 m height for both ISDs,
// with 48.8/53.8 dBm for the 1-sector deployment (three sectors' power
// combined into one).
std::vector<std::string> preset_names();
bool is_preset(const std::string &name);
ScenarioConfig preset_config(const std::string &name);

// Parses a JSON config file with flat keys mirroring ScenarioConfig fields.
// A "preset" key expands a named preset first; remaining keys override its
// fields. Unknown keys are rejected. Warnings (e.g. an unusual UE load) are
// appended to `warnings` when given.
ScenarioConfig parse_config(const std::string &path, std::vector<std::string> *warnings = nullptr);

// Same, from a JSON string (used by tests and for round-trips)
ScenarioConfig parse_config_text(const std::string &text, std::vector<std::string> *warnings = nullptr);

// Fully resolved config as a JSON string; parse_config_text(emit_config(c))
// reproduces c exactly
std::string emit_config(const ScenarioConfig &config);

} // namespace dfdsim

#endif
