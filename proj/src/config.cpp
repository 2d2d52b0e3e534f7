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

#include "dfdsim/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dfdsim
{

namespace
{

using nlohmann::json;

ScenarioConfig make_preset(ScenarioKind kind, double isd)
{
    ScenarioConfig c;
    c.scenario_kind = kind;
    c.isd_m = isd;
    if (kind == ScenarioKind::fd_mimo)
    {
        c.channel_model = isd >= 500.0 ? ChannelModel::uma_los : ChannelModel::umi_los;
        c.bs_height_m = isd >= 500.0 ? 25.0 : 10.0;
        c.sector_power_dbm = isd >= 500.0 ? 49.0 : 44.0;
        c.downtilt_deg = fd_mimo_default_downtilt_deg;
    }
    else
    {
        c.channel_model = ChannelModel::umi_los;
        c.bs_height_m = 10.0;
        if (kind == ScenarioKind::dfd_1sector)
            c.sector_power_dbm = isd >= 500.0 ? 53.8 : 48.8;
        else
            c.sector_power_dbm = isd >= 500.0 ? 49.0 : 44.0;
    }
    return c;
}

const std::vector<std::pair<std::string, ScenarioConfig>> &preset_table()
{
    static const std::vector<std::pair<std::string, ScenarioConfig>> table = [] {
        std::vector<std::pair<std::string, ScenarioConfig>> t;
        for (ScenarioKind kind : {ScenarioKind::fd_mimo, ScenarioKind::circular_arrays,
                                  ScenarioKind::dfd_3sector, ScenarioKind::dfd_1sector})
            for (double isd : {200.0, 500.0})
                t.emplace_back(to_string(kind) + "_isd" + std::to_string(static_cast<int>(isd)),
                               make_preset(kind, isd));
        return t;
    }();
    return table;
}

double get_number(const json &j, const std::string &key)
{
    if (!j.is_number())
        throw std::invalid_argument("config: value for key '" + key + "' must be a number");
    return j.get<double>();
}

int get_int(const json &j, const std::string &key)
{
    if (!j.is_number_integer())
        throw std::invalid_argument("config: value for key '" + key + "' must be an integer");
    return j.get<int>();
}

bool get_bool(const json &j, const std::string &key)
{
    if (!j.is_boolean())
        throw std::invalid_argument("config: value for key '" + key + "' must be a boolean");
    return j.get<bool>();
}

std::string get_string(const json &j, const std::string &key)
{
    if (!j.is_string())
        throw std::invalid_argument("config: value for key '" + key + "' must be a string");
    return j.get<std::string>();
}

ScenarioConfig from_json(const json &root, std::vector<std::string> *warnings)
{
    if (!root.is_object())
        throw std::invalid_argument("config: top-level JSON value must be an object");

    ScenarioConfig c;
    if (root.contains("preset"))
        c = preset_config(get_string(root.at("preset"), "preset"));

    for (const auto &[key, value] : root.items())
    {
        if (key == "preset")
            continue;
        else if (key == "scenario_kind")
            c.scenario_kind = scenario_kind_from_string(get_string(value, key));
        else if (key == "isd_m")
            c.isd_m = get_number(value, key);
        else if (key == "channel_model")
            c.channel_model = channel_model_from_string(get_string(value, key));
        else if (key == "bs_height_m")
            c.bs_height_m = get_number(value, key);
        else if (key == "sector_power_dbm")
            c.sector_power_dbm = get_number(value, key);
        else if (key == "carrier_ghz")
            c.carrier_ghz = get_number(value, key);
        else if (key == "bandwidth_hz")
            c.bandwidth_hz = get_number(value, key);
        else if (key == "noise_figure_db")
            c.noise_figure_db = get_number(value, key);
        else if (key == "ue_height_m")
            c.ue_height_m = get_number(value, key);
        else if (key == "ues_per_area")
            c.ues_per_area = get_int(value, key);
        else if (key == "drops")
            c.drops = get_int(value, key);
        else if (key == "master_seed")
        {
            if (!value.is_number_integer() && !value.is_number_unsigned())
                throw std::invalid_argument("config: value for key 'master_seed' must be an integer");
            if (value.is_number_integer() && !value.is_number_unsigned() && value.get<std::int64_t>() < 0)
                throw std::invalid_argument("config: value for key 'master_seed' must be >= 0");
            c.master_seed = value.get<std::uint64_t>();
        }
        else if (key == "wraparound")
            c.wraparound = get_bool(value, key);
        else if (key == "isolated")
            c.isolated = get_bool(value, key);
        else if (key == "downtilt_deg")
            c.downtilt_deg = get_number(value, key);
        else if (key == "center_site_only")
            c.center_site_only = get_bool(value, key);
        else if (key == "freeze_antennas")
            c.freeze_antennas = get_bool(value, key);
        else if (key == "slnr_interference_aware")
            c.slnr_interference_aware = get_bool(value, key);
        else if (key == "max_spectral_eff_bps_hz")
            c.max_spectral_eff_bps_hz = get_number(value, key);
        else if (key == "threads")
            c.threads = get_int(value, key);
        else if (key == "min_pairwise_distance_m")
            c.constraints.min_pairwise_distance_m = get_number(value, key);
        else if (key == "boundary_margin_m")
            c.constraints.boundary_margin_m = get_number(value, key);
        else if (key == "exclusion_radius_m")
            c.constraints.exclusion_radius_m = get_number(value, key);
        else if (key == "max_attempts")
            c.constraints.max_attempts = get_int(value, key);
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    c.validate();

    if (warnings)
    {
        const int u = c.ues_per_area;
        if (u != 8 && u != 16 && u != 24 && u != 32)
            warnings->push_back("ues_per_area = " + std::to_string(u) +
                                " is outside the evaluated grid {8, 16, 24, 32}");
    }
    return c;
}

} // namespace

std::vector<std::string> preset_names()
{
    std::vector<std::string> names;
    for (const auto &[name, cfg] : preset_table())
        names.push_back(name);
    return names;
}

bool is_preset(const std::string &name)
{
    for (const auto &[n, cfg] : preset_table())
        if (n == name)
            return true;
    return false;
}

ScenarioConfig preset_config(const std::string &name)
{
    for (const auto &[n, cfg] : preset_table())
        if (n == name)
            return cfg;
    throw std::invalid_argument("unknown preset '" + name + "'; see list-presets");
}

ScenarioConfig parse_config(const std::string &path, std::vector<std::string> *warnings)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), warnings);
}

ScenarioConfig parse_config_text(const std::string &text, std::vector<std::string> *warnings)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
    }
    return from_json(root, warnings);
}

std::string emit_config(const ScenarioConfig &c)
{
    json j;
    j["scenario_kind"] = to_string(c.scenario_kind);
    j["isd_m"] = c.isd_m;
    j["channel_model"] = to_string(c.channel_model);
    j["bs_height_m"] = c.bs_height_m;
    j["sector_power_dbm"] = c.sector_power_dbm;
    j["carrier_ghz"] = c.carrier_ghz;
    j["bandwidth_hz"] = c.bandwidth_hz;
    j["noise_figure_db"] = c.noise_figure_db;
    j["ue_height_m"] = c.ue_height_m;
    j["ues_per_area"] = c.ues_per_area;
    j["drops"] = c.drops;
    j["master_seed"] = c.master_seed;
    j["wraparound"] = c.wraparound;
    j["isolated"] = c.isolated;
    j["downtilt_deg"] = c.downtilt_deg;
    j["center_site_only"] = c.center_site_only;
    j["freeze_antennas"] = c.freeze_antennas;
    j["slnr_interference_aware"] = c.slnr_interference_aware;
    j["max_spectral_eff_bps_hz"] = c.max_spectral_eff_bps_hz;
    j["min_pairwise_distance_m"] = c.constraints.min_pairwise_distance_m;
    j["boundary_margin_m"] = c.constraints.boundary_margin_m;
    j["exclusion_radius_m"] = c.constraints.exclusion_radius_m;
    j["max_attempts"] = c.constraints.max_attempts;
    return j.dump(2) + "\n";
}

} // namespace dfdsim
