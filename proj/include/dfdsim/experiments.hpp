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

#ifndef dfdsim_experiments_H
#define dfdsim_experiments_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dfdsim/antenna.hpp"
#include "dfdsim/channel.hpp"
#include "dfdsim/layout.hpp"
#include "dfdsim/metrics.hpp"

namespace dfdsim
{

// Full declarative description of one evaluation scenario
struct ScenarioConfig
{
    ScenarioKind scenario_kind = ScenarioKind::fd_mimo;
    double isd_m = 200.0;
    ChannelModel channel_model = ChannelModel::umi_los;
    double bs_height_m = 10.0;
    double sector_power_dbm = 44.0;
    double carrier_ghz = 3.5;
    double bandwidth_hz = 20e6;
    double noise_figure_db = 9.0;
    double ue_height_m = 1.5;
    int ues_per_area = 24;
    int drops = 20;
    std::uint64_t master_seed = 1;
    bool wraparound = true;
    bool isolated = false;
    double downtilt_deg = 0.0;
    bool center_site_only = false;  // restrict statistics to the center site
    bool freeze_antennas = false;   // keep drop-0 antenna positions for all drops
    double max_spectral_eff_bps_hz = 0.0; // 0 disables the rate cap
    // Worker threads (0 = hardware concurrency). Execution detail only:
    // results do not depend on it, and it is not part of the persisted
    // scenario or of config equality.
    int threads = 0;
    // Regularize each UE's SLNR with noise plus the expected inter-sector
    // interference floor instead of thermal noise alone. At these cell
    // powers thermal-only regularization collapses to zero forcing.
    bool slnr_interference_aware = true;
    PlacementConstraints constraints;

    friend bool operator==(const ScenarioConfig &a, const ScenarioConfig &b)
    {
        return a.scenario_kind == b.scenario_kind && a.isd_m == b.isd_m &&
               a.channel_model == b.channel_model && a.bs_height_m == b.bs_height_m &&
               a.sector_power_dbm == b.sector_power_dbm && a.carrier_ghz == b.carrier_ghz &&
               a.bandwidth_hz == b.bandwidth_hz && a.noise_figure_db == b.noise_figure_db &&
               a.ue_height_m == b.ue_height_m && a.ues_per_area == b.ues_per_area &&
               a.drops == b.drops && a.master_seed == b.master_seed &&
               a.wraparound == b.wraparound && a.isolated == b.isolated &&
               a.downtilt_deg == b.downtilt_deg && a.center_site_only == b.center_site_only &&
               a.freeze_antennas == b.freeze_antennas &&
               a.max_spectral_eff_bps_hz == b.max_spectral_eff_bps_hz &&
               a.slnr_interference_aware == b.slnr_interference_aware &&
               a.constraints == b.constraints;
    }

    double wavelength() const { return wavelength_m(carrier_ghz); }
    double sector_power_w() const { return dbm_to_watts(sector_power_dbm); }
    double noise_w() const { return dbm_to_watts(noise_power_dbm(bandwidth_hz, noise_figure_db)); }

    ChannelModelParams channel_params() const
    {
        return {channel_model, carrier_ghz, 1.0, bs_height_m, ue_height_m};
    }

    DeploymentConfig deployment_config() const
    {
        DeploymentConfig d;
        d.bs_height_m = bs_height_m;
        d.wavelength_m = wavelength();
        d.downtilt_deg = downtilt_deg;
        d.constraints = constraints;
        return d;
    }

    // Throws std::invalid_argument naming the offending field
    void validate() const;
};

// Layout for a config: 2 rings (19 sites) normally, a single site when
// isolated; wraparound shifts only when enabled and not isolated
NetworkLayout layout_for(const ScenarioConfig &config);

// Geometry of drop 0, exposed for file dumps and diagnostics
struct DropArtifacts
{
    bool want_channel = false;
    Deployment deployment;
    std::vector<Vec2> ue_xy;
    ServingAssignment assignment;
    ChannelMatrix channel;
};

// One drop of the full pipeline: deployment, UE placement, channel, SLNR
// precoders per sector, link budgets, rates
std::vector<LinkBudgetSample> run_single_drop(const ScenarioConfig &config, const NetworkLayout &layout,
                                              int drop, DropArtifacts *capture = nullptr);

// Runs config.drops Monte Carlo drops (in parallel when threads allow) and
// aggregates. Deterministic for a given master_seed regardless of thread
// count: every drop draws from its own derived streams and results merge in
// drop order.
MetricsReport run_scenario(const ScenarioConfig &config, DropArtifacts *capture_drop0 = nullptr);

// Isolated-cell study: a single site is retained and each sector is
// evaluated with only its own transmission, so no inter-cell interference
// term exists (I_inter = 0 on every sample).
MetricsReport run_isolated_cell(const ScenarioConfig &config, DropArtifacts *capture_drop0 = nullptr);

// Received-power spatial-correlation map over one sector's bounding box:
// values are |h(x) w|^2 / ||h(x)||^2 in dB with w the conjugate-beamforming
// precoder of the target, normalized so the grid maximum is 0 dB. Cells
// inside an exclusion disk of the sector's antennas are masked (NaN).
struct HeatmapGrid
{
    Vec2 origin;            // lower-left corner of cell (0, 0)
    double cell_size_m = 1.0;
    int nx = 0, ny = 0;
    std::vector<double> values_db; // x-major within rows of y; NaN = masked
    Vec2 target_ue_position;
    std::vector<Vec2> antenna_positions;

    double value(int ix, int iy) const { return values_db[static_cast<size_t>(iy) * nx + ix]; }
    Vec2 cell_center(int ix, int iy) const
    {
        return {origin.x + (ix + 0.5) * cell_size_m, origin.y + (iy + 0.5) * cell_size_m};
    }
};

HeatmapGrid spatial_correlation_heatmap(const ScenarioConfig &config, int sector_id,
                                        const Vec2 &target_ue_position, double grid_resolution_m);

// Picks a heatmap target near the sector centroid that satisfies the
// region/exclusion preconditions, aligned to the grid cell centers
Vec2 default_heatmap_target(const ScenarioConfig &config, int sector_id, double grid_resolution_m);

// Downtilt used by the FD-MIMO presets and by the sweep's FD-MIMO rows;
// distributed kinds are omni and ignore it
constexpr double fd_mimo_default_downtilt_deg = 16.0;

// Interference-structure sweep: for every ISD and each of
// {fd_mimo, dfd_3sector}, the full pipeline runs with sector power forced
// to 44 dBm, the UMi LoS model, 10 m BS height and 24 UEs per area.
struct SweepRow
{
    double isd_m = 0.0;
    ScenarioKind scenario_kind = ScenarioKind::fd_mimo;
    double p_s_lt_intra = 0.0;
    double p_s_lt_inter = 0.0;
    double med_s_over_intra_db = 0.0;
    double med_s_over_inter_db = 0.0;
};

std::vector<SweepRow> isd_sweep(const ScenarioConfig &base_config, std::span<const double> isd_list);

std::string to_string(ScenarioKind kind);
std::string to_string(ChannelModel model);
ScenarioKind scenario_kind_from_string(const std::string &s);
ChannelModel channel_model_from_string(const std::string &s);

} // namespace dfdsim

#endif
