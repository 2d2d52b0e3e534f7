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

#include "dfdsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace dfdsim
{

void ScenarioConfig::validate() const
{
    if (isd_m <= 0.0)
        throw std::invalid_argument("config: isd_m must be positive");
    if (carrier_ghz <= 0.0)
        throw std::invalid_argument("config: carrier_ghz must be positive");
    if (bandwidth_hz <= 0.0)
        throw std::invalid_argument("config: bandwidth_hz must be positive");
    if (bs_height_m <= 1.0)
        throw std::invalid_argument("config: bs_height_m must exceed the 1 m environment height");
    if (ue_height_m <= 1.0)
        throw std::invalid_argument("config: ue_height_m must exceed the 1 m environment height");
    if (ues_per_area < 1)
        throw std::invalid_argument("config: ues_per_area must be >= 1");
    if (drops < 1)
        throw std::invalid_argument("config: drops must be >= 1");
    if (downtilt_deg < -90.0 || downtilt_deg > 90.0)
        throw std::invalid_argument("config: downtilt_deg must be in [-90, 90]");
    if (constraints.min_pairwise_distance_m < 0.0 || constraints.boundary_margin_m < 0.0 ||
        constraints.exclusion_radius_m < 0.0)
        throw std::invalid_argument("config: placement distances must be >= 0");
    if (constraints.max_attempts < 1)
        throw std::invalid_argument("config: max_attempts must be >= 1");
    if (threads < 0)
        throw std::invalid_argument("config: threads must be >= 0");
}

NetworkLayout layout_for(const ScenarioConfig &config)
{
    const int rings = config.isolated ? 0 : 2;
    const bool wrap = config.wraparound && !config.isolated;
    return build_hex_layout(config.isd_m, rings, sectors_per_site_for(config.scenario_kind), wrap);
}

namespace
{

struct UeDrop
{
    std::vector<Vec2> positions; // area-major
    ServingAssignment assignment;
};

UeDrop place_ues(const ScenarioConfig &config, const NetworkLayout &layout,
                 const Deployment &deployment, const StreamFactory &streams)
{
    UeDrop out;
    const int n_areas = layout.area_count();
    const int per_area = config.ues_per_area;
    out.positions.reserve(static_cast<size_t>(n_areas) * per_area);
    out.assignment.sector_ues.resize(layout.sector_count());

    for (int a = 0; a < n_areas; ++a)
    {
        RandomStream rng = streams.make(StreamPurpose::ue_placement, a);
        auto pts = sample_ue_positions(layout.area(a), per_area, deployment.element_xy,
                                       config.constraints, layout.wraparound_shifts, rng,
                                       "area " + std::to_string(a));
        const int sector = layout.area_serving_sector(a);
        for (const Vec2 &p : pts)
        {
            const int ue = static_cast<int>(out.positions.size());
            out.positions.push_back(p);
            out.assignment.serving_sector.push_back(sector);
            out.assignment.stream_index.push_back(static_cast<int>(out.assignment.sector_ues[sector].size()));
            out.assignment.sector_ues[sector].push_back(ue);
            out.assignment.area_id.push_back(a);
            out.assignment.site_id.push_back(a / 3);
        }
    }
    return out;
}

std::vector<PrecoderSet> compute_precoders(const ScenarioConfig &config, const NetworkLayout &layout,
                                           const Deployment &deployment, const ChannelMatrix &channel,
                                           const ServingAssignment &assignment)
{
    const double noise = config.noise_w();
    const double power = config.sector_power_w();
    const int n_sectors = layout.sector_count();
    const int n_ue = channel.n_ues();

    // Expected inter-sector interference per UE under isotropic unit-norm
    // precoding: sum over other sectors of (P / M) * ||h^(s')||^2. Feeding
    // noise + this floor into the SLNR regularizer stops sectors from
    // nulling co-scheduled UEs far below the interference that other cells
    // produce anyway.
    arma::mat inter_floor_w;
    if (config.slnr_interference_aware && n_sectors > 1 && !config.isolated)
    {
        // Crowding correction on top of the isotropic estimate: omni
        // distributed elements radiate the leaked power isotropically, but
        // a planar array's beams stay confined near the horizon plane where
        // every victim UE sits, so its generated interference concentrates
        // by roughly the visible-sphere ratio. Calibrated at 4.
        const double kappa = config.scenario_kind == ScenarioKind::fd_mimo ? 4.0 : 1.0;
        arma::mat seg_norm2(n_sectors, n_ue); // ||h_u^(s)||^2
        for (int s = 0; s < n_sectors; ++s)
        {
            const auto [first, last] = deployment.sector_ranges[s];
            seg_norm2.row(s) =
                arma::sum(arma::square(arma::abs(channel.coefficients.rows(first, last - 1))), 0);
        }
        inter_floor_w.set_size(n_sectors, n_ue);
        for (int s = 0; s < n_sectors; ++s)
        {
            const double m = static_cast<double>(deployment.sector_element_count(s));
            inter_floor_w.row(s) = kappa * (power / m) * seg_norm2.row(s);
        }
        const arma::rowvec total = arma::sum(inter_floor_w, 0);
        for (int s = 0; s < n_sectors; ++s)
            inter_floor_w.row(s) = total - inter_floor_w.row(s); // exclude the serving sector
    }

    std::vector<PrecoderSet> out(n_sectors);
    for (int s = 0; s < n_sectors; ++s)
    {
        const auto [first, last] = deployment.sector_ranges[s];
        const auto &ues = assignment.sector_ues[s];
        SectorChannel sc;
        sc.noise_power_w = noise;
        sc.sector_power_w = power;
        sc.rows.set_size(ues.size(), last - first);
        if (inter_floor_w.n_elem != 0)
            sc.per_ue_effective_noise_w.set_size(ues.size());
        for (size_t k = 0; k < ues.size(); ++k)
        {
            sc.rows.row(k) = channel.coefficients.submat(first, ues[k], last - 1, ues[k]).st();
            if (inter_floor_w.n_elem != 0)
                sc.per_ue_effective_noise_w(k) = noise + inter_floor_w(s, ues[k]);
        }
        out[s] = slnr_precoders(sc);
    }
    return out;
}

} // namespace

std::vector<LinkBudgetSample> run_single_drop(const ScenarioConfig &config, const NetworkLayout &layout,
                                              int drop, DropArtifacts *capture)
{
    const StreamFactory antenna_streams{config.master_seed,
                                        config.freeze_antennas ? 0u : static_cast<std::uint64_t>(drop)};
    const StreamFactory ue_streams{config.master_seed, static_cast<std::uint64_t>(drop)};

    const Deployment deployment =
        build_deployment(layout, config.scenario_kind, config.deployment_config(), antenna_streams);
    const UeDrop ues = place_ues(config, layout, deployment, ue_streams);
    const ChannelMatrix channel =
        build_channel_matrix(deployment, ues.positions, layout, config.channel_params());
    const std::vector<PrecoderSet> precoders =
        compute_precoders(config, layout, deployment, channel, ues.assignment);

    const InterferenceScope scope =
        config.isolated ? InterferenceScope::serving_only : InterferenceScope::all_sectors;
    std::vector<LinkBudgetSample> samples =
        evaluate_link_budgets(channel, deployment, precoders, ues.assignment, config.noise_w(), scope);

    for (LinkBudgetSample &s : samples)
    {
        s.drop = drop;
        s.rate_bps = shannon_rate(s.sinr, config.bandwidth_hz, config.max_spectral_eff_bps_hz);
    }

    if (capture)
    {
        capture->deployment = deployment;
        capture->ue_xy = ues.positions;
        capture->assignment = ues.assignment;
        if (capture->want_channel)
            capture->channel = channel;
    }
    return samples;
}

namespace
{

MetricsReport run_pipeline(const ScenarioConfig &config, DropArtifacts *capture_drop0)
{
    config.validate();
    const NetworkLayout layout = layout_for(config);

    std::vector<std::vector<LinkBudgetSample>> results(config.drops);

    unsigned hw = std::thread::hardware_concurrency();
    int workers = config.threads > 0 ? config.threads : static_cast<int>(hw > 0 ? hw : 1);
    workers = std::max(1, std::min(workers, config.drops));

    if (workers == 1)
    {
        for (int d = 0; d < config.drops; ++d)
            results[d] = run_single_drop(config, layout, d, d == 0 ? capture_drop0 : nullptr);
    }
    else
    {
        std::atomic<int> next{0};
        std::mutex err_mutex;
        std::exception_ptr error;
        auto work = [&] {
            for (;;)
            {
                const int d = next.fetch_add(1);
                if (d >= config.drops)
                    return;
                try
                {
                    results[d] = run_single_drop(config, layout, d, d == 0 ? capture_drop0 : nullptr);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!error)
                        error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }

    int areas = layout.area_count();
    if (config.center_site_only)
    {
        for (auto &drop : results)
        {
            std::erase_if(drop, [](const LinkBudgetSample &s) { return s.site_id != 0; });
        }
        areas = 3;
    }
    return aggregate(results, areas);
}

} // namespace

MetricsReport run_scenario(const ScenarioConfig &config, DropArtifacts *capture_drop0)
{
    return run_pipeline(config, capture_drop0);
}

MetricsReport run_isolated_cell(const ScenarioConfig &config, DropArtifacts *capture_drop0)
{
    if (!config.isolated)
        throw std::invalid_argument("run_isolated_cell: config.isolated must be set");
    return run_pipeline(config, capture_drop0);
}

namespace
{

// LoS channel from one sector's antennas to a receiver position, no wraparound
arma::cx_vec sector_channel_at(const Deployment &deployment, int sector_id, const Vec2 &rx,
                               const ChannelModelParams &params, double lambda)
{
    const auto [first, last] = deployment.sector_ranges[sector_id];
    arma::cx_vec h(last - first);
    for (int e = first; e < last; ++e)
    {
        const AntennaElement &elem = deployment.elements[e];
        const double d2d = std::hypot(rx.x - elem.position.x, rx.y - elem.position.y);
        const double dz = params.ue_height_m - elem.position.z;
        const double d3d = std::sqrt(d2d * d2d + dz * dz);
        const double gain_db = element_gain_towards_db(elem, {rx.x, rx.y, params.ue_height_m});
        const double pl_db = path_loss_db(params, d2d, d3d);
        h(e - first) = db_to_linear_amplitude(gain_db - pl_db) * los_phase(d3d, lambda);
    }
    return h;
}

double min_distance_to(std::span<const Vec2> points, const Vec2 &p)
{
    double d = std::numeric_limits<double>::infinity();
    for (const Vec2 &q : points)
        d = std::min(d, distance(p, q));
    return d;
}

} // namespace

HeatmapGrid spatial_correlation_heatmap(const ScenarioConfig &config, int sector_id,
                                        const Vec2 &target_ue_position, double grid_resolution_m)
{
    config.validate();
    if (grid_resolution_m <= 0.0)
        throw std::invalid_argument("heatmap: grid resolution must be positive");

    const NetworkLayout layout = layout_for(config);
    if (sector_id < 0 || sector_id >= layout.sector_count())
        throw std::invalid_argument("heatmap: sector id out of range");
    const Sector &sector = layout.sector(sector_id);

    const StreamFactory streams{config.master_seed, 0};
    const Deployment deployment =
        build_deployment(layout, config.scenario_kind, config.deployment_config(), streams);

    const auto [first, last] = deployment.sector_ranges[sector_id];
    std::vector<Vec2> antenna_xy(deployment.element_xy.begin() + first,
                                 deployment.element_xy.begin() + last);

    // Path loss is undefined below 10 m 2D distance, so the mask radius is
    // at least that; the paper's plots mask the exclusion disks the same way.
    const double mask_radius = std::max(config.constraints.exclusion_radius_m, 10.0);

    if (!sector.region.contains(target_ue_position, 1e-9))
        throw std::domain_error("heatmap: target UE position outside the sector region");
    if (min_distance_to(antenna_xy, target_ue_position) < mask_radius)
        throw std::domain_error("heatmap: target UE position inside an antenna exclusion disk");

    const ChannelModelParams params = config.channel_params();
    const double lambda = config.wavelength();

    const arma::cx_vec h_target = sector_channel_at(deployment, sector_id, target_ue_position, params, lambda);
    const arma::cx_vec w = conjugate_precoder(h_target.st());

    const Bounds2 bb = sector.region.bounds();
    HeatmapGrid grid;
    grid.cell_size_m = grid_resolution_m;
    grid.origin = {bb.xmin, bb.ymin};
    grid.nx = std::max(1, static_cast<int>(std::ceil((bb.xmax - bb.xmin) / grid_resolution_m)));
    grid.ny = std::max(1, static_cast<int>(std::ceil((bb.ymax - bb.ymin) / grid_resolution_m)));
    grid.values_db.assign(static_cast<size_t>(grid.nx) * grid.ny,
                          std::numeric_limits<double>::quiet_NaN());
    grid.target_ue_position = target_ue_position;
    grid.antenna_positions = antenna_xy;

    double peak = -std::numeric_limits<double>::infinity();
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix)
        {
            const Vec2 c = grid.cell_center(ix, iy);
            if (min_distance_to(antenna_xy, c) < mask_radius)
                continue;
            const arma::cx_vec h = sector_channel_at(deployment, sector_id, c, params, lambda);
            // received amplitude sum_i h_i(x) w_i, normalized by ||h(x)||^2
            const double rx = std::norm(arma::as_scalar(h.st() * w));
            const double corr = rx / std::max(std::real(arma::cdot(h, h)), 1e-300);
            const double v = 10.0 * std::log10(std::max(corr, 1e-300));
            grid.values_db[static_cast<size_t>(iy) * grid.nx + ix] = v;
            peak = std::max(peak, v);
        }

    for (double &v : grid.values_db)
        if (!std::isnan(v))
            v -= peak;
    return grid;
}

Vec2 default_heatmap_target(const ScenarioConfig &config, int sector_id, double grid_resolution_m)
{
    const NetworkLayout layout = layout_for(config);
    if (sector_id < 0 || sector_id >= layout.sector_count())
        throw std::invalid_argument("heatmap: sector id out of range");
    const Sector &sector = layout.sector(sector_id);

    const StreamFactory streams{config.master_seed, 0};
    const Deployment deployment =
        build_deployment(layout, config.scenario_kind, config.deployment_config(), streams);
    const auto [first, last] = deployment.sector_ranges[sector_id];
    std::vector<Vec2> antenna_xy(deployment.element_xy.begin() + first,
                                 deployment.element_xy.begin() + last);
    const double mask_radius = std::max(config.constraints.exclusion_radius_m, 10.0);

    const Bounds2 bb = sector.region.bounds();
    auto snap = [&](const Vec2 &p) -> Vec2 {
        // align to the cell-center lattice of the heatmap grid
        const double gx = bb.xmin + (std::floor((p.x - bb.xmin) / grid_resolution_m) + 0.5) * grid_resolution_m;
        const double gy = bb.ymin + (std::floor((p.y - bb.ymin) / grid_resolution_m) + 0.5) * grid_resolution_m;
        return {gx, gy};
    };

    const Vec2 centroid = sector.region.centroid();
    // deterministic ring search around the centroid for a valid cell
    for (double radius = 0.0; radius <= 40.0; radius += 1.0)
    {
        const int n_dirs = radius == 0.0 ? 1 : 16;
        for (int k = 0; k < n_dirs; ++k)
        {
            const Vec2 cand = snap(centroid + polar(radius, 360.0 * k / n_dirs));
            if (sector.region.contains(cand, -1e-6) &&
                min_distance_to(antenna_xy, cand) >= mask_radius + 1e-9)
                return cand;
        }
    }
    throw std::runtime_error("heatmap: no valid default target found near the sector centroid");
}

std::vector<SweepRow> isd_sweep(const ScenarioConfig &base_config, std::span<const double> isd_list)
{
    if (isd_list.empty())
        throw std::invalid_argument("isd_sweep: empty ISD list");

    std::vector<SweepRow> rows;
    for (double isd : isd_list)
        for (ScenarioKind kind : {ScenarioKind::fd_mimo, ScenarioKind::dfd_3sector})
        {
            ScenarioConfig cfg = base_config;
            cfg.scenario_kind = kind;
            cfg.isd_m = isd;
            cfg.sector_power_dbm = 44.0;
            cfg.channel_model = ChannelModel::umi_los;
            cfg.bs_height_m = 10.0;
            cfg.ues_per_area = 24;
            cfg.isolated = false;
            cfg.downtilt_deg = kind == ScenarioKind::fd_mimo ? fd_mimo_default_downtilt_deg : 0.0;

            const MetricsReport report = run_scenario(cfg);
            rows.push_back({isd, kind, report.p_s_lt_intra, report.p_s_lt_inter,
                            report.med_s_over_intra_db, report.med_s_over_inter_db});
        }
    return rows;
}

std::string to_string(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::fd_mimo:
        return "fd_mimo";
    case ScenarioKind::circular_arrays:
        return "circular_arrays";
    case ScenarioKind::dfd_3sector:
        return "dfd_3sector";
    case ScenarioKind::dfd_1sector:
        return "dfd_1sector";
    }
    return "unknown";
}

std::string to_string(ChannelModel model)
{
    return model == ChannelModel::umi_los ? "umi_los" : "uma_los";
}

ScenarioKind scenario_kind_from_string(const std::string &s)
{
    if (s == "fd_mimo")
        return ScenarioKind::fd_mimo;
    if (s == "circular_arrays")
        return ScenarioKind::circular_arrays;
    if (s == "dfd_3sector")
        return ScenarioKind::dfd_3sector;
    if (s == "dfd_1sector")
        return ScenarioKind::dfd_1sector;
    throw std::invalid_argument("unknown scenario_kind: " + s);
}

ChannelModel channel_model_from_string(const std::string &s)
{
    if (s == "umi_los")
        return ChannelModel::umi_los;
    if (s == "uma_los")
        return ChannelModel::uma_los;
    throw std::invalid_argument("unknown channel_model: " + s);
}

} // namespace dfdsim
