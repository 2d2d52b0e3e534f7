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

#include "dfdsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace dfdsim
{

double breakpoint_distance_m(const ChannelModelParams &params)
{
    const double h_bs = params.bs_height_m - params.environment_height_m;
    const double h_ue = params.ue_height_m - params.environment_height_m;
    if (h_bs <= 0.0 || h_ue <= 0.0)
        throw std::invalid_argument("breakpoint_distance: heights must exceed the environment height");
    return 4.0 * h_bs * h_ue * params.carrier_ghz * 1e9 / breakpoint_light_mps;
}

double path_loss_db(const ChannelModelParams &params, double d2d_m, double d3d_m)
{
    if (d2d_m < 10.0)
        throw std::domain_error("path_loss: d2d below the 10 m validity range");

    const double fc_term = 28.0 + 20.0 * std::log10(params.carrier_ghz);
    const double d_bp = breakpoint_distance_m(params);
    if (d2d_m <= d_bp)
        return 22.0 * std::log10(d3d_m) + fc_term;

    const double dh = params.bs_height_m - params.ue_height_m;
    return 40.0 * std::log10(d3d_m) + fc_term - 9.0 * std::log10(d_bp * d_bp + dh * dh);
}

std::complex<double> los_phase(double d3d_m, double wavelength_m)
{
    if (d3d_m <= 0.0)
        throw std::domain_error("los_phase: distance must be positive");
    const double phase = -2.0 * pi * d3d_m / wavelength_m;
    return {std::cos(phase), std::sin(phase)};
}

double noise_power_dbm(double bandwidth_hz, double noise_figure_db)
{
    if (bandwidth_hz <= 0.0)
        throw std::invalid_argument("noise_power: bandwidth must be positive");
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

ChannelMatrix build_channel_matrix(const Deployment &deployment, std::span<const Vec2> ue_xy,
                                   const NetworkLayout &layout, const ChannelModelParams &params)
{
    const int n_ue = static_cast<int>(ue_xy.size());
    const int n_el = deployment.element_count();
    const int n_sites = layout.site_count();
    const double lambda = wavelength_m(params.carrier_ghz);

    ChannelMatrix ch;
    ch.coefficients.set_size(n_el, n_ue);
    ch.n_sites = n_sites;
    ch.image_choice.assign(static_cast<size_t>(n_ue) * n_sites, 0);

    // Element ranges per site (elements are sector-major, sectors site-major)
    std::vector<std::pair<int, int>> site_ranges(n_sites);
    for (int s = 0; s < n_sites; ++s)
    {
        const int first_sector = s * layout.sectors_per_site;
        const int last_sector = first_sector + layout.sectors_per_site - 1;
        site_ranges[s] = {deployment.sector_ranges[first_sector].first,
                          deployment.sector_ranges[last_sector].second};
    }

    for (int u = 0; u < n_ue; ++u)
    {
        const Vec2 ue = ue_xy[u];
        std::complex<double> *col = ch.coefficients.colptr(u);

        for (int s = 0; s < n_sites; ++s)
        {
            auto [disp, shift_idx] = wrapped_displacement(ue, layout.sites[s].center, layout);
            (void)disp;
            ch.image_choice[static_cast<size_t>(u) * n_sites + s] = shift_idx;
            const Vec2 shift = layout.wraparound_shifts[shift_idx];

            for (int e = site_ranges[s].first; e < site_ranges[s].second; ++e)
            {
                const AntennaElement &elem = deployment.elements[e];
                const Vec3 pos{elem.position.x + shift.x, elem.position.y + shift.y, elem.position.z};
                const double d2d = std::hypot(ue.x - pos.x, ue.y - pos.y);
                const double dz = params.ue_height_m - pos.z;
                const double d3d = std::sqrt(d2d * d2d + dz * dz);

                AntennaElement shifted = elem;
                shifted.position = pos;
                const double gain_db =
                    element_gain_towards_db(shifted, {ue.x, ue.y, params.ue_height_m});
                const double pl_db = path_loss_db(params, d2d, d3d);
                col[e] = db_to_linear_amplitude(gain_db - pl_db) * los_phase(d3d, lambda);
            }
        }
    }
    return ch;
}

} // namespace dfdsim
