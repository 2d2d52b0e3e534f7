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

#ifndef dfdsim_channel_H
#define dfdsim_channel_H

#include <armadillo>
#include <complex>
#include <span>
#include <vector>

#include "dfdsim/antenna.hpp"
#include "dfdsim/layout.hpp"

namespace dfdsim
{

// Exact speed of light, used for wavelength. The path-loss breakpoint uses
// the rounded 3.0e8 m/s constant of the 3GPP formulas.
constexpr double speed_of_light_mps = 299792458.0;
constexpr double breakpoint_light_mps = 3.0e8;

inline double wavelength_m(double carrier_ghz) { return speed_of_light_mps / (carrier_ghz * 1e9); }

enum class ChannelModel
{
    umi_los,
    uma_los
};

struct ChannelModelParams
{
    ChannelModel model = ChannelModel::umi_los;
    double carrier_ghz = 3.5;
    double environment_height_m = 1.0; // h_E
    double bs_height_m = 10.0;
    double ue_height_m = 1.5;
};

// Dual-slope LoS breakpoint d'_BP = 4 (h_BS - h_E)(h_UE - h_E) f_c / c
double breakpoint_distance_m(const ChannelModelParams &params);

// LoS path loss in dB. Valid for d2d >= 10 m (enforced; the UE exclusion
// region guarantees it for every simulated link).
//   d2d <= d_BP:  22 log10(d3d) + 28 + 20 log10(fc_GHz)
//   d2d >  d_BP:  40 log10(d3d) + 28 + 20 log10(fc_GHz)
//                 - 9 log10(d_BP^2 + (h_BS - h_UE)^2)
double path_loss_db(const ChannelModelParams &params, double d2d_m, double d3d_m);

// Unit-magnitude LoS phasor e^(-j 2 pi d / lambda)
std::complex<double> los_phase(double d3d_m, double wavelength_m);

// Thermal noise power: -174 dBm/Hz + 10 log10(bandwidth) + noise figure
double noise_power_dbm(double bandwidth_hz, double noise_figure_db);

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear_amplitude(double db) { return std::pow(10.0, db / 20.0); }

// Deterministic large-scale LoS channel: coefficient(ue, element) =
// 10^((G_elem - PL)/20) * e^(-j 2 pi d3d / lambda), evaluated at the
// minimum-distance wraparound image of the element's site (one image per
// (ue, site), chosen by site-center distance).
struct ChannelMatrix
{
    // Stored element-major: column u holds UE u's coefficients over all
    // elements, so per-sector slices of a UE's channel are contiguous.
    arma::cx_mat coefficients; // (n_elements x n_ues)
    int n_sites = 0;
    std::vector<int> image_choice; // (ue * n_sites + site) -> shift index

    int n_ues() const { return static_cast<int>(coefficients.n_cols); }
    int n_elements() const { return static_cast<int>(coefficients.n_rows); }

    std::complex<double> coefficient(int ue, int element) const
    {
        return coefficients(element, ue);
    }
    int image(int ue, int site) const { return image_choice[static_cast<size_t>(ue) * n_sites + site]; }
};

ChannelMatrix build_channel_matrix(const Deployment &deployment, std::span<const Vec2> ue_xy,
                                   const NetworkLayout &layout, const ChannelModelParams &params);

} // namespace dfdsim

#endif
