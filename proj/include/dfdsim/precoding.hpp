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

#ifndef dfdsim_precoding_H
#define dfdsim_precoding_H

#include <armadillo>
#include <vector>

namespace dfdsim
{

// Channel restricted to one sector: K served UEs (rows) over the sector's
// M antenna elements (columns), plus the powers the precoder needs.
// `per_ue_effective_noise_w`, when non-empty (length K), replaces the
// thermal noise in each UE's SLNR regularizer; the pipeline uses it to make
// the precoder aware of the inter-sector interference floor instead of
// nulling co-scheduled UEs far below it.
struct SectorChannel
{
    arma::cx_mat rows; // K x M
    double noise_power_w = 0.0;
    double sector_power_w = 0.0;
    arma::vec per_ue_effective_noise_w; // optional, length K

    double effective_noise_w(int k) const
    {
        return per_ue_effective_noise_w.n_elem == 0 ? noise_power_w : per_ue_effective_noise_w(k);
    }
};

// Unit-norm per-UE precoders (columns) and the per-UE transmit powers.
struct PrecoderSet
{
    arma::cx_mat vectors;            // M x K, ||column k|| = 1
    std::vector<double> per_ue_power_w; // sums to the sector power
};

enum class PowerPolicy
{
    equal
};

// Equal split of the sector power across K UEs
std::vector<double> allocate_power(double sector_power_w, int k, PowerPolicy policy = PowerPolicy::equal);

// SLNR precoders: w_k is collinear with (a_k I + H^H H)^-1 h_k^H with
// regularizer a_k = effective_noise_k / p_k, normalized to unit norm. This
// direction maximizes the (effective-noise) signal-to-leakage-and-noise
// ratio of UE k over unit-norm vectors; K > M is permitted.
PrecoderSet slnr_precoders(const SectorChannel &ch);

// Matched filter h^H / ||h||
arma::cx_vec conjugate_precoder(const arma::cx_rowvec &h);

} // namespace dfdsim

#endif
