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

#ifndef dfdsim_metrics_H
#define dfdsim_metrics_H

#include <span>
#include <utility>
#include <vector>

#include "dfdsim/channel.hpp"
#include "dfdsim/precoding.hpp"

namespace dfdsim
{

// Which UE each sector serves, and where each UE sits in its sector's
// stream ordering. UEs are assigned to the sector owning the area they
// were dropped in.
struct ServingAssignment
{
    std::vector<std::vector<int>> sector_ues; // per sector: served UE indices, in stream order
    std::vector<int> serving_sector;          // per UE
    std::vector<int> stream_index;            // per UE: index within its sector's stream list
    std::vector<int> area_id;                 // per UE
    std::vector<int> site_id;                 // per UE
};

enum class InterferenceScope
{
    all_sectors, // every transmitting sector contributes
    serving_only // isolated cell: only the serving sector transmits
};

struct LinkBudgetSample
{
    int ue_id = 0;
    int drop = 0;
    int area_id = 0;
    int site_id = 0;
    double desired_w = 0.0;
    double intra_interference_w = 0.0;
    double inter_interference_w = 0.0;
    double noise_w = 0.0;
    double total_rx_w = 0.0; // independent single-pass sum over all streams
    double sinr = 0.0;       // desired / (intra + inter + noise)
    double rate_bps = 0.0;
};

// Signal / intra-cell / inter-cell decomposition for one UE:
//   S       = p_k |h_k w_k|^2                     (own stream)
//   I_intra = sum_{j != k, serving sector} p_j |h_k w_j|^2
//   I_inter = sum over all other sectors' streams
// total_rx_w is accumulated over the identical terms in one unclassified
// pass, so the partition identity S + I_intra + I_inter = total is a real
// bookkeeping check rather than a tautology.
LinkBudgetSample link_budget(int ue, const ChannelMatrix &channel, const Deployment &deployment,
                             std::span<const PrecoderSet> precoders, const ServingAssignment &assignment,
                             double noise_w, InterferenceScope scope = InterferenceScope::all_sectors);

// Batch evaluation of every UE's link budget. One pass per sector over all
// UEs; identical classification as link_budget, with the per-sector stream
// amplitudes computed by a single matrix product.
std::vector<LinkBudgetSample> evaluate_link_budgets(const ChannelMatrix &channel,
                                                    const Deployment &deployment,
                                                    std::span<const PrecoderSet> precoders,
                                                    const ServingAssignment &assignment, double noise_w,
                                                    InterferenceScope scope = InterferenceScope::all_sectors);

// bandwidth * log2(1 + sinr); optionally capped at bandwidth * max
// spectral efficiency (cap disabled when max_spectral_eff <= 0)
double shannon_rate(double sinr, double bandwidth_hz, double max_spectral_eff_bps_hz = 0.0);

// Sorted step CDF; probability at the i-th sorted sample is (i+1)/N
std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> samples);

// Nearest-rank percentile: the ceil(p*N)-th smallest sample, p in (0, 1)
double percentile(std::span<const double> samples, double p);

struct MetricsReport
{
    std::vector<LinkBudgetSample> per_ue_samples; // pooled across drops, drop-major
    int drops = 0;
    int areas = 0;
    double area_throughput_bps = 0.0;   // mean over (drop, area) of summed UE rates
    double ue_throughput_p05_bps = 0.0; // 5%-tile of pooled per-UE rates
    double median_sinr_db = 0.0;
    double med_s_over_intra_db = 0.0;
    double med_s_over_inter_db = 0.0;
    double p_s_lt_intra = 0.0; // P(S < I_intra)
    double p_s_lt_inter = 0.0; // P(S < I_inter)
    std::vector<std::pair<double, double>> sinr_cdf_db;
};

// Pools per-drop samples (in drop order) and computes the summary
// statistics. Order-independent by construction: any parallel drop
// execution that fills the per-drop slots yields the same report.
MetricsReport aggregate(const std::vector<std::vector<LinkBudgetSample>> &drop_results, int areas);

} // namespace dfdsim

#endif
