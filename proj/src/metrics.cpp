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

#include "dfdsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfdsim
{

namespace
{

void classify_stream_power(LinkBudgetSample &sample, int sector, int stream, int serving_sector,
                           int own_stream, double power_w)
{
    if (sector == serving_sector)
    {
        if (stream == own_stream)
            sample.desired_w += power_w;
        else
            sample.intra_interference_w += power_w;
    }
    else
        sample.inter_interference_w += power_w;
}

void finish_sample(LinkBudgetSample &sample)
{
    sample.sinr = sample.desired_w /
                  (sample.intra_interference_w + sample.inter_interference_w + sample.noise_w);
}

double ratio_or_inf(double num, double den)
{
    return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

} // namespace

LinkBudgetSample link_budget(int ue, const ChannelMatrix &channel, const Deployment &deployment,
                             std::span<const PrecoderSet> precoders, const ServingAssignment &assignment,
                             double noise_w, InterferenceScope scope)
{
    const int n_sectors = static_cast<int>(deployment.sector_ranges.size());
    if (static_cast<int>(precoders.size()) != n_sectors)
        throw std::invalid_argument("link_budget: one precoder set per sector required");

    const int serving = assignment.serving_sector[ue];
    const int own_stream = assignment.stream_index[ue];

    LinkBudgetSample sample;
    sample.ue_id = ue;
    sample.area_id = assignment.area_id[ue];
    sample.site_id = assignment.site_id[ue];
    sample.noise_w = noise_w;

    for (int s = 0; s < n_sectors; ++s)
    {
        if (scope == InterferenceScope::serving_only && s != serving)
            continue;
        const auto [first, last] = deployment.sector_ranges[s];
        const arma::cx_rowvec h =
            channel.coefficients.submat(first, ue, last - 1, ue).st(); // 1 x M slice of UE's column
        const PrecoderSet &pre = precoders[s];
        const int k_streams = static_cast<int>(pre.vectors.n_cols);
        if (k_streams != static_cast<int>(assignment.sector_ues[s].size()))
            throw std::invalid_argument("link_budget: precoder set does not match served UE count");

        for (int j = 0; j < k_streams; ++j)
        {
            const std::complex<double> y = arma::as_scalar(h * pre.vectors.col(j));
            const double p = pre.per_ue_power_w[j] * std::norm(y);
            sample.total_rx_w += p;
            classify_stream_power(sample, s, j, serving, own_stream, p);
        }
    }
    finish_sample(sample);
    return sample;
}

std::vector<LinkBudgetSample> evaluate_link_budgets(const ChannelMatrix &channel,
                                                    const Deployment &deployment,
                                                    std::span<const PrecoderSet> precoders,
                                                    const ServingAssignment &assignment, double noise_w,
                                                    InterferenceScope scope)
{
    const int n_ue = channel.n_ues();
    const int n_sectors = static_cast<int>(deployment.sector_ranges.size());
    if (static_cast<int>(precoders.size()) != n_sectors)
        throw std::invalid_argument("evaluate_link_budgets: one precoder set per sector required");

    std::vector<LinkBudgetSample> samples(n_ue);
    for (int u = 0; u < n_ue; ++u)
    {
        samples[u].ue_id = u;
        samples[u].area_id = assignment.area_id[u];
        samples[u].site_id = assignment.site_id[u];
        samples[u].noise_w = noise_w;
    }

    for (int s = 0; s < n_sectors; ++s)
    {
        const auto [first, last] = deployment.sector_ranges[s];
        const PrecoderSet &pre = precoders[s];
        const int k_streams = static_cast<int>(pre.vectors.n_cols);
        if (k_streams != static_cast<int>(assignment.sector_ues[s].size()))
            throw std::invalid_argument("evaluate_link_budgets: precoder set does not match served UE count");

        // Stream amplitudes of every one of this sector's streams at every
        // UE: (K x M) * (M x n_ue)
        const arma::cx_mat y = pre.vectors.st() * channel.coefficients.rows(first, last - 1);

        for (int u = 0; u < n_ue; ++u)
        {
            const int serving = assignment.serving_sector[u];
            if (scope == InterferenceScope::serving_only && s != serving)
                continue;
            LinkBudgetSample &sample = samples[u];
            for (int j = 0; j < k_streams; ++j)
            {
                const double p = pre.per_ue_power_w[j] * std::norm(y(j, u));
                sample.total_rx_w += p;
                classify_stream_power(sample, s, j, serving, assignment.stream_index[u], p);
            }
        }
    }

    for (LinkBudgetSample &sample : samples)
        finish_sample(sample);
    return samples;
}

double shannon_rate(double sinr, double bandwidth_hz, double max_spectral_eff_bps_hz)
{
    if (sinr < 0.0)
        throw std::domain_error("shannon_rate: sinr must be >= 0");
    double se = std::log2(1.0 + sinr);
    if (max_spectral_eff_bps_hz > 0.0)
        se = std::min(se, max_spectral_eff_bps_hz);
    return bandwidth_hz * se;
}

std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> samples)
{
    if (samples.empty())
        throw std::domain_error("empirical_cdf: empty sample set");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> cdf;
    cdf.reserve(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (size_t i = 0; i < sorted.size(); ++i)
        cdf.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
    return cdf;
}

double percentile(std::span<const double> samples, double p)
{
    if (samples.empty())
        throw std::domain_error("percentile: empty sample set");
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("percentile: p must be in (0, 1)");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const size_t rank = static_cast<size_t>(std::ceil(p * static_cast<double>(sorted.size())));
    return sorted[rank - 1];
}

MetricsReport aggregate(const std::vector<std::vector<LinkBudgetSample>> &drop_results, int areas)
{
    if (drop_results.empty())
        throw std::invalid_argument("aggregate: at least one drop required");

    MetricsReport report;
    report.drops = static_cast<int>(drop_results.size());
    report.areas = areas;

    size_t total = 0;
    for (const auto &d : drop_results)
        total += d.size();
    report.per_ue_samples.reserve(total);

    // Area throughput: sum rates per (drop, area), then average the sums
    std::vector<double> area_sums;
    area_sums.reserve(drop_results.size() * areas);
    for (int d = 0; d < report.drops; ++d)
    {
        std::vector<double> sums(areas, 0.0);
        for (const LinkBudgetSample &s : drop_results[d])
        {
            LinkBudgetSample tagged = s;
            tagged.drop = d;
            report.per_ue_samples.push_back(tagged);
            sums[s.area_id] += s.rate_bps;
        }
        area_sums.insert(area_sums.end(), sums.begin(), sums.end());
    }
    double acc = 0.0;
    for (double v : area_sums)
        acc += v;
    report.area_throughput_bps = acc / static_cast<double>(area_sums.size());

    const size_t n = report.per_ue_samples.size();
    std::vector<double> rates(n), sinr_db(n), r_intra(n), r_inter(n);
    size_t lt_intra = 0, lt_inter = 0;
    for (size_t i = 0; i < n; ++i)
    {
        const LinkBudgetSample &s = report.per_ue_samples[i];
        rates[i] = s.rate_bps;
        sinr_db[i] = 10.0 * std::log10(s.sinr);
        r_intra[i] = ratio_or_inf(s.desired_w, s.intra_interference_w);
        r_inter[i] = ratio_or_inf(s.desired_w, s.inter_interference_w);
        lt_intra += s.desired_w < s.intra_interference_w ? 1 : 0;
        lt_inter += s.desired_w < s.inter_interference_w ? 1 : 0;
    }

    report.ue_throughput_p05_bps = percentile(rates, 0.05);
    report.median_sinr_db = percentile(sinr_db, 0.5);
    report.med_s_over_intra_db = 10.0 * std::log10(percentile(r_intra, 0.5));
    report.med_s_over_inter_db = 10.0 * std::log10(percentile(r_inter, 0.5));
    report.p_s_lt_intra = static_cast<double>(lt_intra) / static_cast<double>(n);
    report.p_s_lt_inter = static_cast<double>(lt_inter) / static_cast<double>(n);
    report.sinr_cdf_db = empirical_cdf(sinr_db);
    return report;
}

} // namespace dfdsim
