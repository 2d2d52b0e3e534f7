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
//
// Acceptance suite: runs the full evaluation study and checks one criterion
// per line. Exit status is nonzero when any hard criterion fails.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dfdsim/config.hpp"
#include "dfdsim/report.hpp"

using namespace dfdsim;

namespace
{

int g_failures = 0;

void criterion(int n, bool pass, const std::string &detail)
{
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", n, detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

struct RunCache
{
    std::map<std::string, MetricsReport> reports;

    const MetricsReport &get(const std::string &preset, bool isolated = false)
    {
        const std::string key = preset + (isolated ? "#iso" : "");
        auto it = reports.find(key);
        if (it != reports.end())
            return it->second;
        ScenarioConfig cfg = preset_config(preset);
        cfg.isolated = isolated;
        std::fprintf(stderr, "  running %s ...\n", key.c_str());
        MetricsReport r = isolated ? run_isolated_cell(cfg) : run_scenario(cfg);
        return reports.emplace(key, std::move(r)).first->second;
    }
};

std::vector<double> sinr_db_samples(const MetricsReport &r)
{
    std::vector<double> v;
    v.reserve(r.per_ue_samples.size());
    for (const auto &s : r.per_ue_samples)
        v.push_back(10.0 * std::log10(s.sinr));
    return v;
}

double iqr_db(const MetricsReport &r)
{
    const auto v = sinr_db_samples(r);
    return percentile(v, 0.75) - percentile(v, 0.25);
}

std::complex<double> randn_c(RandomStream &rng)
{
    const double u1 = std::max(rng.uniform(), 1e-18);
    const double u2 = rng.uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return {radius * std::cos(2.0 * pi * u2), radius * std::sin(2.0 * pi * u2)};
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Writes the same output file set the CLI writes for a run
void emit_run_files(const std::string &dir, const ScenarioConfig &cfg)
{
    std::filesystem::create_directories(dir);
    DropArtifacts drop0;
    const MetricsReport report = run_scenario(cfg, &drop0);
    write_text_file(dir + "/resolved_config.json", emit_config(cfg));
    write_summary(dir + "/summary.txt", cfg, report);
    write_sinr_cdf_csv(dir + "/sinr_cdf.csv", report);
    write_per_ue_csv(dir + "/per_ue.csv", report);
    write_layout_csv(dir + "/layout.csv", layout_for(cfg), drop0, cfg.ue_height_m);
}

struct HeatmapStats
{
    bool peak_at_target = false;
    double body_std_db = 0.0;
};

HeatmapStats heatmap_stats(const std::string &preset)
{
    const ScenarioConfig cfg = preset_config(preset);
    const double res = 1.0;
    const Vec2 target = default_heatmap_target(cfg, 0, res);
    const HeatmapGrid grid = spatial_correlation_heatmap(cfg, 0, target, res);

    double peak = -1e300;
    int px = -1, py = -1;
    std::vector<double> body;
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix)
        {
            const double v = grid.value(ix, iy);
            if (std::isnan(v))
                continue;
            if (v > peak)
            {
                peak = v;
                px = ix;
                py = iy;
            }
            if (v <= -3.0) // exclude the 3 dB peak neighborhood
                body.push_back(v);
        }

    HeatmapStats st;
    const Vec2 pc = grid.cell_center(px, py);
    st.peak_at_target =
        std::abs(pc.x - target.x) <= res / 2.0 + 1e-9 && std::abs(pc.y - target.y) <= res / 2.0 + 1e-9;
    double mean = 0.0;
    for (double v : body)
        mean += v;
    mean /= static_cast<double>(body.size());
    double var = 0.0;
    for (double v : body)
        var += (v - mean) * (v - mean);
    st.body_std_db = std::sqrt(var / static_cast<double>(body.size()));
    return st;
}

} // namespace

int main()
{
    RunCache cache;

    // ---- criterion 1: area-throughput gains at ISD 500 ----
    {
        const double fd = cache.get("fd_mimo_isd500").area_throughput_bps;
        const double d3 = cache.get("dfd_3sector_isd500").area_throughput_bps;
        const double d1 = cache.get("dfd_1sector_isd500").area_throughput_bps;
        const double r3 = d3 / fd, r1 = d1 / fd;
        const bool hard = r3 >= 1.2 && r1 >= r3;
        const bool band3 = r3 >= 1.2 && r3 <= 1.8;
        const bool band1 = r1 >= 1.6 && r1 <= 2.5;
        criterion(1, hard,
                  "ISD 500 area-throughput ratios: dfd_3sector/fd_mimo = " + fmt(r3) +
                      (band3 ? " (in soft band [1.2, 1.8])" : " (outside soft band [1.2, 1.8])") +
                      ", dfd_1sector/fd_mimo = " + fmt(r1) +
                      (band1 ? " (in soft band [1.6, 2.5])" : " (outside soft band [1.6, 2.5])"));
    }

    // ---- criterion 2: FD-MIMO leads in area throughput at ISD 200 ----
    {
        const double fd = cache.get("fd_mimo_isd200").area_throughput_bps;
        const double d3 = cache.get("dfd_3sector_isd200").area_throughput_bps;
        criterion(2, fd >= d3,
                  "ISD 200 area throughput: fd_mimo " + fmt(fd / 1e6) + " Mbit/s >= dfd_3sector " +
                      fmt(d3 / 1e6) + " Mbit/s");
    }

    // ---- criterion 3: median SINR gain at ISD 500 ----
    {
        const double gain = cache.get("dfd_3sector_isd500").median_sinr_db -
                            cache.get("fd_mimo_isd500").median_sinr_db;
        const bool band = gain >= 4.0 && gain <= 12.0;
        criterion(3, gain > 0.0,
                  "median SINR gain dfd_3sector over fd_mimo at ISD 500 = " + fmt(gain) + " dB" +
                      (band ? " (in soft band 8 +/- 4 dB)" : " (outside soft band 8 +/- 4 dB)"));
    }

    // ---- criterion 4: 5%-tile UE throughput orderings ----
    {
        const double fd200 = cache.get("fd_mimo_isd200").ue_throughput_p05_bps;
        const double d3_200 = cache.get("dfd_3sector_isd200").ue_throughput_p05_bps;
        const double d1_200 = cache.get("dfd_1sector_isd200").ue_throughput_p05_bps;
        const double fd500 = cache.get("fd_mimo_isd500").ue_throughput_p05_bps;
        const double d3_500 = cache.get("dfd_3sector_isd500").ue_throughput_p05_bps;
        const double d1_500 = cache.get("dfd_1sector_isd500").ue_throughput_p05_bps;
        const double ci500 = cache.get("circular_arrays_isd500").ue_throughput_p05_bps;

        const bool dfd_above = d3_200 > fd200 && d1_200 > fd200 && d3_500 > fd500 && d1_500 > fd500;
        const bool circ_lowest = ci500 < fd500 && ci500 < d3_500 && ci500 < d1_500;
        criterion(4, dfd_above && circ_lowest,
                  std::string("5%-tile: dfd kinds above fd_mimo at both ISDs ") +
                      (dfd_above ? "holds" : "fails") + "; circular lowest at ISD 500 " +
                      (circ_lowest ? "holds" : "fails") + " (fd " + fmt(fd500 / 1e6) + " / circ " +
                      fmt(ci500 / 1e6) + " / dfd3 " + fmt(d3_500 / 1e6) + " Mbit/s)");
    }

    // ---- criterion 5: isolated-cell SINR spread ordering ----
    {
        const double fd = iqr_db(cache.get("fd_mimo_isd200", true));
        const double ci = iqr_db(cache.get("circular_arrays_isd200", true));
        const double d3 = iqr_db(cache.get("dfd_3sector_isd200", true));
        criterion(5, d3 < ci && ci < fd,
                  "isolated-cell SINR IQR: dfd_3sector " + fmt(d3) + " < circular " + fmt(ci) +
                      " < fd_mimo " + fmt(fd) + " dB");
    }

    // ---- criteria 6 and 7: interference-decomposition sweep over ISD ----
    {
        const ScenarioConfig base = preset_config("dfd_3sector_isd200");
        const std::vector<double> isds{200.0, 300.0, 400.0, 500.0};
        std::fprintf(stderr, "  running ISD sweep ...\n");
        const std::vector<SweepRow> rows = isd_sweep(base, isds);

        std::vector<SweepRow> fd, d3;
        for (const SweepRow &r : rows)
            (r.scenario_kind == ScenarioKind::fd_mimo ? fd : d3).push_back(r);

        bool order_dfd = true, order_fd = true;
        for (size_t i = 0; i < 4; ++i)
        {
            order_dfd = order_dfd && d3[i].med_s_over_inter_db < d3[i].med_s_over_intra_db;
            order_fd = order_fd && fd[i].med_s_over_intra_db < fd[i].med_s_over_inter_db;
        }
        auto non_decreasing = [](auto get, const std::vector<SweepRow> &v) {
            for (size_t i = 1; i < v.size(); ++i)
                if (get(v[i]) < get(v[i - 1]))
                    return false;
            return true;
        };
        auto intra = [](const SweepRow &r) { return r.med_s_over_intra_db; };
        auto inter = [](const SweepRow &r) { return r.med_s_over_inter_db; };
        const bool mono_d3 = non_decreasing(intra, d3) && non_decreasing(inter, d3);
        const std::vector<SweepRow> fd_rev(fd.rbegin(), fd.rend());
        const bool mono_fd_intra = non_decreasing(intra, fd_rev);
        const bool mono_fd_inter = non_decreasing(inter, fd_rev);

        criterion(6, order_dfd && order_fd,
                  std::string("sweep orderings: dfd med(S/I_inter) < med(S/I_intra) at every ISD ") +
                      (order_dfd ? "holds" : "fails") + ", fd_mimo reverse " +
                      (order_fd ? "holds" : "fails") + "; monotonicity checks: dfd non-decreasing " +
                      (mono_d3 ? "holds" : "fails") + ", fd non-increasing intra " +
                      (mono_fd_intra ? "holds" : "fails") + " / inter " +
                      (mono_fd_inter ? "holds" : "fails"));

        auto prob_inter = [](const SweepRow &r) { return r.p_s_lt_inter; };
        const bool p_d3 =
            non_decreasing(prob_inter, std::vector<SweepRow>(d3.rbegin(), d3.rend()));
        const bool p_fd = non_decreasing(prob_inter, fd);
        std::string detail = "P(S < I_inter) over ISD: dfd non-increasing " +
                             std::string(p_d3 ? "holds" : "fails") + " (";
        for (const SweepRow &r : d3)
            detail += fmt(r.p_s_lt_inter) + " ";
        detail += "), fd non-decreasing " + std::string(p_fd ? "holds" : "fails") + " (";
        for (const SweepRow &r : fd)
            detail += fmt(r.p_s_lt_inter) + " ";
        detail += ")";
        criterion(7, p_d3 && p_fd, detail);
    }

    // ---- criterion 8: SLNR closed form vs generalized-eigenvector oracle ----
    {
        RandomStream rng(20240807);
        bool ok = true;
        double worst = 1.0;
        for (int trial = 0; trial < 200 && ok; ++trial)
        {
            const int k_ues = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
            const int m = 2 + static_cast<int>(rng.uniform(0.0, 7.0));
            SectorChannel ch;
            ch.rows.set_size(k_ues, m);
            for (int i = 0; i < k_ues; ++i)
                for (int j = 0; j < m; ++j)
                    ch.rows(i, j) = 1e-4 * randn_c(rng);
            ch.noise_power_w = 6.3e-13;
            ch.sector_power_w = rng.uniform(1.0, 30.0);

            const PrecoderSet set = slnr_precoders(ch);
            const auto power = allocate_power(ch.sector_power_w, k_ues);
            for (int k = 0; k < k_ues; ++k)
            {
                const double alpha = ch.noise_power_w / power[k];
                const arma::cx_mat num = ch.rows.row(k).t() * ch.rows.row(k);
                arma::cx_mat den(m, m, arma::fill::eye);
                den *= alpha;
                for (int j = 0; j < k_ues; ++j)
                    if (j != k)
                        den += ch.rows.row(j).t() * ch.rows.row(j);
                arma::cx_vec eigval;
                arma::cx_mat left, right;
                if (!arma::eig_pair(eigval, left, right, num, den))
                {
                    ok = false;
                    break;
                }
                const arma::uword top = arma::abs(eigval).index_max();
                const double cos_sim = std::abs(arma::cdot(set.vectors.col(k), right.col(top))) /
                                       (arma::norm(set.vectors.col(k)) * arma::norm(right.col(top)));
                worst = std::min(worst, cos_sim);
                const double tol = k_ues == 1 ? 1e-12 : 1e-9;
                if (cos_sim < 1.0 - tol)
                    ok = false;

                if (k_ues == 1)
                {
                    const double mf = std::abs(arma::cdot(set.vectors.col(0), ch.rows.row(0).t())) /
                                      arma::norm(ch.rows.row(0));
                    if (mf < 1.0 - 1e-12)
                        ok = false;
                }
            }
        }
        criterion(8, ok,
                  "SLNR closed form collinear with generalized-eigenvector oracle on 200 "
                  "instances, worst |cos| deficit " +
                      fmt(1.0 - worst));
    }

    // ---- criterion 9: bookkeeping identities ----
    {
        bool partition_ok = true;
        size_t checked = 0;
        double worst_rel = 0.0;
        for (const auto &[key, report] : cache.reports)
            for (const auto &s : report.per_ue_samples)
            {
                const double lhs = s.desired_w + s.intra_interference_w + s.inter_interference_w;
                const double rel = std::abs(lhs - s.total_rx_w) / std::max(s.total_rx_w, 1e-300);
                worst_rel = std::max(worst_rel, rel);
                if (rel > 1e-9)
                    partition_ok = false;
                ++checked;
            }

        // channel-magnitude oracle on 10^4 random entries of a drop-0 channel
        ScenarioConfig cfg = preset_config("dfd_3sector_isd200");
        cfg.drops = 1;
        DropArtifacts drop0;
        drop0.want_channel = true;
        run_scenario(cfg, &drop0);
        const NetworkLayout layout = layout_for(cfg);

        bool channel_ok = true;
        RandomStream rng(4242);
        for (int t = 0; t < 10000; ++t)
        {
            const int u = static_cast<int>(rng.uniform(0.0, drop0.channel.n_ues()));
            const int e = static_cast<int>(rng.uniform(0.0, drop0.channel.n_elements()));
            const Vec2 ue = drop0.ue_xy[u];
            const Vec3 &ap = drop0.deployment.elements[e].position;
            const int site = layout.sector(drop0.deployment.elements[e].sector_id).site_id;

            // independent image choice and dual-slope recomputation
            double best = 1e300;
            Vec2 shift{0, 0};
            for (const Vec2 &s : layout.wraparound_shifts)
            {
                const double d = distance(ue, layout.sites[site].center + s);
                if (d < best)
                {
                    best = d;
                    shift = s;
                }
            }
            const double d2d = std::hypot(ue.x - (ap.x + shift.x), ue.y - (ap.y + shift.y));
            const double d3d = std::sqrt(d2d * d2d + (1.5 - ap.z) * (1.5 - ap.z));
            const double dbp = 4.0 * 9.0 * 0.5 * 3.5e9 / 3e8;
            const double pl = d2d <= dbp
                                  ? 22.0 * std::log10(d3d) + 28.0 + 20.0 * std::log10(3.5)
                                  : 40.0 * std::log10(d3d) + 28.0 + 20.0 * std::log10(3.5) -
                                        9.0 * std::log10(dbp * dbp + 8.5 * 8.5);
            const double expect = std::pow(10.0, -pl / 20.0); // omni: G = 0 dB
            const double got = std::abs(drop0.channel.coefficient(u, e));
            if (std::abs(got - expect) > 1e-12 * expect)
                channel_ok = false;
        }

        criterion(9, partition_ok && channel_ok,
                  "partition identity on " + std::to_string(checked) + " samples (worst rel err " +
                      fmt(worst_rel) + "), channel-magnitude oracle on 10^4 entries " +
                      (channel_ok ? "holds" : "fails"));
    }

    // ---- criterion 10: byte-identical outputs across runs and thread counts ----
    {
        ScenarioConfig cfg = preset_config("dfd_3sector_isd200");
        cfg.drops = 2;
        cfg.master_seed = 7;

        const std::string base =
            (std::filesystem::temp_directory_path() / "dfdsim_accept").string();
        std::filesystem::remove_all(base);
        cfg.threads = 1;
        emit_run_files(base + "/a", cfg);
        cfg.threads = 2;
        emit_run_files(base + "/b", cfg);
        cfg.threads = 1;
        emit_run_files(base + "/c", cfg);

        bool ok = true;
        for (const char *name :
             {"resolved_config.json", "summary.txt", "sinr_cdf.csv", "per_ue.csv", "layout.csv"})
        {
            const std::string a = read_file(base + "/a/" + std::string(name));
            ok = ok && !a.empty() && a == read_file(base + "/b/" + std::string(name)) &&
                 a == read_file(base + "/c/" + std::string(name));
        }
        criterion(10, ok, "output files byte-identical across repeated runs with 1 and 2 worker "
                          "threads (5 files compared)");
    }

    // ---- criterion 11: placement constraints and element budgets ----
    {
        bool ok = true;
        for (const char *preset : {"dfd_3sector_isd200", "dfd_1sector_isd200"})
        {
            ScenarioConfig cfg = preset_config(preset);
            const NetworkLayout layout = layout_for(cfg);
            for (int drop = 0; drop < 2 && ok; ++drop)
            {
                ScenarioConfig one = cfg;
                one.drops = 1;
                one.master_seed = cfg.master_seed + drop; // independent geometries
                DropArtifacts art;
                run_scenario(one, &art);

                if (art.deployment.element_count() != 1824)
                    ok = false;
                for (int s = 0; s < layout.sector_count() && ok; ++s)
                {
                    const auto [first, last] = art.deployment.sector_ranges[s];
                    const Polygon &region = layout.sector(s).region;
                    for (int i = first; i < last && ok; ++i)
                    {
                        if (region.boundary_clearance(art.deployment.element_xy[i]) < 10.0 - 1e-9)
                            ok = false;
                        for (int j = i + 1; j < last; ++j)
                            if (distance(art.deployment.element_xy[i],
                                         art.deployment.element_xy[j]) < 2.0 - 1e-12)
                                ok = false;
                    }
                }
                for (const Vec2 &ue : art.ue_xy)
                    for (const Vec2 &ant : art.deployment.element_xy)
                        for (const Vec2 &s : layout.wraparound_shifts)
                            if (distance(ue, ant + s) < 10.0 - 1e-9)
                                ok = false;
            }
        }
        criterion(11, ok, "2 m pairwise, 10 m margin, 10 m wrapped exclusion hold on sampled drops; "
                          "element totals 1824 for both dfd kinds");
    }

    // ---- criterion 12: conjugate-beamforming correlation heatmaps ----
    {
        std::fprintf(stderr, "  running heatmaps ...\n");
        const HeatmapStats d3 = heatmap_stats("dfd_3sector_isd200");
        const HeatmapStats fd = heatmap_stats("fd_mimo_isd200");
        criterion(12, d3.peak_at_target && fd.peak_at_target && d3.body_std_db < fd.body_std_db,
                  "heatmap peak at target cell (both); spatial std excluding 3 dB peak "
                  "neighborhood: dfd " +
                      fmt(d3.body_std_db) + " dB < fd " + fmt(fd.body_std_db) + " dB");
    }

    std::printf("%d of 12 criteria passed\n", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
