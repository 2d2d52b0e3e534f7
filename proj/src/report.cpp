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

#include "dfdsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dfdsim
{

std::string format_g9(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_text_file(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

void write_summary(const std::string &path, const ScenarioConfig &config, const MetricsReport &report)
{
    std::ostringstream s;
    s << "scenario_kind = " << to_string(config.scenario_kind) << "\n";
    s << "channel_model = " << to_string(config.channel_model) << "\n";
    s << "isd_m = " << format_g9(config.isd_m) << "\n";
    s << "sector_power_dbm = " << format_g9(config.sector_power_dbm) << "\n";
    s << "bs_height_m = " << format_g9(config.bs_height_m) << "\n";
    s << "ues_per_area = " << config.ues_per_area << "\n";
    s << "drops = " << report.drops << "\n";
    s << "areas = " << report.areas << "\n";
    s << "master_seed = " << config.master_seed << "\n";
    s << "isolated = " << (config.isolated ? "true" : "false") << "\n";
    s << "samples = " << report.per_ue_samples.size() << "\n";
    s << "area_throughput_bps = " << format_g9(report.area_throughput_bps) << "\n";
    s << "ue_throughput_p05_bps = " << format_g9(report.ue_throughput_p05_bps) << "\n";
    s << "median_sinr_db = " << format_g9(report.median_sinr_db) << "\n";
    s << "med_s_over_intra_db = " << format_g9(report.med_s_over_intra_db) << "\n";
    s << "med_s_over_inter_db = " << format_g9(report.med_s_over_inter_db) << "\n";
    s << "p_s_lt_intra = " << format_g9(report.p_s_lt_intra) << "\n";
    s << "p_s_lt_inter = " << format_g9(report.p_s_lt_inter) << "\n";
    write_text_file(path, s.str());
}

void write_sinr_cdf_csv(const std::string &path, const MetricsReport &report)
{
    std::ostringstream s;
    s << "value_db,cum_prob\n";
    for (const auto &[v, p] : report.sinr_cdf_db)
        s << format_g9(v) << "," << format_g9(p) << "\n";
    write_text_file(path, s.str());
}

void write_per_ue_csv(const std::string &path, const MetricsReport &report)
{
    std::ostringstream s;
    s << "drop,ue_id,site_id,sector_area_id,desired_w,intra_w,inter_w,noise_w,sinr_db,rate_bps\n";
    for (const LinkBudgetSample &x : report.per_ue_samples)
        s << x.drop << "," << x.ue_id << "," << x.site_id << "," << x.area_id << ","
          << format_g9(x.desired_w) << "," << format_g9(x.intra_interference_w) << ","
          << format_g9(x.inter_interference_w) << "," << format_g9(x.noise_w) << ","
          << format_g9(10.0 * std::log10(x.sinr)) << "," << format_g9(x.rate_bps) << "\n";
    write_text_file(path, s.str());
}

void write_layout_csv(const std::string &path, const NetworkLayout &layout, const DropArtifacts &drop0,
                      double ue_height_m)
{
    std::ostringstream s;
    s << "entity_kind,id,site_id,sector_id,x_m,y_m,z_m\n";
    for (const Site &site : layout.sites)
        s << "site," << site.id << "," << site.id << ",-1," << format_g9(site.center.x) << ","
          << format_g9(site.center.y) << ",0\n";
    for (const AntennaElement &e : drop0.deployment.elements)
        s << "antenna," << e.id << "," << layout.sector(e.sector_id).site_id << "," << e.sector_id
          << "," << format_g9(e.position.x) << "," << format_g9(e.position.y) << ","
          << format_g9(e.position.z) << "\n";
    for (size_t u = 0; u < drop0.ue_xy.size(); ++u)
        s << "ue," << u << "," << drop0.assignment.site_id[u] << ","
          << drop0.assignment.serving_sector[u] << "," << format_g9(drop0.ue_xy[u].x) << ","
          << format_g9(drop0.ue_xy[u].y) << "," << format_g9(ue_height_m) << "\n";
    write_text_file(path, s.str());
}

void write_channel_csv(const std::string &path, const ChannelMatrix &channel,
                       const NetworkLayout &layout, const Deployment &deployment)
{
    std::ostringstream s;
    s << "ue_id,elem_id,magnitude_db,phase_rad,chosen_shift\n";
    for (int u = 0; u < channel.n_ues(); ++u)
        for (int e = 0; e < channel.n_elements(); ++e)
        {
            const std::complex<double> c = channel.coefficient(u, e);
            const int site = layout.sector(deployment.elements[e].sector_id).site_id;
            s << u << "," << e << "," << format_g9(20.0 * std::log10(std::abs(c))) << ","
              << format_g9(std::arg(c)) << "," << channel.image(u, site) << "\n";
        }
    write_text_file(path, s.str());
}

void write_heatmap_csv(const std::string &path, const HeatmapGrid &grid)
{
    std::ostringstream s;
    s << "x_m,y_m,value_db\n";
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix)
        {
            const Vec2 c = grid.cell_center(ix, iy);
            const double v = grid.value(ix, iy);
            s << format_g9(c.x) << "," << format_g9(c.y) << ","
              << (std::isnan(v) ? std::string("nan") : format_g9(v)) << "\n";
        }
    write_text_file(path, s.str());
}

void write_sweep_csv(const std::string &path, const std::vector<SweepRow> &rows)
{
    std::ostringstream s;
    s << "isd_m,scenario_kind,p_s_lt_intra,p_s_lt_inter,med_s_over_intra_db,med_s_over_inter_db\n";
    for (const SweepRow &r : rows)
        s << format_g9(r.isd_m) << "," << to_string(r.scenario_kind) << ","
          << format_g9(r.p_s_lt_intra) << "," << format_g9(r.p_s_lt_inter) << ","
          << format_g9(r.med_s_over_intra_db) << "," << format_g9(r.med_s_over_inter_db) << "\n";
    write_text_file(path, s.str());
}

} // namespace dfdsim
