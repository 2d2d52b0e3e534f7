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

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dfdsim/config.hpp"
#include "dfdsim/report.hpp"

namespace fs = std::filesystem;
using namespace dfdsim;

namespace
{

struct CommonOpts
{
    std::string preset;
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> drops;
    std::optional<int> threads;
};

void add_common(CLI::App *cmd, CommonOpts &opts, bool scenario_required = true)
{
    auto *p = cmd->add_option("--preset", opts.preset, "Scenario preset name (see list-presets)");
    auto *c = cmd->add_option("--config", opts.config_path, "JSON config file");
    if (scenario_required)
    {
        p->excludes(c);
        c->excludes(p);
    }
    cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "Override the master seed");
    cmd->add_option("--drops", opts.drops, "Override the drop count");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware)");
}

ScenarioConfig resolve_config(const CommonOpts &opts)
{
    ScenarioConfig cfg;
    if (!opts.config_path.empty())
    {
        std::vector<std::string> warnings;
        cfg = parse_config(opts.config_path, &warnings);
        for (const std::string &w : warnings)
            std::cerr << "warning: " << w << "\n";
    }
    else if (!opts.preset.empty())
        cfg = preset_config(opts.preset);
    else
        throw std::invalid_argument("either --preset or --config is required");

    if (opts.seed)
        cfg.master_seed = *opts.seed;
    if (opts.drops)
        cfg.drops = *opts.drops;
    if (opts.threads)
        cfg.threads = *opts.threads;
    cfg.validate();
    return cfg;
}

void ensure_out_dir(const std::string &dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory: " + dir);
}

std::string join(const std::string &dir, const std::string &name)
{
    return (fs::path(dir) / name).string();
}

int cmd_run(const CommonOpts &opts, bool isolated, bool dump_channel)
{
    ScenarioConfig cfg = resolve_config(opts);
    if (isolated)
        cfg.isolated = true;

    DropArtifacts drop0;
    drop0.want_channel = dump_channel;
    const MetricsReport report =
        cfg.isolated ? run_isolated_cell(cfg, &drop0) : run_scenario(cfg, &drop0);

    ensure_out_dir(opts.out_dir);
    write_text_file(join(opts.out_dir, "resolved_config.json"), emit_config(cfg));
    write_summary(join(opts.out_dir, "summary.txt"), cfg, report);
    write_sinr_cdf_csv(join(opts.out_dir, "sinr_cdf.csv"), report);
    write_per_ue_csv(join(opts.out_dir, "per_ue.csv"), report);
    write_layout_csv(join(opts.out_dir, "layout.csv"), layout_for(cfg), drop0, cfg.ue_height_m);
    if (dump_channel)
        write_channel_csv(join(opts.out_dir, "channel.csv"), drop0.channel, layout_for(cfg),
                          drop0.deployment);

    std::cout << "wrote " << opts.out_dir << ": area throughput "
              << format_g9(report.area_throughput_bps / 1e6) << " Mbit/s, median SINR "
              << format_g9(report.median_sinr_db) << " dB over " << report.per_ue_samples.size()
              << " UE samples\n";
    return 0;
}

int cmd_sweep(const CommonOpts &opts, const std::vector<double> &isd_list)
{
    const ScenarioConfig base = resolve_config(opts);
    const std::vector<double> isds = isd_list.empty()
                                         ? std::vector<double>{200.0, 300.0, 400.0, 500.0}
                                         : isd_list;
    const std::vector<SweepRow> rows = isd_sweep(base, isds);
    ensure_out_dir(opts.out_dir);
    write_sweep_csv(join(opts.out_dir, "sweep.csv"), rows);
    std::cout << "wrote " << join(opts.out_dir, "sweep.csv") << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_heatmap(const CommonOpts &opts, int sector, std::optional<double> tx, std::optional<double> ty,
                double resolution)
{
    const ScenarioConfig cfg = resolve_config(opts);
    Vec2 target;
    if (tx && ty)
        target = {*tx, *ty};
    else if (!tx && !ty)
        target = default_heatmap_target(cfg, sector, resolution);
    else
        throw std::invalid_argument("--target-x and --target-y must be given together");

    const HeatmapGrid grid = spatial_correlation_heatmap(cfg, sector, target, resolution);
    ensure_out_dir(opts.out_dir);
    write_heatmap_csv(join(opts.out_dir, "heatmap.csv"), grid);
    std::cout << "wrote " << join(opts.out_dir, "heatmap.csv") << " (" << grid.nx << "x" << grid.ny
              << " cells, target " << format_g9(target.x) << "," << format_g9(target.y) << ")\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"dfdsim: system-level simulator for distributed FD-MIMO downlink networks"};
    app.require_subcommand(1);

    CommonOpts run_opts, iso_opts, sweep_opts, heat_opts;
    bool dump_channel = false;
    std::vector<double> isd_list;
    int sector = 0;
    std::optional<double> target_x, target_y;
    double resolution = 1.0;

    CLI::App *run = app.add_subcommand("run", "Run one scenario and write its report files");
    add_common(run, run_opts);
    run->add_flag("--dump-channel", dump_channel, "Also write the drop-0 channel matrix CSV");

    CLI::App *iso = app.add_subcommand("isolated", "Run a scenario as a single isolated cell");
    add_common(iso, iso_opts);

    CLI::App *sweep = app.add_subcommand("sweep", "Interference-decomposition sweep over ISDs");
    add_common(sweep, sweep_opts);
    sweep->add_option("--isd-list", isd_list, "ISD grid in meters")->delimiter(',');

    CLI::App *heat = app.add_subcommand("heatmap", "Conjugate-beamforming spatial-correlation map");
    add_common(heat, heat_opts);
    heat->add_option("--sector", sector, "Sector id")->capture_default_str();
    heat->add_option("--target-x", target_x, "Target UE x (meters)");
    heat->add_option("--target-y", target_y, "Target UE y (meters)");
    heat->add_option("--resolution", resolution, "Grid resolution (meters)")->capture_default_str();

    CLI::App *list = app.add_subcommand("list-presets", "List the scenario presets");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (list->parsed())
        {
            for (const std::string &name : preset_names())
                std::cout << name << "\n";
            return 0;
        }
        if (run->parsed())
            return cmd_run(run_opts, false, dump_channel);
        if (iso->parsed())
            return cmd_run(iso_opts, true, false);
        if (sweep->parsed())
            return cmd_sweep(sweep_opts, isd_list);
        if (heat->parsed())
            return cmd_heatmap(heat_opts, sector, target_x, target_y, resolution);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
