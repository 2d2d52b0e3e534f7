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

#ifndef dfdsim_report_H
#define dfdsim_report_H

#include <string>

#include "dfdsim/config.hpp"
#include "dfdsim/experiments.hpp"
#include "dfdsim/metrics.hpp"

namespace dfdsim
{

// All numeric output uses 9 significant digits so that reruns are
// byte-comparable
std::string format_g9(double v);

void write_summary(const std::string &path, const ScenarioConfig &config, const MetricsReport &report);
void write_sinr_cdf_csv(const std::string &path, const MetricsReport &report);
void write_per_ue_csv(const std::string &path, const MetricsReport &report);
void write_layout_csv(const std::string &path, const NetworkLayout &layout, const DropArtifacts &drop0,
                      double ue_height_m);
void write_channel_csv(const std::string &path, const ChannelMatrix &channel,
                       const NetworkLayout &layout, const Deployment &deployment);
void write_heatmap_csv(const std::string &path, const HeatmapGrid &grid);
void write_sweep_csv(const std::string &path, const std::vector<SweepRow> &rows);
void write_text_file(const std::string &path, const std::string &content);

} // namespace dfdsim

#endif
