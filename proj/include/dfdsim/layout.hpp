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

#ifndef dfdsim_layout_H
#define dfdsim_layout_H

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dfdsim/geometry.hpp"
#include "dfdsim/rng.hpp"

namespace dfdsim
{

// One sector of a site. For 3-sector sites the region is a 120° wedge of the
// site's Voronoi hexagon centered on the sector bearing; for 1-sector sites
// the region is the full hexagon. `areas` are the 120° wedges used as the
// unit of UE loading: one wedge (the region itself) for 3-sector sites,
// all three wedges for 1-sector sites.
struct Sector
{
    int id = 0;      // global sector id, site-major
    int site_id = 0; // owning site
    double bearing_deg = 0.0;
    Polygon region;
    std::vector<Polygon> areas;
};

struct Site
{
    int id = 0;
    Vec2 center;
    std::vector<Sector> sectors;
};

// Hexagonal multi-site network geometry. Immutable after construction and
// safe to share across worker threads.
struct NetworkLayout
{
    double isd_m = 0.0;
    int sectors_per_site = 3;
    bool wraparound = false;
    std::vector<Site> sites;
    // Translation vectors of the wraparound images. Index 0 is always the
    // zero shift; when wraparound is enabled the 6 nonzero cluster shifts
    // (length sqrt(19)*isd) follow.
    std::vector<Vec2> wraparound_shifts;

    int site_count() const { return static_cast<int>(sites.size()); }
    int sector_count() const { return site_count() * sectors_per_site; }
    int area_count() const { return site_count() * 3; } // always 3 areas per site

    const Sector &sector(int global_id) const
    {
        return sites[global_id / sectors_per_site].sectors[global_id % sectors_per_site];
    }

    // Area with global id a (site-major, 3 per site)
    const Polygon &area(int a) const;

    // Global id of the sector serving the UEs loaded into area a
    int area_serving_sector(int a) const
    {
        return sectors_per_site == 1 ? (a / 3) : a;
    }

    double hex_circumradius() const { return isd_m / std::sqrt(3.0); }
};

// Placement constraints for antennas (minimum pairwise distance and boundary
// margin) and UEs (exclusion radius around every antenna).
struct PlacementConstraints
{
    double min_pairwise_distance_m = 2.0;
    double boundary_margin_m = 10.0;
    double exclusion_radius_m = 10.0;
    int max_attempts = 10000;

    friend bool operator==(const PlacementConstraints &, const PlacementConstraints &) = default;
};

// Builds a hexagonal grid with the given number of rings around a center
// site (rings=2 gives the standard 19-site cluster). With wraparound enabled
// the 6 nonzero shifts come from the 19-cell cluster basis (i=3, j=2).
NetworkLayout build_hex_layout(double isd_m, int rings, int sectors_per_site, bool wraparound);

// Minimum-distance displacement from a to b over all wraparound images of b.
// Returns (b + shift - a, index of the chosen shift). Ties go to the lowest
// shift index, so the zero shift wins when equal.
std::pair<Vec2, int> wrapped_displacement(const Vec2 &a, const Vec2 &b, const NetworkLayout &layout);

// Uniform rejection sampling of antenna positions inside `region` eroded by
// the boundary margin, with the minimum pairwise distance enforced against
// all previously placed points. Throws std::runtime_error naming `label`
// when a point cannot be placed within max_attempts draws.
std::vector<Vec2> sample_antenna_positions(const Polygon &region, int count,
                                           const PlacementConstraints &constraints,
                                           RandomStream &rng, const std::string &label = "");

// Uniform rejection sampling of UE positions inside one area. A candidate is
// rejected when any wraparound image of any antenna lies within the exclusion
// radius (2D distance), so the path-loss validity range d2d >= exclusion is
// guaranteed for every link under every image.
std::vector<Vec2> sample_ue_positions(const Polygon &area, int count,
                                      std::span<const Vec2> antenna_xy,
                                      const PlacementConstraints &constraints,
                                      std::span<const Vec2> wrap_shifts,
                                      RandomStream &rng, const std::string &label = "");

} // namespace dfdsim

#endif
