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

#include "dfdsim/layout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfdsim
{

namespace
{

// Lattice basis of the triangular site grid: neighbors at 0° and 60°
Vec2 basis_u(double isd) { return {isd, 0.0}; }
Vec2 basis_v(double isd) { return {0.5 * isd, 0.5 * std::sqrt(3.0) * isd}; }

// Hexagonal ring index of lattice coordinates (i, j)
int hex_ring(int i, int j)
{
    int k = -i - j;
    return (std::abs(i) + std::abs(j) + std::abs(k)) / 2;
}

// 120° wedge of the site's Voronoi hexagon centered on `bearing_deg`.
// The hexagon has apothem isd/2 (edge midpoints toward the 6 neighbors)
// and circumradius isd/sqrt(3); the wedge boundary rays at bearing ± 60°
// meet the hexagon boundary at the apothem points.
Polygon hex_wedge(const Vec2 &center, double isd, double bearing_deg)
{
    const double apothem = 0.5 * isd;
    const double circum = isd / std::sqrt(3.0);
    Polygon p;
    p.vertices = {
        center,
        center + polar(apothem, bearing_deg - 60.0),
        center + polar(circum, bearing_deg - 30.0),
        center + polar(circum, bearing_deg + 30.0),
        center + polar(apothem, bearing_deg + 60.0),
    };
    return p;
}

Polygon voronoi_hexagon(const Vec2 &center, double isd)
{
    const double circum = isd / std::sqrt(3.0);
    Polygon p;
    for (int k = 0; k < 6; ++k)
        p.vertices.push_back(center + polar(circum, 30.0 + 60.0 * k));
    return p;
}

} // namespace

const Polygon &NetworkLayout::area(int a) const
{
    const Site &site = sites[a / 3];
    if (sectors_per_site == 1)
        return site.sectors[0].areas[a % 3];
    return site.sectors[a % 3].areas[0];
}

NetworkLayout build_hex_layout(double isd_m, int rings, int sectors_per_site, bool wraparound)
{
    if (isd_m <= 0.0)
        throw std::invalid_argument("build_hex_layout: isd must be positive");
    if (rings < 0)
        throw std::invalid_argument("build_hex_layout: rings must be >= 0");
    if (sectors_per_site != 1 && sectors_per_site != 3)
        throw std::invalid_argument("build_hex_layout: sectors_per_site must be 1 or 3");

    const Vec2 u = basis_u(isd_m), v = basis_v(isd_m);

    // Sites ordered ring by ring, then by angle, so site 0 is always the
    // center site and the ordering is stable for any ring count.
    struct Coord
    {
        int i, j, ring;
        double angle;
    };
    std::vector<Coord> coords;
    for (int i = -rings; i <= rings; ++i)
        for (int j = -rings; j <= rings; ++j)
        {
            int r = hex_ring(i, j);
            if (r > rings)
                continue;
            Vec2 pos = u * static_cast<double>(i) + v * static_cast<double>(j);
            double ang = (r == 0) ? 0.0 : std::atan2(pos.y, pos.x);
            if (ang < -1e-12)
                ang += 2.0 * pi;
            coords.push_back({i, j, r, ang});
        }
    std::sort(coords.begin(), coords.end(), [](const Coord &a, const Coord &b) {
        if (a.ring != b.ring)
            return a.ring < b.ring;
        return a.angle < b.angle;
    });

    NetworkLayout layout;
    layout.isd_m = isd_m;
    layout.sectors_per_site = sectors_per_site;
    layout.wraparound = wraparound;

    int sector_id = 0;
    for (size_t s = 0; s < coords.size(); ++s)
    {
        Site site;
        site.id = static_cast<int>(s);
        site.center = u * static_cast<double>(coords[s].i) + v * static_cast<double>(coords[s].j);

        if (sectors_per_site == 3)
        {
            for (int k = 0; k < 3; ++k)
            {
                Sector sec;
                sec.id = sector_id++;
                sec.site_id = site.id;
                sec.bearing_deg = 120.0 * k;
                sec.region = hex_wedge(site.center, isd_m, sec.bearing_deg);
                sec.areas = {sec.region};
                site.sectors.push_back(std::move(sec));
            }
        }
        else
        {
            Sector sec;
            sec.id = sector_id++;
            sec.site_id = site.id;
            sec.bearing_deg = 0.0;
            sec.region = voronoi_hexagon(site.center, isd_m);
            for (int k = 0; k < 3; ++k)
                sec.areas.push_back(hex_wedge(site.center, isd_m, 120.0 * k));
            site.sectors.push_back(std::move(sec));
        }
        layout.sites.push_back(std::move(site));
    }

    layout.wraparound_shifts.push_back({0.0, 0.0});
    if (wraparound && rings > 0)
    {
        // 19-cell cluster translation i=3, j=2 and its 60° rotations
        Vec2 d = u * 3.0 + v * 2.0;
        for (int k = 0; k < 6; ++k)
            layout.wraparound_shifts.push_back(rotate(d, 60.0 * k));
    }

    return layout;
}

std::pair<Vec2, int> wrapped_displacement(const Vec2 &a, const Vec2 &b, const NetworkLayout &layout)
{
    Vec2 best = b - a;
    int best_idx = 0;
    double best_d2 = norm_sq(best);
    for (size_t k = 1; k < layout.wraparound_shifts.size(); ++k)
    {
        Vec2 cand = b + layout.wraparound_shifts[k] - a;
        double d2 = norm_sq(cand);
        if (d2 < best_d2)
        {
            best_d2 = d2;
            best = cand;
            best_idx = static_cast<int>(k);
        }
    }
    return {best, best_idx};
}

std::vector<Vec2> sample_antenna_positions(const Polygon &region, int count,
                                           const PlacementConstraints &constraints,
                                           RandomStream &rng, const std::string &label)
{
    if (count < 0)
        throw std::invalid_argument("sample_antenna_positions: count must be >= 0");
    if (region.vertices.size() < 3)
        throw std::invalid_argument("sample_antenna_positions: degenerate region");

    const Bounds2 bb = region.bounds();
    std::vector<Vec2> placed;
    placed.reserve(count);

    for (int n = 0; n < count; ++n)
    {
        bool ok = false;
        for (int attempt = 0; attempt < constraints.max_attempts; ++attempt)
        {
            Vec2 p{rng.uniform(bb.xmin, bb.xmax), rng.uniform(bb.ymin, bb.ymax)};
            if (region.boundary_clearance(p) < constraints.boundary_margin_m)
                continue;
            bool clash = false;
            for (const Vec2 &q : placed)
                if (distance(p, q) < constraints.min_pairwise_distance_m)
                {
                    clash = true;
                    break;
                }
            if (clash)
                continue;
            placed.push_back(p);
            ok = true;
            break;
        }
        if (!ok)
            throw std::runtime_error("antenna placement failed in region '" + label + "': point " +
                                     std::to_string(n + 1) + " of " + std::to_string(count) +
                                     " not placeable within " +
                                     std::to_string(constraints.max_attempts) + " attempts");
    }
    return placed;
}

std::vector<Vec2> sample_ue_positions(const Polygon &area, int count,
                                      std::span<const Vec2> antenna_xy,
                                      const PlacementConstraints &constraints,
                                      std::span<const Vec2> wrap_shifts,
                                      RandomStream &rng, const std::string &label)
{
    if (count < 0)
        throw std::invalid_argument("sample_ue_positions: count must be >= 0");
    if (area.vertices.size() < 3)
        throw std::invalid_argument("sample_ue_positions: degenerate area");

    const Bounds2 bb = area.bounds();
    const double excl2 = constraints.exclusion_radius_m * constraints.exclusion_radius_m;
    static const Vec2 zero_shift{0.0, 0.0};
    std::span<const Vec2> shifts = wrap_shifts.empty() ? std::span<const Vec2>(&zero_shift, 1) : wrap_shifts;

    std::vector<Vec2> placed;
    placed.reserve(count);

    for (int n = 0; n < count; ++n)
    {
        bool ok = false;
        for (int attempt = 0; attempt < constraints.max_attempts; ++attempt)
        {
            Vec2 p{rng.uniform(bb.xmin, bb.xmax), rng.uniform(bb.ymin, bb.ymax)};
            if (!area.contains(p))
                continue;
            bool excluded = false;
            for (const Vec2 &ant : antenna_xy)
            {
                for (const Vec2 &s : shifts)
                {
                    if (norm_sq(ant + s - p) < excl2)
                    {
                        excluded = true;
                        break;
                    }
                }
                if (excluded)
                    break;
            }
            if (excluded)
                continue;
            placed.push_back(p);
            ok = true;
            break;
        }
        if (!ok)
            throw std::runtime_error("UE placement failed in area '" + label + "': point " +
                                     std::to_string(n + 1) + " of " + std::to_string(count) +
                                     " not placeable within " +
                                     std::to_string(constraints.max_attempts) + " attempts");
    }
    return placed;
}

} // namespace dfdsim
