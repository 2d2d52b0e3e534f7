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

#include "dfdsim/antenna.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dfdsim
{

double element_gain_db(const ElementPattern &pattern, double az_off_deg, double el_off_deg)
{
    if (pattern.kind == PatternKind::omni)
        return pattern.peak_gain_dbi;

    const double az = wrap_deg(az_off_deg);
    const double el = wrap_deg(el_off_deg);
    const double att_az = std::min(12.0 * (az / pattern.hpbw_az_deg) * (az / pattern.hpbw_az_deg),
                                   pattern.max_attenuation_db);
    const double att_el = std::min(12.0 * (el / pattern.hpbw_el_deg) * (el / pattern.hpbw_el_deg),
                                   pattern.sla_v_db);
    const double att = std::min(att_az + att_el, pattern.max_attenuation_db);
    return pattern.peak_gain_dbi - att;
}

double element_gain_towards_db(const AntennaElement &elem, const Vec3 &target)
{
    if (elem.pattern.kind == PatternKind::omni)
        return elem.pattern.peak_gain_dbi;

    // Direction to target, rotated into the element frame: undo the bearing
    // about z, then the downtilt about the local y axis. Boresight is +x'.
    const double dx = target.x - elem.position.x;
    const double dy = target.y - elem.position.y;
    const double dz = target.z - elem.position.z;

    const double cb = std::cos(deg2rad(elem.bearing_deg)), sb = std::sin(deg2rad(elem.bearing_deg));
    const double x1 = cb * dx + sb * dy;
    const double y1 = -sb * dx + cb * dy;

    const double ct = std::cos(deg2rad(elem.downtilt_deg)), st = std::sin(deg2rad(elem.downtilt_deg));
    const double x2 = ct * x1 - st * dz; // downtilt rotates boresight downward
    const double z2 = st * x1 + ct * dz;

    const double az = rad2deg(std::atan2(y1, x2));
    const double el = rad2deg(std::atan2(z2, std::hypot(x2, y1)));
    return element_gain_db(elem.pattern, az, el);
}

std::vector<AntennaElement> build_planar_array(const Vec3 &center, double bearing_deg,
                                               double downtilt_deg, const ArraySpec &spec,
                                               double wavelength_m, const ElementPattern &pattern,
                                               int sector_id, int first_element_id)
{
    if (spec.topology != ArrayTopology::planar)
        throw std::invalid_argument("build_planar_array: spec topology is not planar");

    // The array plane is vertical and perpendicular to the boresight; the
    // horizontal axis of the array points 90° CCW from the bearing.
    const Vec2 across = polar(1.0, bearing_deg + 90.0);
    const double dh = spec.spacing_h_wl * wavelength_m;
    const double dv = spec.spacing_v_wl * wavelength_m;

    std::vector<AntennaElement> out;
    out.reserve(spec.element_count());
    int id = first_element_id;
    for (int iv = 0; iv < spec.n_vertical; ++iv)
        for (int ih = 0; ih < spec.n_horizontal; ++ih)
        {
            const double th = (ih - 0.5 * (spec.n_horizontal - 1)) * dh;
            const double tv = (iv - 0.5 * (spec.n_vertical - 1)) * dv;
            AntennaElement e;
            e.id = id++;
            e.sector_id = sector_id;
            e.position = {center.x + th * across.x, center.y + th * across.y, center.z + tv};
            e.pattern = pattern;
            e.bearing_deg = bearing_deg;
            e.downtilt_deg = downtilt_deg;
            out.push_back(e);
        }
    return out;
}

double circular_array_radius_m(const ArraySpec &spec, double wavelength_m)
{
    return spec.elements_per_ring * spec.arc_spacing_wl * wavelength_m / (2.0 * pi);
}

std::vector<AntennaElement> build_circular_array(const Vec3 &center, const ArraySpec &spec,
                                                 double wavelength_m, const ElementPattern &pattern,
                                                 int sector_id, int first_element_id)
{
    if (spec.topology != ArrayTopology::circular)
        throw std::invalid_argument("build_circular_array: spec topology is not circular");

    const double r = spec.elements_per_ring > 1 ? circular_array_radius_m(spec, wavelength_m) : 0.0;
    std::vector<AntennaElement> out;
    out.reserve(spec.elements_per_ring);
    for (int k = 0; k < spec.elements_per_ring; ++k)
    {
        const double ang = 360.0 * k / spec.elements_per_ring;
        AntennaElement e;
        e.id = first_element_id + k;
        e.sector_id = sector_id;
        e.position = {center.x + r * std::cos(deg2rad(ang)), center.y + r * std::sin(deg2rad(ang)),
                      center.z};
        e.pattern = pattern;
        e.bearing_deg = 0.0;
        e.downtilt_deg = 0.0;
        out.push_back(e);
    }
    return out;
}

int sectors_per_site_for(ScenarioKind kind)
{
    return kind == ScenarioKind::dfd_1sector ? 1 : 3;
}

int elements_per_sector_for(ScenarioKind kind)
{
    return kind == ScenarioKind::dfd_1sector ? 96 : 32;
}

Deployment build_deployment(const NetworkLayout &layout, ScenarioKind kind,
                            const DeploymentConfig &config, const StreamFactory &streams)
{
    if (layout.sectors_per_site != sectors_per_site_for(kind))
        throw std::invalid_argument("build_deployment: layout sectors_per_site does not match scenario kind");

    Deployment dep;
    dep.sector_ranges.resize(layout.sector_count());

    for (const Site &site : layout.sites)
        for (const Sector &sec : site.sectors)
        {
            const int first = dep.element_count();
            const std::string label = "sector " + std::to_string(sec.id);

            switch (kind)
            {
            case ScenarioKind::fd_mimo:
            {
                ArraySpec spec; // 8H x 4V planar, (0.5, 2.0) wavelength spacing
                Vec3 center{site.center.x, site.center.y, config.bs_height_m};
                auto elems = build_planar_array(center, sec.bearing_deg, config.downtilt_deg, spec,
                                                config.wavelength_m, config.directional_pattern,
                                                sec.id, first);
                dep.elements.insert(dep.elements.end(), elems.begin(), elems.end());
                break;
            }
            case ScenarioKind::circular_arrays:
            {
                ArraySpec spec;
                spec.topology = ArrayTopology::circular;
                RandomStream rng = streams.make(StreamPurpose::antenna_placement, sec.id);
                auto centers = sample_antenna_positions(sec.region, config.circular_arrays_per_sector,
                                                        config.constraints, rng, label);
                for (const Vec2 &c : centers)
                {
                    auto elems = build_circular_array({c.x, c.y, config.bs_height_m}, spec,
                                                      config.wavelength_m, config.omni_pattern,
                                                      sec.id, dep.element_count());
                    dep.elements.insert(dep.elements.end(), elems.begin(), elems.end());
                }
                break;
            }
            case ScenarioKind::dfd_3sector:
            case ScenarioKind::dfd_1sector:
            {
                const int n = elements_per_sector_for(kind);
                RandomStream rng = streams.make(StreamPurpose::antenna_placement, sec.id);
                auto positions = sample_antenna_positions(sec.region, n, config.constraints, rng, label);
                for (const Vec2 &p : positions)
                {
                    AntennaElement e;
                    e.id = dep.element_count();
                    e.sector_id = sec.id;
                    e.position = {p.x, p.y, config.bs_height_m};
                    e.pattern = config.omni_pattern;
                    dep.elements.push_back(e);
                }
                break;
            }
            }
            dep.sector_ranges[sec.id] = {first, dep.element_count()};
        }

    dep.element_xy.reserve(dep.elements.size());
    for (const AntennaElement &e : dep.elements)
        dep.element_xy.push_back(xy(e.position));
    return dep;
}

} // namespace dfdsim
