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

#ifndef dfdsim_antenna_H
#define dfdsim_antenna_H

#include <utility>
#include <vector>

#include "dfdsim/geometry.hpp"
#include "dfdsim/layout.hpp"
#include "dfdsim/rng.hpp"

namespace dfdsim
{

enum class PatternKind
{
    directional_3gpp,
    omni
};

// Element radiation pattern. The directional kind is the parabolic
// azimuth/elevation model with front-to-back clipping:
//   A(az, el) = peak - min( -(A_az + A_el), A_m )
//   A_az = -min( 12 (az/hpbw_az)^2, A_m ),  A_el = -min( 12 (el/hpbw_el)^2, SLA_v )
struct ElementPattern
{
    PatternKind kind = PatternKind::omni;
    double hpbw_az_deg = 65.0;
    double hpbw_el_deg = 65.0;
    double max_attenuation_db = 30.0; // A_m (front-to-back ratio)
    double sla_v_db = 30.0;
    double peak_gain_dbi = 0.0;

    static ElementPattern directional(double peak_gain_dbi = 8.0, double hpbw_deg = 65.0,
                                      double fbr_db = 30.0)
    {
        return {PatternKind::directional_3gpp, hpbw_deg, hpbw_deg, fbr_db, fbr_db, peak_gain_dbi};
    }

    static ElementPattern omni(double peak_gain_dbi = 0.0)
    {
        return {PatternKind::omni, 360.0, 360.0, 0.0, 0.0, peak_gain_dbi};
    }
};

// Gain in dB toward a direction given as offsets from the element boresight
double element_gain_db(const ElementPattern &pattern, double az_off_deg, double el_off_deg);

struct AntennaElement
{
    int id = 0;
    int sector_id = 0;
    Vec3 position;
    ElementPattern pattern;
    double bearing_deg = 0.0;  // boresight azimuth, CCW from +x
    double downtilt_deg = 0.0; // positive tilts the boresight below the horizon
};

// Gain of one element toward a target point, with the direction rotated into
// the element frame (bearing about z, then downtilt)
double element_gain_towards_db(const AntennaElement &elem, const Vec3 &target);

enum class ArrayTopology
{
    planar,
    circular,
    distributed
};

struct ArraySpec
{
    ArrayTopology topology = ArrayTopology::planar;
    int n_horizontal = 8;
    int n_vertical = 4;
    double spacing_h_wl = 0.5; // wavelengths
    double spacing_v_wl = 2.0;
    int elements_per_ring = 8;
    double arc_spacing_wl = 0.5;

    int element_count() const
    {
        return topology == ArrayTopology::circular ? elements_per_ring : n_horizontal * n_vertical;
    }
};

// Uniform planar array on a vertical plane facing `bearing`, centered at
// `center`. Horizontal extent (n_h-1)*spacing_h, vertical extent
// (n_v-1)*spacing_v (in wavelengths).
std::vector<AntennaElement> build_planar_array(const Vec3 &center, double bearing_deg,
                                               double downtilt_deg, const ArraySpec &spec,
                                               double wavelength_m, const ElementPattern &pattern,
                                               int sector_id, int first_element_id);

// Omni elements equally spaced on a horizontal circle of radius
// elements_per_ring * arc_spacing * wavelength / (2 pi)
std::vector<AntennaElement> build_circular_array(const Vec3 &center, const ArraySpec &spec,
                                                 double wavelength_m, const ElementPattern &pattern,
                                                 int sector_id, int first_element_id);

double circular_array_radius_m(const ArraySpec &spec, double wavelength_m);

enum class ScenarioKind
{
    fd_mimo,
    circular_arrays,
    dfd_3sector,
    dfd_1sector
};

int sectors_per_site_for(ScenarioKind kind);
int elements_per_sector_for(ScenarioKind kind);

struct DeploymentConfig
{
    double bs_height_m = 10.0;
    double wavelength_m = 0.0856549880; // 3.5 GHz
    double downtilt_deg = 0.0;
    PlacementConstraints constraints;
    ElementPattern directional_pattern = ElementPattern::directional();
    ElementPattern omni_pattern = ElementPattern::omni();
    int circular_arrays_per_sector = 4;
};

// Per-sector antenna element lists for one scenario. Immutable once built.
struct Deployment
{
    std::vector<AntennaElement> elements; // sector-major order
    // Half-open [first, last) element index range per global sector id
    std::vector<std::pair<int, int>> sector_ranges;
    std::vector<Vec2> element_xy; // cached 2D positions, same order as elements

    int element_count() const { return static_cast<int>(elements.size()); }
    int sector_element_count(int sector_id) const
    {
        return sector_ranges[sector_id].second - sector_ranges[sector_id].first;
    }
};

// Constructs the antenna deployment for one scenario kind over the layout.
// Distributed and circular-array positions are drawn from per-sector streams
// of `streams` so that the same (seed, drop, sector) always reproduces the
// same geometry, independent of how many sites the layout has.
Deployment build_deployment(const NetworkLayout &layout, ScenarioKind kind,
                            const DeploymentConfig &config, const StreamFactory &streams);

} // namespace dfdsim

#endif
