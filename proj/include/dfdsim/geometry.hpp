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

#ifndef dfdsim_geometry_H
#define dfdsim_geometry_H

#include <cmath>
#include <limits>
#include <vector>

namespace dfdsim
{

constexpr double pi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * pi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / pi; }

// Wrap an angle in degrees to [-180, 180)
inline double wrap_deg(double deg)
{
    double a = std::fmod(deg + 180.0, 360.0);
    if (a < 0.0)
        a += 360.0;
    return a - 180.0;
}

struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2 &o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2 &o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
};

inline double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2 &a, const Vec2 &b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2 &a) { return std::hypot(a.x, a.y); }
inline double norm_sq(const Vec2 &a) { return a.x * a.x + a.y * a.y; }
inline double distance(const Vec2 &a, const Vec2 &b) { return norm(b - a); }

// Rotate a 2D vector counterclockwise by an angle in degrees
inline Vec2 rotate(const Vec2 &v, double angle_deg)
{
    double c = std::cos(deg2rad(angle_deg)), s = std::sin(deg2rad(angle_deg));
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

inline Vec2 polar(double radius, double angle_deg)
{
    return {radius * std::cos(deg2rad(angle_deg)), radius * std::sin(deg2rad(angle_deg))};
}

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec2 xy(const Vec3 &p) { return {p.x, p.y}; }

struct Bounds2
{
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

// Convex polygon with counterclockwise vertex order
struct Polygon
{
    std::vector<Vec2> vertices;

    double area() const
    {
        double s = 0.0;
        const size_t n = vertices.size();
        for (size_t i = 0; i < n; ++i)
        {
            const Vec2 &a = vertices[i], &b = vertices[(i + 1) % n];
            s += cross(a, b);
        }
        return 0.5 * s;
    }

    Vec2 centroid() const
    {
        double sx = 0.0, sy = 0.0, sa = 0.0;
        const size_t n = vertices.size();
        for (size_t i = 0; i < n; ++i)
        {
            const Vec2 &a = vertices[i], &b = vertices[(i + 1) % n];
            double c = cross(a, b);
            sa += c;
            sx += (a.x + b.x) * c;
            sy += (a.y + b.y) * c;
        }
        return {sx / (3.0 * sa), sy / (3.0 * sa)};
    }

    Bounds2 bounds() const
    {
        Bounds2 b{vertices[0].x, vertices[0].x, vertices[0].y, vertices[0].y};
        for (const Vec2 &v : vertices)
        {
            b.xmin = std::min(b.xmin, v.x);
            b.xmax = std::max(b.xmax, v.x);
            b.ymin = std::min(b.ymin, v.y);
            b.ymax = std::max(b.ymax, v.y);
        }
        return b;
    }

    // Minimum signed distance from p to the edge lines; positive inside.
    // For a convex CCW polygon this equals the clearance to the boundary,
    // and the set {clearance >= m} is the polygon eroded by m.
    double boundary_clearance(const Vec2 &p) const
    {
        double d = std::numeric_limits<double>::infinity();
        const size_t n = vertices.size();
        for (size_t i = 0; i < n; ++i)
        {
            const Vec2 &a = vertices[i], &b = vertices[(i + 1) % n];
            Vec2 e = b - a;
            d = std::min(d, cross(e, p - a) / norm(e));
        }
        return d;
    }

    bool contains(const Vec2 &p, double tol = 0.0) const
    {
        return boundary_clearance(p) >= -tol;
    }
};

} // namespace dfdsim

#endif
