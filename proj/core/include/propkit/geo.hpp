// Copyright 2026 The propkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROPKIT_GEO_HPP
#define PROPKIT_GEO_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace propkit::geo {

inline constexpr double kWgs84A = 6378137.0;
inline constexpr double kWgs84F = 1.0 / 298.257223563;
inline constexpr double kWgs84E2 = kWgs84F * (2.0 - kWgs84F);

struct GeodeticPoint {
    double latitude = 0.0;   // degrees
    double longitude = 0.0;  // degrees
    double altitude_agl = 0.0;

    void validate() const;
    friend bool operator==(const GeodeticPoint&, const GeodeticPoint&) = default;
};

/// East/north/up offset in meters from a local tangent-plane origin.
struct LocalPoint {
    double east = 0.0;
    double north = 0.0;
    double up = 0.0;
};

struct GridIndex {
    std::int64_t ix = 0;
    std::int64_t iy = 0;

    friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

enum class LosLabel { kLos, kNlos, kUnknown };

std::string to_string(LosLabel label);
LosLabel los_label_from_string(std::string_view text);

struct Polygon {
    std::vector<GeodeticPoint> vertices;
    LosLabel label = LosLabel::kLos;

    /// Throws ValidationError for fewer than three vertices or a ring whose
    /// last vertex repeats the first.
    void validate() const;
};

/// A ground position plus the height of the antenna mounted there.
struct Station {
    LocalPoint ground;
    double antenna_height = 0.0;
};

struct SlantRange {
    double horizontal = 0.0;
    double vertical = 0.0;  // signed: ue minus bs antenna elevation
    double slant = 0.0;
};

struct Bearing {
    double azimuth = 0.0;    // [0, 360), clockwise from true north
    double elevation = 0.0;  // [-90, 90], negative below the bs antenna
};

/// Meridian and prime-vertical radii of curvature at a latitude (degrees).
double meridian_radius(double latitude_deg);
double prime_vertical_radius(double latitude_deg);

/// Equirectangular projection on the WGS84 radii at the origin latitude.
/// Valid for points within one degree of latitude from the origin.
LocalPoint to_local(const GeodeticPoint& origin, const GeodeticPoint& p);
GeodeticPoint from_local(const GeodeticPoint& origin, const LocalPoint& p);

SlantRange distance_3d(const Station& bs, const Station& ue);
Bearing azimuth_elevation(const Station& bs, const Station& ue);

GridIndex bin_index(const LocalPoint& p, double grid_size = 5.0);
LocalPoint bin_center(const GridIndex& index, double grid_size = 5.0);

/// Even-odd rule on the polygon projected around `origin`; points on an
/// edge or vertex count as inside.
bool point_in_polygon(const GeodeticPoint& p, const Polygon& poly);
bool point_in_polygon(const LocalPoint& p, std::span<const LocalPoint> ring);

std::vector<LocalPoint> project_ring(const GeodeticPoint& origin, const Polygon& poly);

/// Reads a GeoJSON FeatureCollection of Polygon features. The boolean
/// property "los" selects the label; the outer ring is used and a closing
/// vertex equal to the first is dropped.
std::vector<Polygon> read_polygons_geojson(std::istream& in);
std::vector<Polygon> load_polygons(const std::string& path);
void write_polygons_geojson(std::ostream& out, std::span<const Polygon> polygons);

}  // namespace propkit::geo

#endif  // PROPKIT_GEO_HPP
