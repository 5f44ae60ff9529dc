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

#include "propkit/geo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "propkit/error.hpp"

namespace propkit::geo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double wrap_degrees(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    if (w >= 360.0) w -= 360.0;
    return w;
}

}  // namespace

void GeodeticPoint::validate() const {
    if (!(latitude >= -90.0 && latitude <= 90.0)) {
        throw ValidationError("latitude out of range [-90, 90]: " + std::to_string(latitude));
    }
    if (!(longitude >= -180.0 && longitude <= 180.0)) {
        throw ValidationError("longitude out of range [-180, 180]: " + std::to_string(longitude));
    }
    detail::require_finite(altitude_agl, "altitude_agl");
}

std::string to_string(LosLabel label) {
    switch (label) {
        case LosLabel::kLos: return "LOS";
        case LosLabel::kNlos: return "NLOS";
        case LosLabel::kUnknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

LosLabel los_label_from_string(std::string_view text) {
    if (text == "LOS") return LosLabel::kLos;
    if (text == "NLOS") return LosLabel::kNlos;
    if (text == "UNKNOWN" || text.empty()) return LosLabel::kUnknown;
    throw ValidationError("unknown LOS label: " + std::string(text));
}

void Polygon::validate() const {
    if (vertices.size() < 3) {
        throw ValidationError("polygon needs at least 3 vertices, got " +
                              std::to_string(vertices.size()));
    }
    for (const auto& v : vertices) v.validate();
    const auto& first = vertices.front();
    const auto& last = vertices.back();
    if (first.latitude == last.latitude && first.longitude == last.longitude) {
        throw ValidationError("polygon ring must not repeat its first vertex");
    }
}

double meridian_radius(double latitude_deg) {
    const double s = std::sin(latitude_deg * kDegToRad);
    const double w = 1.0 - kWgs84E2 * s * s;
    return kWgs84A * (1.0 - kWgs84E2) / (w * std::sqrt(w));
}

double prime_vertical_radius(double latitude_deg) {
    const double s = std::sin(latitude_deg * kDegToRad);
    return kWgs84A / std::sqrt(1.0 - kWgs84E2 * s * s);
}

LocalPoint to_local(const GeodeticPoint& origin, const GeodeticPoint& p) {
    origin.validate();
    p.validate();
    if (std::abs(p.latitude - origin.latitude) >= 1.0) {
        throw ValidationError("point more than 1 degree of latitude from the projection origin");
    }
    double dlon = p.longitude - origin.longitude;
    if (dlon > 180.0) dlon -= 360.0;
    if (dlon < -180.0) dlon += 360.0;

    const double m = meridian_radius(origin.latitude);
    const double n = prime_vertical_radius(origin.latitude);
    return LocalPoint{
        .east = n * std::cos(origin.latitude * kDegToRad) * dlon * kDegToRad,
        .north = m * (p.latitude - origin.latitude) * kDegToRad,
        .up = p.altitude_agl - origin.altitude_agl,
    };
}

GeodeticPoint from_local(const GeodeticPoint& origin, const LocalPoint& p) {
    origin.validate();
    const double m = meridian_radius(origin.latitude);
    const double n = prime_vertical_radius(origin.latitude);
    const double coslat = std::cos(origin.latitude * kDegToRad);
    if (coslat <= 0.0) throw DomainError("cannot project around a pole");
    GeodeticPoint out{
        .latitude = origin.latitude + p.north / m * kRadToDeg,
        .longitude = origin.longitude + p.east / (n * coslat) * kRadToDeg,
        .altitude_agl = origin.altitude_agl + p.up,
    };
    if (out.longitude > 180.0) out.longitude -= 360.0;
    if (out.longitude < -180.0) out.longitude += 360.0;
    out.validate();
    return out;
}

SlantRange distance_3d(const Station& bs, const Station& ue) {
    if (bs.antenna_height < 0.0 || ue.antenna_height < 0.0) {
        throw DomainError("antenna heights must be non-negative");
    }
    const double de = ue.ground.east - bs.ground.east;
    const double dn = ue.ground.north - bs.ground.north;
    const double dz = (ue.ground.up + ue.antenna_height) - (bs.ground.up + bs.antenna_height);
    const double h = std::hypot(de, dn);
    return SlantRange{.horizontal = h, .vertical = dz, .slant = std::hypot(h, dz)};
}

Bearing azimuth_elevation(const Station& bs, const Station& ue) {
    const double de = ue.ground.east - bs.ground.east;
    const double dn = ue.ground.north - bs.ground.north;
    const double dz = (ue.ground.up + ue.antenna_height) - (bs.ground.up + bs.antenna_height);
    const double h = std::hypot(de, dn);
    if (h == 0.0 && dz == 0.0) {
        throw DomainError("azimuth/elevation undefined for coincident points");
    }
    return Bearing{
        .azimuth = wrap_degrees(std::atan2(de, dn) * kRadToDeg),
        .elevation = std::atan2(dz, h) * kRadToDeg,
    };
}

GridIndex bin_index(const LocalPoint& p, double grid_size) {
    detail::require_positive(grid_size, "grid_size");
    return GridIndex{
        .ix = static_cast<std::int64_t>(std::floor(p.east / grid_size)),
        .iy = static_cast<std::int64_t>(std::floor(p.north / grid_size)),
    };
}

LocalPoint bin_center(const GridIndex& index, double grid_size) {
    detail::require_positive(grid_size, "grid_size");
    return LocalPoint{
        .east = (static_cast<double>(index.ix) + 0.5) * grid_size,
        .north = (static_cast<double>(index.iy) + 0.5) * grid_size,
        .up = 0.0,
    };
}

std::vector<LocalPoint> project_ring(const GeodeticPoint& origin, const Polygon& poly) {
    poly.validate();
    std::vector<LocalPoint> ring;
    ring.reserve(poly.vertices.size());
    for (const auto& v : poly.vertices) ring.push_back(to_local(origin, v));
    return ring;
}

bool point_in_polygon(const LocalPoint& p, std::span<const LocalPoint> ring) {
    if (ring.size() < 3) throw ValidationError("polygon needs at least 3 vertices");
    const double x = p.east;
    const double y = p.north;
    constexpr double kEps = 1e-9;

    bool inside = false;
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
        const double xi = ring[i].east, yi = ring[i].north;
        const double xj = ring[j].east, yj = ring[j].north;

        // on-segment test (boundary counts as inside)
        const double cross = (xj - xi) * (y - yi) - (yj - yi) * (x - xi);
        const double scale = std::max({1.0, std::abs(xj - xi), std::abs(yj - yi)});
        if (std::abs(cross) <= kEps * scale && x >= std::min(xi, xj) - kEps &&
            x <= std::max(xi, xj) + kEps && y >= std::min(yi, yj) - kEps &&
            y <= std::max(yi, yj) + kEps) {
            return true;
        }

        if ((yi > y) != (yj > y)) {
            const double x_cross = xi + (y - yi) * (xj - xi) / (yj - yi);
            if (x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool point_in_polygon(const GeodeticPoint& p, const Polygon& poly) {
    const auto ring = project_ring(p, poly);
    return point_in_polygon(LocalPoint{}, ring);
}

std::vector<Polygon> read_polygons_geojson(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("invalid GeoJSON: ") + e.what());
    }
    if (doc.value("type", "") != "FeatureCollection" || !doc.contains("features")) {
        throw ValidationError("GeoJSON root must be a FeatureCollection");
    }

    std::vector<Polygon> out;
    for (const auto& feature : doc.at("features")) {
        const auto& geom = feature.at("geometry");
        if (geom.value("type", "") != "Polygon") {
            throw ValidationError("only Polygon geometries are supported");
        }
        Polygon poly;
        const auto props = feature.value("properties", nlohmann::json::object());
        poly.label = props.value("los", false) ? LosLabel::kLos : LosLabel::kNlos;

        const auto& outer = geom.at("coordinates").at(0);
        for (const auto& c : outer) {
            // GeoJSON positions are [lon, lat]
            poly.vertices.push_back(GeodeticPoint{.latitude = c.at(1).get<double>(),
                                                  .longitude = c.at(0).get<double>()});
        }
        if (poly.vertices.size() > 1) {
            const auto& a = poly.vertices.front();
            const auto& b = poly.vertices.back();
            if (a.latitude == b.latitude && a.longitude == b.longitude) poly.vertices.pop_back();
        }
        poly.validate();
        out.push_back(std::move(poly));
    }
    return out;
}

std::vector<Polygon> load_polygons(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open polygon file: " + path);
    return read_polygons_geojson(in);
}

void write_polygons_geojson(std::ostream& out, std::span<const Polygon> polygons) {
    nlohmann::json features = nlohmann::json::array();
    for (const auto& poly : polygons) {
        nlohmann::json ring = nlohmann::json::array();
        for (const auto& v : poly.vertices) ring.push_back({v.longitude, v.latitude});
        ring.push_back({poly.vertices.front().longitude, poly.vertices.front().latitude});
        features.push_back({
            {"type", "Feature"},
            {"properties", {{"los", poly.label == LosLabel::kLos}}},
            {"geometry", {{"type", "Polygon"}, {"coordinates", {ring}}}},
        });
    }
    nlohmann::json doc{{"type", "FeatureCollection"}, {"features", features}};
    out << doc.dump(2) << '\n';
}

}  // namespace propkit::geo
