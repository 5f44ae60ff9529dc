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

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "propkit/error.hpp"
#include "propkit/geo.hpp"

using namespace propkit;
using namespace propkit::geo;

namespace {

// Meridian arc length by composite Simpson integration of M(phi).
double meridian_arc(double lat0_deg, double lat1_deg) {
    const double a = kWgs84A, e2 = kWgs84E2;
    const double deg = std::acos(-1.0) / 180.0;
    const int n = 200;
    const double h = (lat1_deg - lat0_deg) * deg / n;
    auto m = [&](double phi) {
        const double s = std::sin(phi);
        return a * (1 - e2) / std::pow(1 - e2 * s * s, 1.5);
    };
    double sum = m(lat0_deg * deg) + m(lat1_deg * deg);
    for (int i = 1; i < n; ++i) sum += m(lat0_deg * deg + i * h) * (i % 2 ? 4 : 2);
    return sum * h / 3.0;
}

// Winding number around a closed ring; boundary points are not probed.
int winding_number(const LocalPoint& p, const std::vector<LocalPoint>& ring) {
    int wn = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto& u = ring[i];
        const auto& v = ring[(i + 1) % ring.size()];
        const double cross = (v.east - u.east) * (p.north - u.north) - (p.east - u.east) * (v.north - u.north);
        if (u.north <= p.north) {
            if (v.north > p.north && cross > 0) ++wn;
        } else if (v.north <= p.north && cross < 0) {
            --wn;
        }
    }
    return wn;
}

}  // namespace

TEST_CASE("to_local at the origin is zero") {
    const GeodeticPoint o{47.0, 8.0, 0.0};
    const auto p = to_local(o, o);
    CHECK(p.east == 0.0);
    CHECK(p.north == 0.0);
    CHECK(p.up == 0.0);
}

TEST_CASE("to_local north offset matches the meridian arc") {
    const GeodeticPoint o{47.0, 8.0, 0.0};
    const auto p = to_local(o, GeodeticPoint{47.001, 8.0, 0.0});
    const double oracle = meridian_arc(47.0, 47.001);
    CHECK(p.north == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(std::abs(p.north - 111.2) < 0.2);
    CHECK(std::abs(p.east) < 1e-9);
}

TEST_CASE("to_local east offset matches the parallel arc") {
    const GeodeticPoint o{47.0, 8.0, 0.0};
    const auto p = to_local(o, GeodeticPoint{47.0, 8.001, 0.0});
    const double deg = std::acos(-1.0) / 180.0;
    const double s = std::sin(47.0 * deg);
    const double rn = kWgs84A / std::sqrt(1 - kWgs84E2 * s * s);
    CHECK(p.east == doctest::Approx(rn * std::cos(47.0 * deg) * 0.001 * deg).epsilon(1e-9));
    CHECK(std::abs(p.east - 75.9) < 0.2);
}

TEST_CASE("to_local and from_local round-trip") {
    const GeodeticPoint o{46.8, 7.15, 0.0};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3000.0, 3000.0);
    for (int i = 0; i < 200; ++i) {
        const LocalPoint p{u(rng), u(rng), 0.0};
        const auto back = to_local(o, from_local(o, p));
        CHECK(back.east == doctest::Approx(p.east).epsilon(1e-9));
        CHECK(back.north == doctest::Approx(p.north).epsilon(1e-9));
    }
}

TEST_CASE("invalid coordinates are rejected") {
    const GeodeticPoint o{47.0, 8.0, 0.0};
    CHECK_THROWS_AS(to_local(o, GeodeticPoint{91.0, 8.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(to_local(o, GeodeticPoint{47.0, 181.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(to_local(o, GeodeticPoint{49.0, 8.0, 0.0}), ValidationError);
}

TEST_CASE("distance_3d") {
    SUBCASE("co-located equal heights") {
        const auto r = distance_3d(Station{{}, 10.0}, Station{{}, 10.0});
        CHECK(r.horizontal == 0.0);
        CHECK(r.slant == 0.0);
    }
    SUBCASE("300 m horizontal") {
        const auto r = distance_3d(Station{{}, 29.4}, Station{{300.0, 0.0, 0.0}, 1.4});
        CHECK(r.slant == doctest::Approx(std::sqrt(300.0 * 300.0 + 28.0 * 28.0)));
        CHECK(r.slant == doctest::Approx(301.30).epsilon(1e-4));
    }
    SUBCASE("pure vertical") {
        const auto r = distance_3d(Station{{}, 24.5}, Station{{}, 2.1});
        CHECK(r.slant == doctest::Approx(22.4));
        CHECK(r.horizontal == 0.0);
    }
}

TEST_CASE("azimuth_elevation") {
    const Station bs{{}, 10.0};
    auto north = azimuth_elevation(bs, Station{{0.0, 100.0, 0.0}, 10.0});
    CHECK(north.azimuth == doctest::Approx(0.0));
    CHECK(north.elevation == doctest::Approx(0.0));

    auto east = azimuth_elevation(Station{{}, 24.5}, Station{{100.0, 0.0, 0.0}, 2.1});
    CHECK(east.azimuth == doctest::Approx(90.0));
    CHECK(east.elevation == doctest::Approx(std::atan(-22.4 / 100.0) * 180.0 / std::acos(-1.0)));
    CHECK(east.elevation == doctest::Approx(-12.63).epsilon(1e-3));

    auto south = azimuth_elevation(bs, Station{{0.0, -50.0, 0.0}, 1.5});
    CHECK(south.azimuth == doctest::Approx(180.0));

    auto west = azimuth_elevation(bs, Station{{-50.0, 0.0, 0.0}, 1.5});
    CHECK(west.azimuth == doctest::Approx(270.0));

    CHECK_THROWS_AS(azimuth_elevation(bs, bs), DomainError);
}

TEST_CASE("bin_index floors") {
    CHECK(bin_index({0.0, 0.0, 0.0}, 5.0) == GridIndex{0, 0});
    CHECK(bin_index({12.3, -0.1, 0.0}, 5.0) == GridIndex{2, -1});
    CHECK(bin_index({4.999, 4.999, 0.0}, 5.0) == GridIndex{0, 0});
    CHECK(bin_index({-5.0, 5.0, 0.0}, 5.0) == GridIndex{-1, 1});
    const auto c = bin_center(GridIndex{2, -1}, 5.0);
    CHECK(c.east == doctest::Approx(12.5));
    CHECK(c.north == doctest::Approx(-2.5));
}

TEST_CASE("point_in_polygon basics") {
    const std::vector<LocalPoint> square{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    CHECK(point_in_polygon(LocalPoint{0.5, 0.5, 0}, square));
    CHECK_FALSE(point_in_polygon(LocalPoint{2.0, 2.0, 0}, square));
    CHECK(point_in_polygon(LocalPoint{1.0, 0.5, 0}, square));  // boundary counts as inside
    CHECK(point_in_polygon(LocalPoint{0.0, 0.0, 0}, square));

    const std::vector<LocalPoint> degenerate{{0, 0, 0}, {1, 0, 0}};
    CHECK_THROWS_AS(point_in_polygon(LocalPoint{0.5, 0.0, 0}, degenerate), ValidationError);

    Polygon two;
    two.vertices = {{47.0, 8.0, 0}, {47.001, 8.0, 0}};
    CHECK_THROWS_AS(two.validate(), ValidationError);
}

TEST_CASE("point_in_polygon agrees with a winding-number oracle on an L shape") {
    const std::vector<LocalPoint> ring{{0, 0, 0},   {100, 0, 0},  {100, 40, 0},
                                       {40, 40, 0}, {40, 100, 0}, {0, 100, 0}};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-20.0, 120.0);
    int inside = 0;
    for (int i = 0; i < 1000; ++i) {
        const LocalPoint p{u(rng), u(rng), 0.0};
        const bool oracle = winding_number(p, ring) != 0;
        inside += oracle;
        REQUIRE(point_in_polygon(p, ring) == oracle);
    }
    CHECK(inside > 100);
}

TEST_CASE("geodetic point_in_polygon") {
    Polygon poly;
    poly.vertices = {{47.0, 8.0, 0}, {47.0, 8.01, 0}, {47.01, 8.01, 0}, {47.01, 8.0, 0}};
    CHECK(point_in_polygon(GeodeticPoint{47.005, 8.005, 0}, poly));
    CHECK_FALSE(point_in_polygon(GeodeticPoint{47.02, 8.005, 0}, poly));
}

TEST_CASE("polygon GeoJSON round-trip") {
    Polygon a;
    a.vertices = {{47.0, 8.0, 0}, {47.0, 8.01, 0}, {47.01, 8.01, 0}};
    a.label = LosLabel::kLos;
    Polygon b = a;
    b.label = LosLabel::kNlos;
    std::stringstream ss;
    write_polygons_geojson(ss, std::vector<Polygon>{a, b});
    const auto back = read_polygons_geojson(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0].label == LosLabel::kLos);
    CHECK(back[1].label == LosLabel::kNlos);
    REQUIRE(back[0].vertices.size() == 3);
    CHECK(back[0].vertices[2].latitude == doctest::Approx(47.01));

    std::stringstream bad("{\"type\":\"Feature\"}");
    CHECK_THROWS_AS(read_polygons_geojson(bad), ValidationError);
}

TEST_CASE("LOS label strings") {
    CHECK(los_label_from_string(to_string(LosLabel::kLos)) == LosLabel::kLos);
    CHECK(los_label_from_string(to_string(LosLabel::kNlos)) == LosLabel::kNlos);
    CHECK(los_label_from_string(to_string(LosLabel::kUnknown)) == LosLabel::kUnknown);
    CHECK_THROWS_AS(los_label_from_string("maybe"), ValidationError);
}
