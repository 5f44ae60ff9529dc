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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "propkit/antenna.hpp"
#include "propkit/error.hpp"

using namespace propkit;
using namespace propkit::antenna;

namespace {

AntennaPattern random_pattern(std::uint64_t seed, double az_step, double el_step, double el_lo,
                              double el_hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> g(-30.0, 20.0);
    const AngleGrid az{0.0, az_step, static_cast<std::size_t>(std::lround(360.0 / az_step))};
    const AngleGrid el{el_lo, el_step, static_cast<std::size_t>(std::lround((el_hi - el_lo) / el_step)) + 1};
    std::vector<double> gain(az.count * el.count);
    for (auto& v : gain) v = g(rng);
    return AntennaPattern(az, el, std::move(gain));
}

// Nearest-four-node bilinear evaluation, written against the raw node table.
double bilinear_oracle(const AntennaPattern& p, double az_deg, double el_deg) {
    const auto& az = p.azimuth();
    const auto& el = p.elevation();
    double a = std::fmod(az_deg, 360.0);
    if (a < 0) a += 360.0;
    const double fa = a / az.step;
    auto i0 = static_cast<std::size_t>(std::floor(fa)) % az.count;
    const double ta = fa - std::floor(fa);
    const std::size_t i1 = (i0 + 1) % az.count;

    const double e = std::clamp(el_deg, el.start, el.last());
    const double fe = (e - el.start) / el.step;
    auto j0 = std::min(static_cast<std::size_t>(std::floor(fe)), el.count - 2);
    const double te = fe - static_cast<double>(j0);
    const std::size_t j1 = j0 + 1;

    return p.node(i0, j0) * (1 - ta) * (1 - te) + p.node(i1, j0) * ta * (1 - te) +
           p.node(i0, j1) * (1 - ta) * te + p.node(i1, j1) * ta * te;
}

}  // namespace

TEST_CASE("envelope of one beam is the beam") {
    BeamSet set;
    set.beams.push_back(random_pattern(1, 10.0, 5.0, -30.0, 30.0));
    set.layout = {1, 1};
    const auto env = envelope(set);
    CHECK(env.gain() == set.beams[0].gain());
}

TEST_CASE("envelope follows the dominant beam") {
    const auto weak = random_pattern(2, 10.0, 5.0, -30.0, 30.0);
    auto gains = weak.gain();
    for (auto& g : gains) g += 3.0;
    const AntennaPattern strong(weak.azimuth(), weak.elevation(), gains);
    BeamSet set;
    set.beams = {weak, strong};
    set.layout = {1, 2};
    CHECK(envelope(set).gain() == strong.gain());
}

TEST_CASE("envelope equals the pointwise max over 48 beams") {
    const auto set = synthetic_grid_of_beams();
    REQUIRE(set.beams.size() == 48);
    CHECK(set.layout.rows == 3);
    CHECK(set.layout.columns == 16);
    const auto env = envelope(set);
    const auto& az = env.azimuth();
    const auto& el = env.elevation();
    for (std::size_t j = 0; j < el.count; ++j) {
        for (std::size_t i = 0; i < az.count; ++i) {
            double best = -1e300;
            for (const auto& b : set.beams) best = std::max(best, b.node(i, j));
            REQUIRE(env.node(i, j) == best);
        }
    }
    CHECK(peak_gain(env) == doctest::Approx(27.0));
}

TEST_CASE("envelope rejects bad input") {
    BeamSet empty;
    CHECK_THROWS_AS(envelope(empty), ValidationError);
    BeamSet mixed;
    mixed.beams = {random_pattern(1, 10.0, 5.0, -30.0, 30.0), random_pattern(1, 5.0, 5.0, -30.0, 30.0)};
    mixed.layout = {1, 2};
    CHECK_THROWS_AS(envelope(mixed), ValidationError);
}

TEST_CASE("gain_at returns stored values at nodes") {
    const auto p = random_pattern(4, 10.0, 5.0, -30.0, 30.0);
    for (std::size_t j = 0; j < p.elevation().count; ++j) {
        for (std::size_t i = 0; i < p.azimuth().count; ++i) {
            const auto r = gain_at(p, p.azimuth().at(i), p.elevation().at(j));
            REQUIRE(r.gain_dbi == p.node(i, j));
            REQUIRE_FALSE(r.elevation_clamped);
        }
    }
}

TEST_CASE("gain_at linear midpoint") {
    const AngleGrid az{0.0, 90.0, 4};
    const AngleGrid el{0.0, 10.0, 2};
    const AntennaPattern p(az, el, {10, 20, 0, 0, 10, 20, 0, 0});
    CHECK(gain_at(p, 45.0, 0.0).gain_dbi == doctest::Approx(15.0));
    CHECK(gain_at(p, 45.0, 5.0).gain_dbi == doctest::Approx(15.0));
    // wrap from 270 back to 0
    CHECK(gain_at(p, 315.0, 0.0).gain_dbi == doctest::Approx(5.0));
}

TEST_CASE("gain_at matches an independent bilinear oracle") {
    const auto p = random_pattern(5, 7.5, 3.0, -45.0, 45.0);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> az(-720.0, 720.0);
    std::uniform_real_distribution<double> el(-45.0, 45.0);
    for (int k = 0; k < 1000; ++k) {
        const double a = az(rng), e = el(rng);
        REQUIRE(gain_at(p, a, e).gain_dbi == doctest::Approx(bilinear_oracle(p, a, e)).epsilon(1e-12));
        REQUIRE(std::abs(gain_at(p, a, e).gain_dbi - bilinear_oracle(p, a, e)) < 1e-9);
    }
}

TEST_CASE("gain_at is continuous across the azimuth wrap") {
    const auto p = random_pattern(6, 10.0, 5.0, -30.0, 30.0);
    const double at0 = gain_at(p, 0.0, 2.0).gain_dbi;
    for (double eps : {1e-3, 1e-6, 1e-9}) {
        CHECK(std::abs(gain_at(p, 360.0 - eps, 2.0).gain_dbi - at0) < 1e3 * eps + 1e-9);
    }
}

TEST_CASE("gain_at honors boresight and tilt") {
    const auto p = random_pattern(7, 10.0, 5.0, -30.0, 30.0);
    const auto q = p.oriented(120.0, -5.0);
    CHECK(gain_at(q, 150.0, -10.0).gain_dbi == doctest::Approx(gain_at(p, 30.0, -5.0).gain_dbi));
}

TEST_CASE("elevation outside the grid clamps and flags") {
    const auto p = random_pattern(8, 10.0, 5.0, -30.0, 30.0);
    const auto r = gain_at(p, 20.0, 60.0);
    CHECK(r.elevation_clamped);
    CHECK(r.gain_dbi == doctest::Approx(gain_at(p, 20.0, 30.0).gain_dbi));
}

TEST_CASE("peak_gain") {
    CHECK(peak_gain(AntennaPattern::constant(0.0)) == 0.0);
    auto p = AntennaPattern::constant(0.0, 10.0, 10.0);
    auto g = p.gain();
    g[g.size() / 2] = 5.0;
    CHECK(peak_gain(AntennaPattern(p.azimuth(), p.elevation(), g)) == 5.0);
}

TEST_CASE("pattern CSV round-trip") {
    const auto p = random_pattern(9, 30.0, 15.0, -30.0, 30.0);
    std::stringstream ss;
    write_pattern_csv(ss, p);
    const auto back = read_pattern_csv(ss);
    CHECK(back.congruent(p));
    CHECK(back.gain() == p.gain());
}

TEST_CASE("pattern CSV errors carry a line number") {
    std::stringstream ss("azimuth_deg,elevation_deg,gain_dbi\n0,0,1\n90,0,abc\n");
    try {
        read_pattern_csv(ss);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("beam set manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "propkit_beams_test";
    std::filesystem::create_directories(dir);
    const auto a = random_pattern(10, 30.0, 15.0, -30.0, 30.0);
    const auto b = random_pattern(11, 30.0, 15.0, -30.0, 30.0);
    {
        std::ofstream(dir / "a.csv") << [&] { std::stringstream s; write_pattern_csv(s, a); return s.str(); }();
        std::ofstream(dir / "b.csv") << [&] { std::stringstream s; write_pattern_csv(s, b); return s.str(); }();
        std::ofstream(dir / "beams.json")
            << R"({"layout":{"rows":1,"columns":2},"beams":[{"file":"a.csv"},{"file":"b.csv"}]})";
    }
    const auto set = load_beam_set((dir / "beams.json").string());
    REQUIRE(set.beams.size() == 2);
    CHECK(set.beams[1].gain() == b.gain());
    std::filesystem::remove_all(dir);
}
