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

#include <sstream>

#include "propkit/error.hpp"
#include "propkit/io.hpp"

using namespace propkit;
using namespace propkit::analysis;

TEST_CASE("bin table round-trip") {
    const geo::GeodeticPoint origin{47.39, 8.05, 0.0};
    LayoutSpec spec;
    spec.n = 200;
    spec.distance_range = {100.0, 1500.0};
    spec.seed = 3;
    spec.origin = origin;
    auto bins = synthesize_layout(spec);
    apply_mean(bins, [](const GridBin& b) { return 80.0 + 30.0 * std::log10(b.distance_3d / 100.0); }, 5.0, 4);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        bins[i].los = i % 3 == 0 ? geo::LosLabel::kLos : (i % 3 == 1 ? geo::LosLabel::kNlos : geo::LosLabel::kUnknown);
        bins[i].band = "3.5GHz";
        bins[i].sample_count = i + 1;
    }
    std::stringstream ss;
    io::write_bin_table(ss, bins);
    const std::string first = ss.str();
    auto back = io::read_bin_table(ss);
    REQUIRE(back.size() == bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i) {
        CHECK(back[i].index == bins[i].index);
        CHECK(back[i].los == bins[i].los);
        CHECK(back[i].sample_count == bins[i].sample_count);
        CHECK(back[i].path_loss_db == doctest::Approx(bins[i].path_loss_db).epsilon(1e-8));
        CHECK(back[i].distance_3d == doctest::Approx(bins[i].distance_3d).epsilon(1e-8));
    }

    io::reproject(back, origin);
    CHECK(back[5].centroid.east == doctest::Approx(bins[5].centroid.east).epsilon(1e-6));
    CHECK(back[5].centroid.north == doctest::Approx(bins[5].centroid.north).epsilon(1e-6));

    // a second write of what was read is byte-identical
    std::stringstream again;
    io::write_bin_table(again, back);
    CHECK(again.str() == first);
}

TEST_CASE("bin table errors") {
    std::stringstream bad_header("a,b,c\n");
    CHECK_THROWS_AS(io::read_bin_table(bad_header), ValidationError);
    std::stringstream bad_row(
        "ix,iy,lat,lon,d2d_m,d3d_m,pl_db,count,los,band\n1,2,47,8,100,101,oops,1,LOS,x\n");
    CHECK_THROWS_AS(io::read_bin_table(bad_row), ParseError);
    CHECK_THROWS_AS(io::load_bin_table("/nonexistent/bins.csv"), ValidationError);
}

TEST_CASE("CDF CSV round-trip") {
    const auto cdf = empirical_cdf({-20.0, -5.5, -12.25, -30.0});
    std::stringstream ss;
    io::write_cdf_csv(ss, cdf);
    const auto back = io::read_cdf_csv(ss);
    CHECK(back.values == cdf.values);
    CHECK(back.probabilities == cdf.probabilities);
}

TEST_CASE("fit JSON round-trip") {
    FitResult fit;
    fit.a0 = 83.3;
    fit.gamma = 2.91;
    fit.sigma = 6.8;
    fit.n_bins = 12;
    fit.distance_range = {100.0, 900.0};
    const auto j = io::to_json(fit);
    const auto back = io::fit_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.a0 == fit.a0);
    CHECK(back.gamma == fit.gamma);
    CHECK(back.sigma == fit.sigma);
    CHECK(back.n_bins == fit.n_bins);

    ErrorStats s{1.0, 2.0, std::sqrt(5.0), 10};
    CHECK(io::to_json(s).at("rmse").get<double>() == doctest::Approx(std::sqrt(5.0)));
    OffsetResult off{12.8, 0.0, 5};
    CHECK(io::to_json(off).dump().find("12.8") != std::string::npos);
}
