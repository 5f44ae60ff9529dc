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

#include <fstream>
#include <sstream>

#include "propkit/error.hpp"
#include "propkit/ingest.hpp"

using namespace propkit;
using namespace propkit::ingest;

namespace {
const std::string kData = PROPKIT_TEST_DATA;
}

TEST_CASE("testbed rows keep the strongest beam") {
    std::stringstream one("timestamp_ms,lat,lon,mrsrp_00,mrsrp_01\n10,47.0,8.0,,-70\n");
    auto r = parse_testbed_log(one);
    REQUIRE(r.samples.size() == 1);
    CHECK(r.samples[0].received_power_dbm == -70.0);
    CHECK(r.samples[0].beam_id == 1);
    CHECK(r.samples[0].source == Source::kTestbed);

    std::stringstream three("timestamp_ms,lat,lon,mrsrp_00,mrsrp_01,mrsrp_02\n10,47.0,8.0,-90,-75,-80\n");
    r = parse_testbed_log(three);
    CHECK(r.samples.at(0).received_power_dbm == -75.0);
    CHECK(r.samples.at(0).beam_id == 1);
}

TEST_CASE("testbed fixture") {
    std::ifstream in(kData + "/testbed_3rows.csv");
    const auto r = parse_testbed_log(in, "3.5GHz");
    REQUIRE(r.samples.size() == 3);
    CHECK(r.samples[0].timestamp_ms < r.samples[1].timestamp_ms);
    CHECK(r.samples[1].timestamp_ms < r.samples[2].timestamp_ms);
    CHECK(r.samples[2].received_power_dbm == -99.25);
    CHECK(r.samples[2].beam_id == 2);
    CHECK(r.samples[0].band == "3.5GHz");
}

TEST_CASE("testbed rows without any beam are skipped and counted") {
    std::stringstream in("timestamp_ms,lat,lon,mrsrp_00,mrsrp_01\n10,47.0,8.0,,\n20,47.0,8.0,-80,\n");
    const auto r = parse_testbed_log(in);
    CHECK(r.samples.size() == 1);
    CHECK(r.skipped == 1);
    CHECK(r.rows == 2);
}

TEST_CASE("malformed rows report their line") {
    std::stringstream in("timestamp_ms,lat,lon,mrsrp_00\n10,47.0,8.0,-80\n20,47.0,x,-80\n");
    try {
        parse_testbed_log(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    std::stringstream short_row("timestamp_ms,lat,lon,mrsrp_00\n10,47.0\n");
    CHECK_THROWS_AS(parse_testbed_log(short_row), ParseError);
    std::stringstream out_of_range("timestamp_ms,lat,lon,mrsrp_00\n10,95.0,8.0,-80\n");
    CHECK_THROWS_AS(parse_testbed_log(out_of_range), ValidationError);
}

TEST_CASE("scanner filtering") {
    std::stringstream in(
        "timestamp_ms,lat,lon,cell_id,rsrp_dbm\n1,46.8,7.1,12,-80\n2,46.8,7.1,13,-81\n3,46.8,7.1,12,-82\n");
    auto r = parse_scanner_log(in, {12});
    REQUIRE(r.samples.size() == 2);
    for (const auto& s : r.samples) CHECK(s.cell_id == 12);
    CHECK(r.filtered == 1);
    CHECK(r.samples[0].band == "800MHz");

    std::stringstream again(
        "timestamp_ms,lat,lon,cell_id,rsrp_dbm\n1,46.8,7.1,12,-80\n");
    r = parse_scanner_log(again, {});
    CHECK(r.samples.empty());
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("scanner fixture of 100 rows") {
    std::ifstream in(kData + "/scanner_100rows.csv");
    const auto r = parse_scanner_log(in, {12});
    CHECK(r.rows == 100);
    CHECK(r.samples.size() == 40);
    CHECK(r.filtered == 60);
}

TEST_CASE("canonical sample CSV round-trips exactly") {
    std::ifstream in(kData + "/scanner_100rows.csv");
    const auto original = parse_scanner_log(in, {12, 13, 14}).samples;
    std::stringstream ss;
    write_sample_csv(ss, original);
    const auto back = parse_sample_csv(ss).samples;
    CHECK(back == original);

    std::stringstream dispatch;
    write_sample_csv(dispatch, original);
    CHECK(parse_any(dispatch, "ignored").samples == original);
}

TEST_CASE("parse_any recognizes each log layout") {
    std::stringstream testbed("timestamp_ms,lat,lon,mrsrp_00\n10,47.0,8.0,-80\n");
    CHECK(parse_any(testbed, "3.5GHz").samples.at(0).source == Source::kTestbed);
    std::stringstream scanner("timestamp_ms,lat,lon,cell_id,rsrp_dbm\n1,46.8,7.1,12,-80\n");
    CHECK(parse_any(scanner, "800MHz").samples.at(0).source == Source::kScanner);
    std::stringstream unknown("foo,bar\n1,2\n");
    CHECK_THROWS_AS(parse_any(unknown, "x"), ValidationError);
    CHECK_THROWS_AS(load_samples(kData + "/does_not_exist.csv", "x"), ValidationError);
}

TEST_CASE("site configs") {
    const auto urban = load_site_config(kData + "/site_urban.json");
    CHECK(urban.antenna_height_agl == 29.4);
    CHECK(urban.rx_gain_db == 4.0);
    const auto suburban = load_site_config(kData + "/site_suburban.json");
    CHECK(suburban.antenna_height_agl == 24.5);
    const auto rural = load_site_config(kData + "/site_rural.json");
    CHECK(rural.antenna_height_agl == 12.4);
    CHECK_THROWS_AS(load_site_config(kData + "/site_bad_power.json"), ValidationError);

    std::stringstream missing(R"({"site_position":{"lat":47,"lon":8},"antenna_height_agl":20})");
    try {
        parse_site_config(missing);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("boresight_azimuth") != std::string::npos);
    }
}

TEST_CASE("site config round-trip and feeder loss") {
    auto site = load_site_config(kData + "/site_urban.json");
    site.feeder_loss_db = 2.0;
    std::stringstream ss;
    write_site_config(ss, site);
    const auto back = parse_site_config(ss);
    CHECK(back.effective_tx_power_dbm() == doctest::Approx(51.0));
    CHECK(back.site_position.latitude == site.site_position.latitude);
}

TEST_CASE("indoor manifest") {
    const auto sessions = load_indoor_manifest(kData + "/indoor_manifest.json");
    REQUIRE(sessions.size() == 1);
    CHECK(sessions[0].building_id == "A");
    CHECK(sessions[0].floor == 1);
    CHECK(sessions[0].indoor_samples.size() == 8);
    CHECK(sessions[0].outdoor_reference.size() == 4);
    try {
        load_indoor_manifest(kData + "/indoor_manifest_bad.json");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("building B") != std::string::npos);
    }
}
