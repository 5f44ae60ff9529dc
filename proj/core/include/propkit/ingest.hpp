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

#ifndef PROPKIT_INGEST_HPP
#define PROPKIT_INGEST_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "propkit/geo.hpp"

namespace propkit::ingest {

enum class Source { kTestbed, kScanner };

std::string to_string(Source s);

struct MeasurementSample {
    std::int64_t timestamp_ms = 0;
    geo::GeodeticPoint position;
    double received_power_dbm = 0.0;
    std::string band;
    Source source = Source::kTestbed;
    std::optional<int> beam_id;
    std::optional<std::int64_t> cell_id;

    void validate() const;
    friend bool operator==(const MeasurementSample&, const MeasurementSample&) = default;
};

/// Row accounting: rows = samples.size() + skipped + filtered.
struct ParseResult {
    std::vector<MeasurementSample> samples;
    std::size_t rows = 0;
    std::size_t skipped = 0;   // rows without any usable power value
    std::size_t filtered = 0;  // rows dropped by a cell filter
    std::vector<std::string> warnings;
};

/// Testbed log: `timestamp_ms,lat,lon,mrsrp_00,...,mrsrp_47`. Each row
/// becomes one sample at the strongest received beam (lowest index on
/// ties); rows with every beam cell empty are skipped.
ParseResult parse_testbed_log(std::istream& in, const std::string& band = "3.5GHz");

/// Scanner log: `timestamp_ms,lat,lon,cell_id,rsrp_dbm`, keeping only
/// rows whose cell is in `cells_of_interest`.
ParseResult parse_scanner_log(std::istream& in, const std::set<std::int64_t>& cells_of_interest,
                              const std::string& band = "800MHz");

/// Canonical sample CSV:
/// `timestamp_ms,lat,lon,rx_power_dbm,band,source,beam_id,cell_id`.
ParseResult parse_sample_csv(std::istream& in);
void write_sample_csv(std::ostream& out, std::span<const MeasurementSample> samples);

/// Picks the parser from the header line. Scanner logs keep every cell
/// unless `cells` is given.
ParseResult parse_any(std::istream& in, const std::string& band,
                      const std::optional<std::set<std::int64_t>>& cells = std::nullopt);
ParseResult load_samples(const std::string& path, const std::string& band,
                         const std::optional<std::set<std::int64_t>>& cells = std::nullopt);

struct SiteConfig {
    geo::GeodeticPoint site_position;
    double antenna_height_agl = 0.0;  // m
    double boresight_azimuth = 0.0;   // deg
    double mechanical_tilt = 0.0;     // deg, boresight elevation
    double tx_power_dbm = 0.0;        // at the antenna port
    double carrier_freq_ghz = 0.0;
    std::string pattern_ref;          // resolved against the config directory
    double rx_gain_db = 0.0;
    double ue_height = 0.0;           // m
    double feeder_loss_db = 0.0;
    std::string band;

    /// Port power once feeder losses are removed.
    double effective_tx_power_dbm() const { return tx_power_dbm - feeder_loss_db; }
    void validate() const;
};

SiteConfig parse_site_config(std::istream& in, const std::string& base_dir = "");
SiteConfig load_site_config(const std::string& path);
void write_site_config(std::ostream& out, const SiteConfig& site);

struct IndoorSession {
    std::string building_id;
    int floor = 0;
    std::vector<MeasurementSample> indoor_samples;
    std::vector<MeasurementSample> outdoor_reference;
};

/// Manifest JSON: {"sessions": [{"building_id": "B1", "floor": 0,
/// "indoor": "b1_in.csv", "outdoor": "b1_out.csv"}, ...]}. Sample files
/// are any format accepted by parse_any.
std::vector<IndoorSession> load_indoor_manifest(const std::string& path);

}  // namespace propkit::ingest

#endif  // PROPKIT_INGEST_HPP
