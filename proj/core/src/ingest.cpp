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

#include "propkit/ingest.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "csv_util.hpp"
#include "propkit/error.hpp"

namespace propkit::ingest {

namespace {

constexpr std::string_view kSampleHeader =
    "timestamp_ms,lat,lon,rx_power_dbm,band,source,beam_id,cell_id";
constexpr std::string_view kScannerHeader = "timestamp_ms,lat,lon,cell_id,rsrp_dbm";

void validate_row(MeasurementSample& s, std::size_t line) {
    try {
        s.validate();
    } catch (const ValidationError& e) {
        throw ParseError(line, e.what());
    }
}

geo::GeodeticPoint parse_position(std::string_view lat, std::string_view lon, std::size_t line) {
    return geo::GeodeticPoint{.latitude = csv::parse_double(lat, line, "lat"),
                              .longitude = csv::parse_double(lon, line, "lon")};
}

Source parse_source(std::string_view s, std::size_t line) {
    s = csv::trim(s);
    if (s == "TESTBED") return Source::kTestbed;
    if (s == "SCANNER") return Source::kScanner;
    throw ParseError(line, "unknown source '" + std::string(s) + "'");
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

std::string to_string(Source s) { return s == Source::kTestbed ? "TESTBED" : "SCANNER"; }

void MeasurementSample::validate() const {
    if (timestamp_ms <= 0) throw ValidationError("timestamp must be strictly positive");
    position.validate();
    if (!(received_power_dbm >= -160.0 && received_power_dbm <= 0.0)) {
        throw ValidationError(
            fmt::format("received power {} dBm outside [-160, 0]", received_power_dbm));
    }
}

ParseResult parse_testbed_log(std::istream& in, const std::string& band) {
    csv::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw ParseError(1, "testbed log is empty");

    const auto header = csv::split(line);
    if (header.size() < 4 || csv::trim(header[0]) != "timestamp_ms" ||
        csv::trim(header[1]) != "lat" || csv::trim(header[2]) != "lon") {
        throw ParseError(1, "expected header 'timestamp_ms,lat,lon,mrsrp_00,...'");
    }
    std::vector<int> beam_ids;
    for (std::size_t i = 3; i < header.size(); ++i) {
        const auto col = csv::trim(header[i]);
        if (col.substr(0, 6) != "mrsrp_") {
            throw ParseError(1, "unexpected column '" + std::string(col) + "'");
        }
        beam_ids.push_back(static_cast<int>(csv::parse_int(col.substr(6), 1, "beam index")));
    }

    ParseResult result;
    while (reader.next(line)) {
        if (csv::trim(line).empty()) continue;
        ++result.rows;
        const auto f = csv::split(line);
        if (f.size() != header.size()) {
            throw ParseError(reader.line_no(), fmt::format("expected {} columns, found {}",
                                                           header.size(), f.size()));
        }

        std::optional<double> best;
        int best_beam = -1;
        for (std::size_t i = 3; i < f.size(); ++i) {
            const auto v = csv::parse_optional_double(f[i], reader.line_no(), header[i]);
            // strict '>' keeps the first (lowest-index) beam on ties
            if (v && (!best || *v > *best)) {
                best = v;
                best_beam = beam_ids[i - 3];
            }
        }
        if (!best) {
            ++result.skipped;
            continue;
        }
        MeasurementSample s{
            .timestamp_ms = csv::parse_int(f[0], reader.line_no(), "timestamp_ms"),
            .position = parse_position(f[1], f[2], reader.line_no()),
            .received_power_dbm = *best,
            .band = band,
            .source = Source::kTestbed,
            .beam_id = best_beam,
            .cell_id = std::nullopt,
        };
        validate_row(s, reader.line_no());
        result.samples.push_back(std::move(s));
    }
    if (result.skipped > 0) {
        result.warnings.push_back(
            fmt::format("{} row(s) without any received beam skipped", result.skipped));
    }
    return result;
}

namespace {

ParseResult parse_scanner_impl(std::istream& in,
                               const std::optional<std::set<std::int64_t>>& cells,
                               const std::string& band) {
    csv::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw ParseError(1, "scanner log is empty");
    if (csv::trim(line) != kScannerHeader) {
        throw ParseError(1, "expected header '" + std::string(kScannerHeader) + "'");
    }

    ParseResult result;
    while (reader.next(line)) {
        if (csv::trim(line).empty()) continue;
        ++result.rows;
        const auto f = csv::split(line);
        if (f.size() != 5) throw ParseError(reader.line_no(), "expected 5 columns");

        const auto cell = csv::parse_int(f[3], reader.line_no(), "cell_id");
        const auto rsrp = csv::parse_optional_double(f[4], reader.line_no(), "rsrp_dbm");
        const auto ts = csv::parse_int(f[0], reader.line_no(), "timestamp_ms");
        const auto pos = parse_position(f[1], f[2], reader.line_no());
        if (cells && !cells->contains(cell)) {
            ++result.filtered;
            continue;
        }
        if (!rsrp) {
            ++result.skipped;
            continue;
        }
        MeasurementSample s{
            .timestamp_ms = ts,
            .position = pos,
            .received_power_dbm = *rsrp,
            .band = band,
            .source = Source::kScanner,
            .beam_id = std::nullopt,
            .cell_id = cell,
        };
        validate_row(s, reader.line_no());
        result.samples.push_back(std::move(s));
    }
    if (result.samples.empty()) {
        result.warnings.push_back("no scanner rows matched the cells of interest");
    }
    return result;
}

}  // namespace

ParseResult parse_scanner_log(std::istream& in, const std::set<std::int64_t>& cells_of_interest,
                              const std::string& band) {
    return parse_scanner_impl(in, cells_of_interest, band);
}

ParseResult parse_sample_csv(std::istream& in) {
    csv::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw ParseError(1, "sample file is empty");
    if (csv::trim(line) != kSampleHeader) {
        throw ParseError(1, "expected header '" + std::string(kSampleHeader) + "'");
    }

    ParseResult result;
    while (reader.next(line)) {
        if (csv::trim(line).empty()) continue;
        ++result.rows;
        const auto f = csv::split(line);
        if (f.size() != 8) throw ParseError(reader.line_no(), "expected 8 columns");
        const auto beam = csv::parse_optional_int(f[6], reader.line_no(), "beam_id");
        MeasurementSample s{
            .timestamp_ms = csv::parse_int(f[0], reader.line_no(), "timestamp_ms"),
            .position = parse_position(f[1], f[2], reader.line_no()),
            .received_power_dbm = csv::parse_double(f[3], reader.line_no(), "rx_power_dbm"),
            .band = std::string(csv::trim(f[4])),
            .source = parse_source(f[5], reader.line_no()),
            .beam_id = beam ? std::optional<int>(static_cast<int>(*beam)) : std::nullopt,
            .cell_id = csv::parse_optional_int(f[7], reader.line_no(), "cell_id"),
        };
        validate_row(s, reader.line_no());
        result.samples.push_back(std::move(s));
    }
    return result;
}

void write_sample_csv(std::ostream& out, std::span<const MeasurementSample> samples) {
    out << kSampleHeader << '\n';
    for (const auto& s : samples) {
        out << s.timestamp_ms << ',' << num(s.position.latitude) << ','
            << num(s.position.longitude) << ',' << num(s.received_power_dbm) << ',' << s.band
            << ',' << to_string(s.source) << ',';
        if (s.beam_id) out << *s.beam_id;
        out << ',';
        if (s.cell_id) out << *s.cell_id;
        out << '\n';
    }
}

ParseResult parse_any(std::istream& in, const std::string& band,
                      const std::optional<std::set<std::int64_t>>& cells) {
    std::string first;
    std::getline(in, first);
    if (!first.empty() && first.back() == '\r') first.pop_back();
    std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::istringstream whole(first + "\n" + rest);

    if (first == kSampleHeader) return parse_sample_csv(whole);
    if (first == kScannerHeader) return parse_scanner_impl(whole, cells, band);
    if (first.rfind("timestamp_ms,lat,lon,mrsrp_", 0) == 0) return parse_testbed_log(whole, band);
    throw ParseError(1, "unrecognized log header '" + first + "'");
}

ParseResult load_samples(const std::string& path, const std::string& band,
                         const std::optional<std::set<std::int64_t>>& cells) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open log file: " + path);
    try {
        return parse_any(in, band, cells);
    } catch (const ParseError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void SiteConfig::validate() const {
    try {
        site_position.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("site_position: ") + e.what());
    }
    auto positive = [](double v, const char* field) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ValidationError(std::string(field) + " must be positive");
        }
    };
    positive(antenna_height_agl, "antenna_height_agl");
    positive(ue_height, "ue_height");
    positive(carrier_freq_ghz, "carrier_freq_ghz");
    if (!(tx_power_dbm > 0.0 && tx_power_dbm <= 90.0)) {
        throw ValidationError(fmt::format("tx_power_dbm {} outside (0, 90]", tx_power_dbm));
    }
    if (!std::isfinite(rx_gain_db)) throw ValidationError("rx_gain_db must be finite");
    if (!(feeder_loss_db >= 0.0) || !std::isfinite(feeder_loss_db)) {
        throw ValidationError("feeder_loss_db must be non-negative");
    }
    if (!std::isfinite(boresight_azimuth)) throw ValidationError("boresight_azimuth must be finite");
    if (!(mechanical_tilt >= -90.0 && mechanical_tilt <= 90.0)) {
        throw ValidationError("mechanical_tilt outside [-90, 90]");
    }
}

SiteConfig parse_site_config(std::istream& in, const std::string& base_dir) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("site config is not valid JSON: ") + e.what());
    }

    auto required = [&](const nlohmann::json& obj, const char* field) -> const nlohmann::json& {
        if (!obj.contains(field)) throw ValidationError(std::string("missing field: ") + field);
        return obj.at(field);
    };
    auto number = [&](const nlohmann::json& obj, const char* field) {
        const auto& v = required(obj, field);
        if (!v.is_number()) throw ValidationError(std::string("field must be a number: ") + field);
        return v.get<double>();
    };
    auto optional_number = [&](const char* field, double fallback) {
        if (!doc.contains(field)) return fallback;
        return number(doc, field);
    };

    SiteConfig site;
    const auto& pos = required(doc, "site_position");
    site.site_position.latitude = number(pos, "lat");
    site.site_position.longitude = number(pos, "lon");
    site.site_position.altitude_agl = pos.value("alt", 0.0);
    site.antenna_height_agl = number(doc, "antenna_height_agl");
    site.boresight_azimuth = number(doc, "boresight_azimuth");
    site.mechanical_tilt = optional_number("mechanical_tilt", 0.0);
    site.tx_power_dbm = number(doc, "tx_power_dbm");
    site.carrier_freq_ghz = number(doc, "carrier_freq_ghz");
    site.rx_gain_db = number(doc, "rx_gain_db");
    site.ue_height = number(doc, "ue_height");
    site.feeder_loss_db = optional_number("feeder_loss_db", 0.0);
    site.band = doc.value("band", "3.5GHz");

    const auto& pattern = required(doc, "pattern_ref");
    if (!pattern.is_string()) throw ValidationError("field must be a string: pattern_ref");
    site.pattern_ref = pattern.get<std::string>();
    if (!site.pattern_ref.empty() && !base_dir.empty() &&
        std::filesystem::path(site.pattern_ref).is_relative()) {
        site.pattern_ref = (std::filesystem::path(base_dir) / site.pattern_ref).string();
    }

    site.validate();
    return site;
}

SiteConfig load_site_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open site config: " + path);
    return parse_site_config(in, std::filesystem::path(path).parent_path().string());
}

void write_site_config(std::ostream& out, const SiteConfig& site) {
    nlohmann::ordered_json doc;
    doc["site_position"] = {{"lat", site.site_position.latitude},
                            {"lon", site.site_position.longitude},
                            {"alt", site.site_position.altitude_agl}};
    doc["antenna_height_agl"] = site.antenna_height_agl;
    doc["boresight_azimuth"] = site.boresight_azimuth;
    doc["mechanical_tilt"] = site.mechanical_tilt;
    doc["tx_power_dbm"] = site.tx_power_dbm;
    doc["carrier_freq_ghz"] = site.carrier_freq_ghz;
    doc["pattern_ref"] = site.pattern_ref;
    doc["rx_gain_db"] = site.rx_gain_db;
    doc["ue_height"] = site.ue_height;
    doc["feeder_loss_db"] = site.feeder_loss_db;
    doc["band"] = site.band;
    out << doc.dump(2) << '\n';
}

std::vector<IndoorSession> load_indoor_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open indoor manifest: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("indoor manifest is not valid JSON: ") + e.what());
    }
    if (!doc.contains("sessions") || !doc.at("sessions").is_array()) {
        throw ValidationError("indoor manifest needs a 'sessions' array");
    }

    const auto dir = std::filesystem::path(path).parent_path();
    std::vector<IndoorSession> out;
    for (const auto& entry : doc.at("sessions")) {
        IndoorSession session;
        session.building_id = entry.value("building_id", "");
        if (session.building_id.empty()) throw ValidationError("session without building_id");
        session.floor = entry.value("floor", 0);
        const std::string band = entry.value("band", "3.5GHz");

        auto load_set = [&](const char* key, const char* what) {
            const auto file = entry.value(key, "");
            if (file.empty()) {
                throw ValidationError(fmt::format("building {}: missing {}", session.building_id, what));
            }
            auto parsed = load_samples((dir / file).string(), band);
            if (parsed.samples.empty()) {
                throw ValidationError(fmt::format("building {}: {} has no samples",
                                                  session.building_id, what));
            }
            return std::move(parsed.samples);
        };
        session.indoor_samples = load_set("indoor", "indoor samples");
        session.outdoor_reference = load_set("outdoor", "outdoor reference");
        out.push_back(std::move(session));
    }
    return out;
}

}  // namespace propkit::ingest
