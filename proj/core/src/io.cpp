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

#include "propkit/io.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "csv_util.hpp"
#include "propkit/error.hpp"

namespace propkit::io {

namespace {

constexpr std::string_view kBinHeader = "ix,iy,lat,lon,d2d_m,d3d_m,pl_db,count,los,band";
constexpr std::string_view kCdfHeader = "loss_db,probability";

}  // namespace

void write_bin_table(std::ostream& out, std::span<const analysis::GridBin> bins) {
    out << kBinHeader << '\n';
    for (const auto& b : bins) {
        out << fmt::format("{},{},{:.9f},{:.9f},{:.6f},{:.6f},{:.6f},{},{},{}\n", b.index.ix,
                           b.index.iy, b.position.latitude, b.position.longitude, b.distance_2d,
                           b.distance_3d, b.path_loss_db, b.sample_count, geo::to_string(b.los),
                           b.band);
    }
}

std::vector<analysis::GridBin> read_bin_table(std::istream& in) {
    csv::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw ParseError(1, "bin table is empty");
    if (csv::trim(line) != kBinHeader) {
        throw ParseError(1, "expected header '" + std::string(kBinHeader) + "'");
    }
    std::vector<analysis::GridBin> bins;
    while (reader.next(line)) {
        if (csv::trim(line).empty()) continue;
        const auto f = csv::split(line);
        const auto n = reader.line_no();
        if (f.size() != 10) throw ParseError(n, "expected 10 columns");
        analysis::GridBin b;
        b.index = {csv::parse_int(f[0], n, "ix"), csv::parse_int(f[1], n, "iy")};
        b.position = {csv::parse_double(f[2], n, "lat"), csv::parse_double(f[3], n, "lon"), 0.0};
        b.distance_2d = csv::parse_double(f[4], n, "d2d_m");
        b.distance_3d = csv::parse_double(f[5], n, "d3d_m");
        b.path_loss_db = csv::parse_double(f[6], n, "pl_db");
        const auto count = csv::parse_int(f[7], n, "count");
        if (count < 1) throw ParseError(n, "count must be >= 1");
        b.sample_count = static_cast<std::size_t>(count);
        try {
            b.los = geo::los_label_from_string(csv::trim(f[8]));
            b.position.validate();
        } catch (const ValidationError& e) {
            throw ParseError(n, e.what());
        }
        b.band = std::string(csv::trim(f[9]));
        if (!(b.path_loss_db > 0.0)) throw ParseError(n, "path loss must be positive");
        if (!(b.distance_2d >= 0.0) || !(b.distance_3d > 0.0)) {
            throw ParseError(n, "distances must be positive");
        }
        bins.push_back(std::move(b));
    }
    return bins;
}

std::vector<analysis::GridBin> load_bin_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open bin table: " + path);
    try {
        return read_bin_table(in);
    } catch (const ParseError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void reproject(std::span<analysis::GridBin> bins, const geo::GeodeticPoint& origin) {
    for (auto& b : bins) b.centroid = geo::to_local(origin, b.position);
}

nlohmann::ordered_json to_json(const analysis::FitResult& fit) {
    nlohmann::ordered_json j;
    j["a0"] = fit.a0;
    j["gamma"] = fit.gamma;
    j["sigma"] = fit.sigma;
    j["d0"] = fit.d0;
    j["n_bins"] = fit.n_bins;
    j["distance_range"] = {fit.distance_range.lo, fit.distance_range.hi};
    j["warnings"] = fit.warnings;
    return j;
}

analysis::FitResult fit_from_json(const nlohmann::json& doc) {
    analysis::FitResult fit;
    try {
        fit.a0 = doc.at("a0").get<double>();
        fit.gamma = doc.at("gamma").get<double>();
        fit.sigma = doc.at("sigma").get<double>();
        fit.d0 = doc.at("d0").get<double>();
        fit.n_bins = doc.at("n_bins").get<std::size_t>();
        fit.distance_range = {doc.at("distance_range").at(0).get<double>(),
                              doc.at("distance_range").at(1).get<double>()};
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("invalid fit result: ") + e.what());
    }
    return fit;
}

nlohmann::ordered_json to_json(const analysis::ErrorStats& stats) {
    nlohmann::ordered_json j;
    j["mu_e"] = stats.mu_e;
    j["sigma_e"] = stats.sigma_e;
    j["rmse"] = stats.rmse;
    j["n"] = stats.n;
    return j;
}

nlohmann::ordered_json to_json(const analysis::CdfSeries& cdf) {
    nlohmann::ordered_json j;
    j["values"] = cdf.values;
    j["probabilities"] = cdf.probabilities;
    return j;
}

nlohmann::ordered_json to_json(const analysis::OffsetResult& offset) {
    nlohmann::ordered_json j;
    j["offset_db"] = offset.offset_db;
    j["sigma_db"] = offset.sigma_db;
    j["n_pairs"] = offset.n_pairs;
    return j;
}

void write_cdf_csv(std::ostream& out, const analysis::CdfSeries& cdf) {
    out << kCdfHeader << '\n';
    for (std::size_t i = 0; i < cdf.values.size(); ++i) {
        out << fmt::format("{},{}\n", cdf.values[i], cdf.probabilities[i]);
    }
}

analysis::CdfSeries read_cdf_csv(std::istream& in) {
    csv::LineReader reader(in);
    std::string line;
    if (!reader.next(line) || csv::trim(line) != kCdfHeader) {
        throw ParseError(1, "expected header '" + std::string(kCdfHeader) + "'");
    }
    analysis::CdfSeries cdf;
    while (reader.next(line)) {
        if (csv::trim(line).empty()) continue;
        const auto f = csv::split(line);
        if (f.size() != 2) throw ParseError(reader.line_no(), "expected 2 columns");
        cdf.values.push_back(csv::parse_double(f[0], reader.line_no(), "loss_db"));
        cdf.probabilities.push_back(csv::parse_double(f[1], reader.line_no(), "probability"));
    }
    return cdf;
}

}  // namespace propkit::io
