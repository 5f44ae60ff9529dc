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

#ifndef PROPKIT_IO_HPP
#define PROPKIT_IO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "propkit/analysis.hpp"

namespace propkit::io {

// Bin table: `ix,iy,lat,lon,d2d_m,d3d_m,pl_db,count,los,band`.
void write_bin_table(std::ostream& out, std::span<const analysis::GridBin> bins);

/// Bins read back carry lat/lon but no local centroid; see reproject().
std::vector<analysis::GridBin> read_bin_table(std::istream& in);
std::vector<analysis::GridBin> load_bin_table(const std::string& path);

/// Recomputes local centroids from the stored lat/lon around `origin`.
void reproject(std::span<analysis::GridBin> bins, const geo::GeodeticPoint& origin);

nlohmann::ordered_json to_json(const analysis::FitResult& fit);
nlohmann::ordered_json to_json(const analysis::ErrorStats& stats);
nlohmann::ordered_json to_json(const analysis::CdfSeries& cdf);
nlohmann::ordered_json to_json(const analysis::OffsetResult& offset);

analysis::FitResult fit_from_json(const nlohmann::json& doc);

// `loss_db,probability`
void write_cdf_csv(std::ostream& out, const analysis::CdfSeries& cdf);
analysis::CdfSeries read_cdf_csv(std::istream& in);

}  // namespace propkit::io

#endif  // PROPKIT_IO_HPP
