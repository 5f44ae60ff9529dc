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

#ifndef PROPKIT_ANALYSIS_HPP
#define PROPKIT_ANALYSIS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "propkit/antenna.hpp"
#include "propkit/geo.hpp"
#include "propkit/ingest.hpp"
#include "propkit/models.hpp"

namespace propkit::analysis {

enum class DistanceKind { k2d, k3d };

/// Median of a non-empty set; even counts average the two middle values.
double median(std::vector<double> values);

struct BinAggregate {
    geo::GridIndex index;
    geo::LocalPoint centroid;
    double median_rx_power_dbm = 0.0;
    std::size_t count = 0;
    std::string band;
};

/// Groups samples into grid_size squares around `origin` (per band) and
/// takes the per-bin median received power. Output is ordered by band,
/// then (ix, iy), and does not depend on input order.
std::vector<BinAggregate> aggregate_bins(std::span<const ingest::MeasurementSample> samples,
                                         const geo::GeodeticPoint& origin, double grid_size = 5.0);

struct GridBin {
    geo::GridIndex index;
    geo::LocalPoint centroid;
    geo::GeodeticPoint position;  // centroid in WGS84
    double median_rx_power_dbm = 0.0;
    double path_loss_db = 0.0;
    double distance_3d = 0.0;
    double distance_2d = 0.0;
    std::size_t sample_count = 1;
    geo::LosLabel los = geo::LosLabel::kUnknown;
    std::string band;

    double distance(DistanceKind kind) const {
        return kind == DistanceKind::k3d ? distance_3d : distance_2d;
    }
};

struct ExtractResult {
    std::vector<GridBin> bins;
    std::size_t excluded = 0;
    std::size_t elevation_clamped = 0;
    std::vector<std::string> warnings;
};

/// PL = P_T + G_T(az, el) + G_R - P_R per bin, with the pattern oriented
/// to the site boresight and the angles taken toward the bin centroid.
ExtractResult extract_path_loss(std::span<const BinAggregate> bins, const ingest::SiteConfig& site,
                                const antenna::AntennaPattern& pattern);

/// Centroid inside any LOS-labelled polygon -> LOS, otherwise NLOS.
std::vector<GridBin> classify_los(std::span<const GridBin> bins,
                                  std::span<const geo::Polygon> polygons,
                                  const geo::GeodeticPoint& origin);

/// Drops bins whose centroid falls inside any mask polygon.
std::vector<GridBin> apply_exclusion(std::span<const GridBin> bins,
                                     std::span<const geo::Polygon> mask,
                                     const geo::GeodeticPoint& origin);

double los_fraction(std::span<const GridBin> bins);

struct FitOptions {
    double d0 = 100.0;
    std::optional<double> min_d;  // defaults to d0
    std::optional<double> max_d;
    DistanceKind distance = DistanceKind::k3d;
    std::optional<double> pinned_a0;  // e.g. fspl(d0) for sensitivity runs
};

struct FitResult {
    double a0 = 0.0;
    double gamma = 0.0;
    double sigma = 0.0;
    double d0 = 100.0;
    std::size_t n_bins = 0;
    models::Interval distance_range;
    std::vector<std::string> warnings;

    double predict(double d) const { return models::log_distance(d, a0, gamma, d0); }
};

/// Bins inside [min_d, max_d] for the chosen distance.
std::vector<GridBin> select_for_fit(std::span<const GridBin> bins, const FitOptions& options);

/// Least squares of PL on 10*log10(d/d0). Sigma is the (n-1) standard
/// deviation of the residuals.
FitResult fit_log_distance(std::span<const GridBin> bins, const FitOptions& options = {});

struct ErrorStats {
    double mu_e = 0.0;
    double sigma_e = 0.0;  // (n-1) sample deviation
    double rmse = 0.0;
    std::size_t n = 0;
};

/// Statistics of e_i = model_i - measured_i; positive mean = over-prediction.
ErrorStats error_stats(std::span<const double> errors);

ErrorStats prediction_errors(std::span<const GridBin> bins, const models::ModelId& model,
                             const models::LinkGeometry& tmpl,
                             const std::optional<models::LogDistanceParams>& log_params = std::nullopt);

/// RMSE implied by a (mu, sigma, n) triple.
double rmse_from_moments(double mu_e, double sigma_e, std::size_t n);

struct PathLossPair {
    double high_db = 0.0;
    double low_db = 0.0;
};

struct OffsetResult {
    double offset_db = 0.0;
    double sigma_db = 0.0;
    std::size_t n_pairs = 0;
};

/// Pairs bins present in both tables by grid index.
std::vector<PathLossPair> pair_bins(std::span<const GridBin> high, std::span<const GridBin> low);

/// Unit-slope fit: offset = mean(high - low), sigma = (n-1) deviation.
OffsetResult frequency_offset(std::span<const PathLossPair> pairs);

struct Histogram {
    double lower_edge = 0.0;
    double width = 1.0;
    std::vector<std::size_t> counts;
};

struct ShadowFading {
    std::vector<double> residuals;
    double gaussian_mu = 0.0;
    double gaussian_sigma = 0.0;
    Histogram histogram;
};

ShadowFading shadow_fading(std::span<const GridBin> bins, const FitResult& fit,
                           DistanceKind distance = DistanceKind::k3d);

struct CdfSeries {
    std::vector<double> values;
    std::vector<double> probabilities;
};

/// Indoor power relative to the median outdoor reference, as an
/// empirical CDF with probabilities i/n.
CdfSeries o2i_cdf(const ingest::IndoorSession& session);
CdfSeries empirical_cdf(std::vector<double> values);

struct ProfilePoint {
    double distance = 0.0;  // group center
    double median_path_loss_db = 0.0;
    std::size_t count = 0;
};

std::vector<ProfilePoint> distance_profile(std::span<const GridBin> bins, double step = 5.0,
                                           DistanceKind distance = DistanceKind::k3d);

struct LayoutSpec {
    std::size_t n = 0;
    models::Interval distance_range;  // 3D distance, log-uniform
    std::uint64_t seed = 0;
    double h_bs = 25.0;
    double h_ut = 1.5;
    double grid_size = 5.0;
    double sector_center_deg = 0.0;
    double sector_width_deg = 360.0;
    geo::GeodeticPoint origin;
};

/// Random bin positions: one bin per grid cell, 3D distance log-uniform
/// over the range, bearing uniform over the sector. Path loss is left 0.
std::vector<GridBin> synthesize_layout(const LayoutSpec& spec);

/// Sets path_loss = mean(bin) + Normal(0, sigma) draw, in bin order.
void apply_mean(std::span<GridBin> bins, const std::function<double(const GridBin&)>& mean,
                double sigma, std::uint64_t seed);

/// Bins realizing the log-distance model with Gaussian shadow fading.
std::vector<GridBin> synthesize_samples(double a0, double gamma, double sigma, double d0,
                                        std::size_t n, models::Interval distance_range,
                                        std::uint64_t seed);

}  // namespace propkit::analysis

#endif  // PROPKIT_ANALYSIS_HPP
