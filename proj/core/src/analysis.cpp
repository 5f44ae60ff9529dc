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

#include "propkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "propkit/error.hpp"

namespace propkit::analysis {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// (n-1) sample deviation; 0 for a single value.
double sample_sd(std::span<const double> v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

double median(std::vector<double> values) {
    if (values.empty()) throw ValidationError("median of an empty set");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower =
        *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

std::vector<BinAggregate> aggregate_bins(std::span<const ingest::MeasurementSample> samples,
                                         const geo::GeodeticPoint& origin, double grid_size) {
    detail::require_positive(grid_size, "grid_size");

    struct Acc {
        std::vector<double> powers;
        std::vector<std::tuple<double, double, double>> points;
    };
    std::map<std::tuple<std::string, std::int64_t, std::int64_t>, Acc> groups;
    for (const auto& s : samples) {
        const auto p = geo::to_local(origin, s.position);
        const auto idx = geo::bin_index(p, grid_size);
        auto& acc = groups[{s.band, idx.ix, idx.iy}];
        acc.powers.push_back(s.received_power_dbm);
        acc.points.emplace_back(p.east, p.north, p.up);
    }

    std::vector<BinAggregate> out;
    out.reserve(groups.size());
    for (auto& [key, acc] : groups) {
        const auto n = static_cast<double>(acc.powers.size());
        // summation order fixed by sorting, so the centroid is bit-identical
        // for any input permutation
        std::sort(acc.points.begin(), acc.points.end());
        double east = 0.0, north = 0.0, up = 0.0;
        for (const auto& [e, nn, u] : acc.points) {
            east += e;
            north += nn;
            up += u;
        }
        BinAggregate bin;
        bin.index = geo::GridIndex{std::get<1>(key), std::get<2>(key)};
        bin.band = std::get<0>(key);
        bin.count = acc.powers.size();
        bin.centroid = geo::LocalPoint{east / n, north / n, up / n};
        bin.median_rx_power_dbm = median(std::move(acc.powers));
        out.push_back(std::move(bin));
    }
    return out;
}

ExtractResult extract_path_loss(std::span<const BinAggregate> bins, const ingest::SiteConfig& site,
                                const antenna::AntennaPattern& pattern) {
    site.validate();
    const auto oriented = pattern.oriented(site.boresight_azimuth, site.mechanical_tilt);
    const geo::Station bs{geo::LocalPoint{}, site.antenna_height_agl};

    ExtractResult result;
    for (const auto& agg : bins) {
        const geo::Station ue{agg.centroid, site.ue_height};
        const auto range = geo::distance_3d(bs, ue);
        if (range.horizontal < 1e-6) {
            ++result.excluded;
            result.warnings.push_back(fmt::format("bin ({}, {}) at the site location excluded",
                                                  agg.index.ix, agg.index.iy));
            continue;
        }
        const auto bearing = geo::azimuth_elevation(bs, ue);
        const auto gain = antenna::gain_at(oriented, bearing.azimuth, bearing.elevation);
        if (gain.elevation_clamped) ++result.elevation_clamped;

        const double pl = site.effective_tx_power_dbm() + gain.gain_dbi + site.rx_gain_db -
                          agg.median_rx_power_dbm;
        if (!(pl > 0.0)) {
            ++result.excluded;
            result.warnings.push_back(fmt::format("bin ({}, {}) has non-positive path loss {:.2f} dB",
                                                  agg.index.ix, agg.index.iy, pl));
            continue;
        }

        GridBin bin;
        bin.index = agg.index;
        bin.centroid = agg.centroid;
        bin.position = geo::from_local(site.site_position, agg.centroid);
        bin.median_rx_power_dbm = agg.median_rx_power_dbm;
        bin.path_loss_db = pl;
        bin.distance_3d = range.slant;
        bin.distance_2d = range.horizontal;
        bin.sample_count = agg.count;
        bin.band = agg.band;
        result.bins.push_back(std::move(bin));
    }
    if (result.elevation_clamped > 0) {
        result.warnings.push_back(fmt::format(
            "{} bin(s) outside the pattern elevation range; gain clamped", result.elevation_clamped));
    }
    return result;
}

std::vector<GridBin> classify_los(std::span<const GridBin> bins,
                                  std::span<const geo::Polygon> polygons,
                                  const geo::GeodeticPoint& origin) {
    std::vector<std::vector<geo::LocalPoint>> rings;
    for (const auto& poly : polygons) {
        if (poly.label == geo::LosLabel::kLos) rings.push_back(geo::project_ring(origin, poly));
    }
    std::vector<GridBin> out(bins.begin(), bins.end());
    for (auto& bin : out) {
        const bool inside = std::any_of(rings.begin(), rings.end(), [&](const auto& ring) {
            return geo::point_in_polygon(bin.centroid, ring);
        });
        bin.los = inside ? geo::LosLabel::kLos : geo::LosLabel::kNlos;
    }
    return out;
}

std::vector<GridBin> apply_exclusion(std::span<const GridBin> bins,
                                     std::span<const geo::Polygon> mask,
                                     const geo::GeodeticPoint& origin) {
    std::vector<std::vector<geo::LocalPoint>> rings;
    for (const auto& poly : mask) rings.push_back(geo::project_ring(origin, poly));
    std::vector<GridBin> out;
    for (const auto& bin : bins) {
        const bool masked = std::any_of(rings.begin(), rings.end(), [&](const auto& ring) {
            return geo::point_in_polygon(bin.centroid, ring);
        });
        if (!masked) out.push_back(bin);
    }
    return out;
}

double los_fraction(std::span<const GridBin> bins) {
    if (bins.empty()) return 0.0;
    const auto n = std::count_if(bins.begin(), bins.end(),
                                 [](const GridBin& b) { return b.los == geo::LosLabel::kLos; });
    return static_cast<double>(n) / static_cast<double>(bins.size());
}

std::vector<GridBin> select_for_fit(std::span<const GridBin> bins, const FitOptions& options) {
    detail::require_positive(options.d0, "d0");
    const double lo = options.min_d.value_or(options.d0);
    const double hi = options.max_d.value_or(std::numeric_limits<double>::infinity());
    std::vector<GridBin> out;
    for (const auto& b : bins) {
        const double d = b.distance(options.distance);
        if (d >= lo && d <= hi) out.push_back(b);
    }
    return out;
}

FitResult fit_log_distance(std::span<const GridBin> all_bins, const FitOptions& options) {
    const auto bins = select_for_fit(all_bins, options);
    if (bins.size() < 2) {
        throw ValidationError(fmt::format("log-distance fit needs at least 2 bins in range, got {}",
                                          bins.size()));
    }

    const std::size_t n = bins.size();
    std::vector<double> x(n), y(n);
    FitResult fit;
    fit.d0 = options.d0;
    fit.n_bins = n;
    fit.distance_range = {std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double d = bins[i].distance(options.distance);
        x[i] = 10.0 * std::log10(d / options.d0);
        y[i] = bins[i].path_loss_db;
        fit.distance_range.lo = std::min(fit.distance_range.lo, d);
        fit.distance_range.hi = std::max(fit.distance_range.hi, d);
    }

    const double mx = mean_of(x);
    double sxx = 0.0;
    for (double xi : x) sxx += (xi - mx) * (xi - mx);
    if (!(sxx > 0.0)) throw ValidationError("log-distance fit needs a spread of distances");

    if (options.pinned_a0) {
        double sxy = 0.0;
        double sx2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxy += x[i] * (y[i] - *options.pinned_a0);
            sx2 += x[i] * x[i];
        }
        fit.a0 = *options.pinned_a0;
        fit.gamma = sxy / sx2;
    } else {
        const double my = mean_of(y);
        double sxy = 0.0;
        for (std::size_t i = 0; i < n; ++i) sxy += (x[i] - mx) * (y[i] - my);
        fit.gamma = sxy / sxx;
        fit.a0 = my - fit.gamma * mx;
    }

    std::vector<double> residuals(n);
    for (std::size_t i = 0; i < n; ++i) residuals[i] = y[i] - (fit.a0 + fit.gamma * x[i]);
    fit.sigma = sample_sd(residuals, mean_of(residuals));
    if (n == 2) fit.warnings.push_back("fit through exactly 2 bins; sigma is not meaningful");
    return fit;
}

ErrorStats error_stats(std::span<const double> errors) {
    if (errors.empty()) throw ValidationError("error statistics need at least one bin");
    ErrorStats s;
    s.n = errors.size();
    s.mu_e = mean_of(errors);
    s.sigma_e = sample_sd(errors, s.mu_e);
    double sq = 0.0;
    for (double e : errors) sq += e * e;
    s.rmse = std::sqrt(sq / static_cast<double>(s.n));
    return s;
}

double rmse_from_moments(double mu_e, double sigma_e, std::size_t n) {
    if (n == 0) throw ValidationError("n must be positive");
    const double nn = static_cast<double>(n);
    return std::sqrt(mu_e * mu_e + sigma_e * sigma_e * (nn - 1.0) / nn);
}

ErrorStats prediction_errors(std::span<const GridBin> bins, const models::ModelId& model,
                             const models::LinkGeometry& tmpl,
                             const std::optional<models::LogDistanceParams>& log_params) {
    if (bins.empty()) throw ValidationError("prediction errors need at least one bin");
    std::vector<double> errors;
    errors.reserve(bins.size());
    for (const auto& b : bins) {
        models::LinkGeometry g = tmpl;
        g.d2d = b.distance_2d;
        g.d3d = b.distance_3d;
        errors.push_back(models::evaluate(model, g, log_params).db - b.path_loss_db);
    }
    return error_stats(errors);
}

std::vector<PathLossPair> pair_bins(std::span<const GridBin> high, std::span<const GridBin> low) {
    std::map<geo::GridIndex, double> low_by_index;
    for (const auto& b : low) low_by_index[b.index] = b.path_loss_db;
    std::vector<PathLossPair> out;
    for (const auto& b : high) {
        if (auto it = low_by_index.find(b.index); it != low_by_index.end()) {
            out.push_back({b.path_loss_db, it->second});
        }
    }
    return out;
}

OffsetResult frequency_offset(std::span<const PathLossPair> pairs) {
    if (pairs.empty()) throw ValidationError("no common bins between the two bands");
    if (pairs.size() < 2) throw ValidationError("frequency offset needs at least 2 common bins");
    std::vector<double> diff;
    diff.reserve(pairs.size());
    for (const auto& p : pairs) diff.push_back(p.high_db - p.low_db);
    OffsetResult r;
    r.n_pairs = pairs.size();
    r.offset_db = mean_of(diff);
    r.sigma_db = sample_sd(diff, r.offset_db);
    return r;
}

ShadowFading shadow_fading(std::span<const GridBin> bins, const FitResult& fit,
                           DistanceKind distance) {
    ShadowFading sf;
    if (bins.empty()) return sf;
    sf.residuals.reserve(bins.size());
    for (const auto& b : bins) sf.residuals.push_back(b.path_loss_db - fit.predict(b.distance(distance)));
    sf.gaussian_mu = mean_of(sf.residuals);
    sf.gaussian_sigma = sample_sd(sf.residuals, sf.gaussian_mu);

    const auto [lo, hi] = std::minmax_element(sf.residuals.begin(), sf.residuals.end());
    sf.histogram.lower_edge = std::floor(*lo);
    sf.histogram.width = 1.0;
    const auto n_bins = static_cast<std::size_t>(std::floor(*hi) - sf.histogram.lower_edge) + 1;
    sf.histogram.counts.assign(n_bins, 0);
    for (double r : sf.residuals) {
        auto k = static_cast<std::size_t>(std::floor(r) - sf.histogram.lower_edge);
        ++sf.histogram.counts[std::min(k, n_bins - 1)];
    }
    return sf;
}

CdfSeries empirical_cdf(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    CdfSeries cdf;
    const auto n = static_cast<double>(values.size());
    cdf.probabilities.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        cdf.probabilities.push_back(static_cast<double>(i + 1) / n);
    }
    if (!cdf.probabilities.empty()) cdf.probabilities.back() = 1.0;
    cdf.values = std::move(values);
    return cdf;
}

CdfSeries o2i_cdf(const ingest::IndoorSession& session) {
    if (session.outdoor_reference.empty()) {
        throw ValidationError("building " + session.building_id + ": no outdoor reference samples");
    }
    if (session.indoor_samples.empty()) {
        throw ValidationError("building " + session.building_id + ": no indoor samples");
    }
    std::vector<double> outdoor;
    outdoor.reserve(session.outdoor_reference.size());
    for (const auto& s : session.outdoor_reference) outdoor.push_back(s.received_power_dbm);
    const double reference = median(std::move(outdoor));

    std::vector<double> rel;
    rel.reserve(session.indoor_samples.size());
    for (const auto& s : session.indoor_samples) rel.push_back(s.received_power_dbm - reference);
    return empirical_cdf(std::move(rel));
}

std::vector<ProfilePoint> distance_profile(std::span<const GridBin> bins, double step,
                                           DistanceKind distance) {
    detail::require_positive(step, "step");
    std::map<std::int64_t, std::vector<double>> groups;
    for (const auto& b : bins) {
        groups[static_cast<std::int64_t>(std::floor(b.distance(distance) / step))].push_back(
            b.path_loss_db);
    }
    std::vector<ProfilePoint> out;
    out.reserve(groups.size());
    for (auto& [k, pl] : groups) {
        const std::size_t count = pl.size();
        out.push_back({(static_cast<double>(k) + 0.5) * step, median(std::move(pl)), count});
    }
    return out;
}

std::vector<GridBin> synthesize_layout(const LayoutSpec& spec) {
    if (spec.n == 0) throw ValidationError("synthesis needs n >= 1");
    const auto& r = spec.distance_range;
    if (!(r.lo > 0.0) || !(r.hi > r.lo)) {
        throw ValidationError("synthesis distance range must satisfy 0 < lo < hi");
    }
    detail::require_positive(spec.grid_size, "grid_size");
    const double dh = spec.h_bs - spec.h_ut;
    if (r.lo <= std::abs(dh)) {
        throw ValidationError("synthesis range must start beyond the antenna height difference");
    }

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> log_d(std::log(r.lo), std::log(r.hi));
    std::uniform_real_distribution<double> bearing(-0.5 * spec.sector_width_deg,
                                                   0.5 * spec.sector_width_deg);

    const geo::Station bs{geo::LocalPoint{}, spec.h_bs};
    std::set<geo::GridIndex> taken;
    std::vector<GridBin> bins;
    bins.reserve(spec.n);
    const std::size_t max_attempts = 50 * spec.n + 1000;
    for (std::size_t attempt = 0; bins.size() < spec.n; ++attempt) {
        if (attempt >= max_attempts) {
            throw ValidationError("synthesis range too small for the requested number of bins");
        }
        const double d3 = std::exp(log_d(rng));
        const double d2 = std::sqrt(d3 * d3 - dh * dh);
        const double az = (spec.sector_center_deg + bearing(rng)) * kDegToRad;
        const geo::LocalPoint p{d2 * std::sin(az), d2 * std::cos(az), 0.0};
        const auto idx = geo::bin_index(p, spec.grid_size);
        if (!taken.insert(idx).second) continue;

        GridBin bin;
        bin.index = idx;
        bin.centroid = geo::bin_center(idx, spec.grid_size);
        bin.position = geo::from_local(spec.origin, bin.centroid);
        const auto range = geo::distance_3d(bs, geo::Station{bin.centroid, spec.h_ut});
        if (range.slant < r.lo || range.slant > r.hi) {
            taken.erase(idx);
            continue;
        }
        bin.distance_2d = range.horizontal;
        bin.distance_3d = range.slant;
        bins.push_back(std::move(bin));
    }
    return bins;
}

void apply_mean(std::span<GridBin> bins, const std::function<double(const GridBin&)>& mean,
                double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) throw ValidationError("sigma must be non-negative");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (auto& b : bins) {
        const double draw = noise(rng);
        b.path_loss_db = mean(b) + sigma * draw;
    }
}

std::vector<GridBin> synthesize_samples(double a0, double gamma, double sigma, double d0,
                                        std::size_t n, models::Interval distance_range,
                                        std::uint64_t seed) {
    detail::require_positive(d0, "d0");
    LayoutSpec spec;
    spec.n = n;
    spec.distance_range = distance_range;
    spec.seed = seed;
    auto bins = synthesize_layout(spec);
    apply_mean(
        bins, [&](const GridBin& b) { return models::log_distance(b.distance_3d, a0, gamma, d0); },
        sigma, seed ^ 0x9e3779b97f4a7c15ULL);
    return bins;
}

}  // namespace propkit::analysis
