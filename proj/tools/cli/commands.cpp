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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "propkit/analysis.hpp"
#include "propkit/antenna.hpp"
#include "propkit/error.hpp"
#include "propkit/geo.hpp"
#include "propkit/ingest.hpp"
#include "propkit/io.hpp"
#include "propkit/models.hpp"

namespace propkit::cli {

namespace fs = std::filesystem;

namespace {

// Raised for user-facing failures that map to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <typename T>
void merge(std::optional<T>& flag, const std::optional<T>& config) {
    if (!flag && config) flag = config;
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    return out;
}

analysis::DistanceKind parse_distance_kind(const std::string& s) {
    if (s == "3d") return analysis::DistanceKind::k3d;
    if (s == "2d") return analysis::DistanceKind::k2d;
    throw InputError("--distance must be 2d or 3d");
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!part.empty()) out.push_back(part);
        }
    }
    return out;
}

std::vector<analysis::GridBin> select_split(const std::vector<analysis::GridBin>& bins,
                                            const std::string& split) {
    if (split == "all") return bins;
    if (split != "los" && split != "nlos") throw InputError("--split must be all, los or nlos");
    const bool labelled = std::any_of(bins.begin(), bins.end(), [](const analysis::GridBin& b) {
        return b.los != geo::LosLabel::kUnknown;
    });
    if (!labelled) throw InputError("no LOS labels in bin table; rerun bin with --polygons");
    const auto want = split == "los" ? geo::LosLabel::kLos : geo::LosLabel::kNlos;
    std::vector<analysis::GridBin> out;
    std::copy_if(bins.begin(), bins.end(), std::back_inserter(out),
                 [&](const analysis::GridBin& b) { return b.los == want; });
    return out;
}

antenna::AntennaPattern resolve_pattern(const std::optional<std::string>& pattern,
                                        const std::optional<std::string>& beams,
                                        const ingest::SiteConfig& site) {
    if (beams) return antenna::envelope(antenna::load_beam_set(*beams));
    if (pattern) return antenna::load_pattern(*pattern);
    if (!site.pattern_ref.empty()) return antenna::load_pattern(site.pattern_ref);
    throw InputError("no antenna pattern: pass --pattern, --beams or set pattern_ref");
}

double fspl_at(double d, double f_ghz) {
    models::LinkGeometry g;
    g.d2d = g.d3d = d;
    g.f_ghz = f_ghz;
    return models::fspl(g);
}

struct Common {
    std::optional<std::string> config_path;
    PipelineConfig config;

    void load() {
        if (config_path) config = PipelineConfig::load(*config_path);
    }
};

// ---------------------------------------------------------------- synth

struct SynthArgs {
    std::string out_dir;
    std::size_t n = 5000;
    double min_d = 100.0;
    double max_d = 2000.0;
    std::uint64_t seed = 1;
    std::optional<double> a0;
    double gamma = 2.9;
    double sigma = 6.9;
    double d0 = 100.0;
    std::optional<std::string> model;
    double los_fraction = 0.0;
    std::optional<double> los_gamma;
    std::optional<double> los_sigma;
    double freq = 3.5;
    double h_bs = 25.0;
    double h_ut = 1.5;
    double tx_power = 20.0;
    double rx_gain = 4.0;
    double boresight = 0.0;
    double sector_width = 120.0;
    double lat = 46.95;
    double lon = 7.45;
    std::string band = "3.5GHz";
    bool isotropic = false;
};

// LOS wedge from the site spanning the given relative bearings.
geo::Polygon wedge_polygon(const geo::GeodeticPoint& site, double boresight, double from_deg,
                           double to_deg, double radius) {
    geo::Polygon poly;
    poly.label = geo::LosLabel::kLos;
    poly.vertices.push_back(site);
    const int steps = std::max(2, static_cast<int>(std::ceil((to_deg - from_deg) / 0.5)));
    for (int i = 0; i <= steps; ++i) {
        const double rel = from_deg + (to_deg - from_deg) * i / steps;
        const double az = (boresight + rel) * std::numbers::pi / 180.0;
        poly.vertices.push_back(
            geo::from_local(site, geo::LocalPoint{radius * std::sin(az), radius * std::cos(az), 0.0}));
    }
    return poly;
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);

    const geo::GeodeticPoint origin{a.lat, a.lon, 0.0};
    analysis::LayoutSpec spec;
    spec.n = a.n;
    spec.distance_range = {a.min_d, a.max_d};
    spec.seed = a.seed;
    spec.h_bs = a.h_bs;
    spec.h_ut = a.h_ut;
    spec.sector_center_deg = a.boresight;
    spec.sector_width_deg = a.sector_width;
    spec.origin = origin;
    auto bins = analysis::synthesize_layout(spec);

    // relative bearing of each bin inside the sector
    std::vector<double> rel(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const double az = std::atan2(bins[i].centroid.east, bins[i].centroid.north) * 180.0 /
                          std::numbers::pi;
        double r = std::fmod(az - a.boresight + 540.0, 360.0) - 180.0;
        rel[i] = r;
    }

    std::vector<geo::Polygon> polygons;
    if (a.los_fraction > 0.0) {
        if (a.los_fraction >= 1.0) throw InputError("--los-fraction must be in [0, 1)");
        std::vector<double> sorted = rel;
        std::sort(sorted.begin(), sorted.end());
        const auto k = static_cast<std::size_t>(std::lround(a.los_fraction * sorted.size()));
        const double boundary =
            k == 0 ? sorted.front() - 1e-3
                   : (k >= sorted.size() ? sorted.back() + 1e-3 : 0.5 * (sorted[k - 1] + sorted[k]));
        polygons.push_back(wedge_polygon(origin, a.boresight, -0.5 * a.sector_width - 1.0, boundary,
                                         1.2 * a.max_d));
        for (std::size_t i = 0; i < bins.size(); ++i) {
            bins[i].los = rel[i] < boundary ? geo::LosLabel::kLos : geo::LosLabel::kNlos;
        }
    }

    models::LinkGeometry tmpl = models::LinkGeometry::from_2d(100.0, a.freq, a.h_bs, a.h_ut);
    std::optional<models::ModelId> model;
    if (a.model) model = models::ModelId::parse(*a.model);
    const double a0 =
        a.a0.value_or(fspl_at(a.d0, a.freq));

    // standard-normal draws in bin order, scaled per bin below
    std::vector<analysis::GridBin> noise = bins;
    analysis::apply_mean(noise, [](const analysis::GridBin&) { return 0.0; }, 1.0,
                         a.seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        auto& b = bins[i];
        const bool los = b.los == geo::LosLabel::kLos;
        double mean = 0.0;
        if (model) {
            models::LinkGeometry g = tmpl;
            g.d2d = b.distance_2d;
            g.d3d = b.distance_3d;
            mean = models::evaluate(*model, g).db;
        } else {
            const double gamma = los ? a.los_gamma.value_or(a.gamma) : a.gamma;
            mean = models::log_distance(b.distance_3d, a0, gamma, a.d0);
        }
        const double sigma = los ? a.los_sigma.value_or(a.sigma) : a.sigma;
        b.path_loss_db = mean + sigma * noise[i].path_loss_db;
        b.band = a.band;
    }

    ingest::SiteConfig site;
    site.site_position = origin;
    site.antenna_height_agl = a.h_bs;
    site.boresight_azimuth = a.boresight;
    site.tx_power_dbm = a.tx_power;
    site.carrier_freq_ghz = a.freq;
    site.pattern_ref = "pattern.csv";
    site.rx_gain_db = a.rx_gain;
    site.ue_height = a.h_ut;
    site.band = a.band;
    site.validate();

    antenna::BeamSet beams;
    if (a.isotropic) {
        beams.beams.push_back(antenna::AntennaPattern::constant(0.0));
        beams.layout = {1, 1};
    } else {
        beams = antenna::synthetic_grid_of_beams();
    }
    const auto env = antenna::envelope(beams);
    {
        auto f = open_output(dir / "pattern.csv");
        antenna::write_pattern_csv(f, env);
    }
    {
        auto f = open_output(dir / "site.json");
        ingest::write_site_config(f, site);
    }
    if (!polygons.empty()) {
        auto f = open_output(dir / "polygons.geojson");
        geo::write_polygons_geojson(f, polygons);
    }
    {
        auto f = open_output(dir / "truth_bins.csv");
        io::write_bin_table(f, bins);
    }

    std::vector<antenna::AntennaPattern> oriented;
    for (const auto& beam : beams.beams) oriented.push_back(beam.oriented(a.boresight, 0.0));
    std::size_t unreceivable = 0;
    {
        auto f = open_output(dir / "drive.csv");
        f << "timestamp_ms,lat,lon";
        for (std::size_t k = 0; k < oriented.size(); ++k) f << fmt::format(",mrsrp_{:02d}", k);
        f << '\n';
        const geo::Station bs{geo::LocalPoint{}, a.h_bs};
        for (std::size_t i = 0; i < bins.size(); ++i) {
            const auto& b = bins[i];
            const auto bearing = geo::azimuth_elevation(bs, geo::Station{b.centroid, a.h_ut});
            f << fmt::format("{},{:.9f},{:.9f}", 1'600'000'000'000LL + 1000LL * static_cast<long long>(i),
                             b.position.latitude, b.position.longitude);
            bool any = false;
            for (const auto& beam : oriented) {
                const double g = antenna::gain_at(beam, bearing.azimuth, bearing.elevation).gain_dbi;
                const double rx = a.tx_power + g + a.rx_gain - b.path_loss_db;
                if (rx >= -160.0 && rx <= 0.0) {
                    f << fmt::format(",{:.4f}", rx);
                    any = true;
                } else {
                    f << ',';
                }
            }
            if (!any) ++unreceivable;
            f << '\n';
        }
    }

    out << fmt::format("synthesized {} bins ({} unreceivable) into {}\n", bins.size(), unreceivable,
                       dir.string());
    if (!polygons.empty()) {
        out << fmt::format("los_fraction: {:.4f}\n", analysis::los_fraction(bins));
    }
    return kExitOk;
}

// ---------------------------------------------------------------- bin

struct BinArgs {
    std::vector<std::string> logs;
    std::optional<std::string> site;
    std::optional<std::string> pattern;
    std::optional<std::string> beams;
    std::optional<std::string> polygons;
    std::optional<std::string> exclude;
    std::optional<double> grid_size;
    std::optional<std::string> band;
    std::vector<std::int64_t> cells;
    std::optional<std::string> out;
};

int cmd_bin(BinArgs a, const Common& common, std::ostream& out, std::ostream& err) {
    const auto& cfg = common.config;
    merge(a.site, cfg.site);
    merge(a.pattern, cfg.pattern);
    merge(a.polygons, cfg.polygons);
    merge(a.exclude, cfg.exclusion_mask);
    merge(a.grid_size, cfg.grid_size);
    if (!a.site) throw InputError("--site is required");
    const double grid = a.grid_size.value_or(5.0);
    if (!(grid > 0.0)) throw InputError("--grid-size must be positive");

    const auto site = ingest::load_site_config(*a.site);
    const std::string band = a.band.value_or(site.band);

    std::optional<std::set<std::int64_t>> cells;
    if (!a.cells.empty()) cells = std::set<std::int64_t>(a.cells.begin(), a.cells.end());

    std::vector<ingest::MeasurementSample> samples;
    std::size_t rows = 0, skipped = 0, filtered = 0;
    for (const auto& path : a.logs) {
        auto parsed = ingest::load_samples(path, band, cells);
        rows += parsed.rows;
        skipped += parsed.skipped;
        filtered += parsed.filtered;
        for (const auto& w : parsed.warnings) err << "warning: " << path << ": " << w << '\n';
        samples.insert(samples.end(), parsed.samples.begin(), parsed.samples.end());
    }
    if (samples.empty()) throw InputError("no samples");
    const auto pattern = resolve_pattern(a.pattern, a.beams, site);

    const auto aggregates = analysis::aggregate_bins(samples, site.site_position, grid);
    auto extracted = analysis::extract_path_loss(aggregates, site, pattern);
    for (const auto& w : extracted.warnings) err << "warning: " << w << '\n';
    auto bins = std::move(extracted.bins);

    if (a.exclude) {
        const auto mask = geo::load_polygons(*a.exclude);
        const auto before = bins.size();
        bins = analysis::apply_exclusion(bins, mask, site.site_position);
        out << fmt::format("excluded_by_mask: {}\n", before - bins.size());
    }
    if (a.polygons) {
        const auto polys = geo::load_polygons(*a.polygons);
        bins = analysis::classify_los(bins, polys, site.site_position);
    }
    if (bins.empty()) throw InputError("no samples left after binning");

    const fs::path out_path = a.out ? fs::path(*a.out)
                                    : fs::path(cfg.output_dir.value_or(".")) / "bins.csv";
    {
        auto f = open_output(out_path);
        io::write_bin_table(f, bins);
    }

    double lo = bins.front().distance_3d, hi = lo;
    for (const auto& b : bins) {
        lo = std::min(lo, b.distance_3d);
        hi = std::max(hi, b.distance_3d);
    }
    out << fmt::format("rows: {} samples: {} skipped: {} filtered: {}\n", rows, samples.size(),
                       skipped, filtered);
    out << fmt::format("bins: {}\n", bins.size());
    if (a.polygons) {
        out << fmt::format("los_fraction: {:.4f}\n", analysis::los_fraction(bins));
    } else {
        out << "los_fraction: n/a\n";
    }
    out << fmt::format("distance_range_m: {:.1f} {:.1f}\n", lo, hi);
    out << "wrote " << out_path.string() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
    std::string bins;
    std::optional<double> d0;
    std::optional<double> min_d;
    std::optional<double> max_d;
    std::optional<std::string> distance;
    std::vector<std::string> splits;
    std::optional<double> pin_a0_freq;
    std::optional<std::string> out;
    std::optional<std::string> profile;
};

int cmd_fit(FitArgs a, const Common& common, std::ostream& out) {
    const auto& cfg = common.config;
    merge(a.d0, cfg.d0);
    merge(a.min_d, cfg.min_d);
    merge(a.max_d, cfg.max_d);
    merge(a.distance, cfg.distance);
    if (a.splits.empty() && cfg.split) a.splits.push_back(*cfg.split);
    auto splits = split_list(a.splits);
    if (splits.empty()) splits.push_back("all");

    const auto bins = io::load_bin_table(a.bins);
    analysis::FitOptions opt;
    opt.d0 = a.d0.value_or(100.0);
    opt.min_d = a.min_d;
    opt.max_d = a.max_d;
    opt.distance = parse_distance_kind(a.distance.value_or("3d"));
    if (a.pin_a0_freq) {
        opt.pinned_a0 = fspl_at(opt.d0, *a.pin_a0_freq);
    }

    nlohmann::ordered_json doc;
    doc["distance"] = opt.distance == analysis::DistanceKind::k3d ? "3d" : "2d";
    nlohmann::ordered_json fits;
    for (const auto& split : splits) {
        const auto subset = select_split(bins, split);
        const auto fit = analysis::fit_log_distance(subset, opt);
        const auto used = analysis::select_for_fit(subset, opt);
        const auto sf = analysis::shadow_fading(used, fit, opt.distance);

        auto j = io::to_json(fit);
        j["split"] = split;
        j["shadow_fading"] = {{"mu", sf.gaussian_mu},
                              {"sigma", sf.gaussian_sigma},
                              {"histogram_lower_edge", sf.histogram.lower_edge},
                              {"histogram_width", sf.histogram.width},
                              {"histogram_counts", sf.histogram.counts}};
        fits[split] = j;
        out << fmt::format("{}: a0={:.2f} dB gamma={:.3f} sigma={:.2f} dB n={} d=[{:.1f}, {:.1f}] m\n",
                           split, fit.a0, fit.gamma, fit.sigma, fit.n_bins, fit.distance_range.lo,
                           fit.distance_range.hi);
    }
    doc["fits"] = fits;

    const fs::path out_path = a.out ? fs::path(*a.out)
                                    : fs::path(cfg.output_dir.value_or(".")) / "fit.json";
    {
        auto f = open_output(out_path);
        f << doc.dump(2) << '\n';
    }
    if (a.profile) {
        auto f = open_output(*a.profile);
        f << "distance_m,median_pl_db,count\n";
        for (const auto& p : analysis::distance_profile(bins, 5.0, opt.distance)) {
            f << fmt::format("{:.1f},{:.6f},{}\n", p.distance, p.median_path_loss_db, p.count);
        }
    }
    out << "wrote " << out_path.string() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
    std::string bins;
    std::optional<std::string> site;
    std::vector<std::string> models;
    std::optional<std::string> split;
    std::optional<std::string> distance;
    std::optional<double> d0;
    std::optional<double> min_d;
    std::optional<double> max_d;
    std::optional<double> freq;
    std::optional<double> h_bs;
    std::optional<double> h_ut;
    std::optional<double> building_height;
    std::optional<double> street_width;
    std::optional<std::string> out;
};

int cmd_compare(CompareArgs a, const Common& common, std::ostream& out) {
    const auto& cfg = common.config;
    merge(a.site, cfg.site);
    merge(a.split, cfg.split);
    merge(a.distance, cfg.distance);
    merge(a.d0, cfg.d0);
    merge(a.min_d, cfg.min_d);
    merge(a.max_d, cfg.max_d);
    if (a.models.empty()) a.models = cfg.models;

    std::vector<models::ModelId> ids;
    for (const auto& name : split_list(a.models)) ids.push_back(models::ModelId::parse(name));
    if (ids.empty()) ids = models::catalog();

    models::LinkGeometry tmpl;
    if (a.site) {
        const auto site = ingest::load_site_config(*a.site);
        tmpl.f_ghz = site.carrier_freq_ghz;
        tmpl.h_bs = site.antenna_height_agl;
        tmpl.h_ut = site.ue_height;
    }
    if (a.freq) tmpl.f_ghz = *a.freq;
    if (a.h_bs) tmpl.h_bs = *a.h_bs;
    if (a.h_ut) tmpl.h_ut = *a.h_ut;
    tmpl.avg_building_height = a.building_height;
    tmpl.avg_street_width = a.street_width;
    if (!(tmpl.f_ghz > 0.0) || !(tmpl.h_bs > 0.0) || !(tmpl.h_ut > 0.0)) {
        throw InputError("link geometry incomplete: pass --site or --freq/--h-bs/--h-ut");
    }

    auto bins = select_split(io::load_bin_table(a.bins), a.split.value_or("all"));
    const auto kind = parse_distance_kind(a.distance.value_or("3d"));
    {
        // compare over every bin unless a range was requested
        analysis::FitOptions range;
        range.d0 = a.d0.value_or(100.0);
        range.min_d = a.min_d.value_or(0.0);
        range.max_d = a.max_d;
        range.distance = kind;
        bins = analysis::select_for_fit(bins, range);
    }
    if (bins.empty()) throw InputError("no bins to compare");

    std::optional<models::LogDistanceParams> log_params;
    const bool wants_log = std::any_of(ids.begin(), ids.end(), [](const models::ModelId& id) {
        return id.family == models::Family::kLogDistance;
    });
    if (wants_log) {
        analysis::FitOptions opt;
        opt.d0 = a.d0.value_or(100.0);
        opt.min_d = a.min_d;
        opt.max_d = a.max_d;
        opt.distance = kind;
        const auto fit = analysis::fit_log_distance(bins, opt);
        log_params = models::LogDistanceParams{fit.a0, fit.gamma, fit.d0};
    }

    // one task per model; results land in input order
    std::vector<std::future<analysis::ErrorStats>> tasks;
    for (const auto& id : ids) {
        tasks.push_back(std::async(std::launch::async, [&, id] {
            return analysis::prediction_errors(bins, id, tmpl, log_params);
        }));
    }
    std::vector<analysis::ErrorStats> stats;
    for (auto& t : tasks) stats.push_back(t.get());

    std::vector<std::size_t> order(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return stats[x].rmse < stats[y].rmse; });

    const fs::path dir(a.out ? *a.out : cfg.output_dir.value_or("."));
    nlohmann::ordered_json doc;
    nlohmann::ordered_json per_model = nlohmann::ordered_json::array();
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const std::size_t i = order[rank];
        auto j = io::to_json(stats[i]);
        nlohmann::ordered_json row;
        row["rank"] = rank + 1;
        row["model"] = ids[i].name();
        for (auto it = j.begin(); it != j.end(); ++it) row[it.key()] = it.value();
        per_model.push_back(row);
    }
    doc["n_bins"] = bins.size();
    doc["models"] = per_model;
    {
        auto f = open_output(dir / "compare.json");
        f << doc.dump(2) << '\n';
    }

    double lo = bins.front().distance_2d, hi = lo;
    for (const auto& b : bins) {
        lo = std::min(lo, b.distance_2d);
        hi = std::max(hi, b.distance_2d);
    }
    lo = std::max(lo, 1.0);
    hi = std::max(hi, lo * 1.0001);
    constexpr int kCurvePoints = 50;
    std::vector<double> distances;
    for (int k = 0; k < kCurvePoints; ++k) {
        distances.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (kCurvePoints - 1)));
    }
    {
        auto f = open_output(dir / "curves.csv");
        f << "model,d2d_m,d3d_m,pl_db,warnings\n";
        for (const auto& id : ids) {
            for (const auto& p : models::predict_series(id, tmpl, distances, log_params)) {
                f << fmt::format("{},{:.3f},{:.3f},{:.6f},{}\n", id.name(), p.d2d, p.d3d, p.loss.db,
                                 models::describe(p.loss.warnings));
            }
        }
    }

    out << fmt::format("{:<4} {:<24} {:>9} {:>9} {:>9}\n", "rank", "model", "mu_e", "sigma_e", "rmse");
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const auto& s = stats[order[rank]];
        out << fmt::format("{:<4} {:<24} {:>9.2f} {:>9.2f} {:>9.2f}\n", rank + 1,
                           ids[order[rank]].name(), s.mu_e, s.sigma_e, s.rmse);
    }
    out << "wrote " << (dir / "compare.json").string() << " and " << (dir / "curves.csv").string()
        << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- offset

struct OffsetArgs {
    std::string high;
    std::string low;
    std::optional<std::string> out;
};

int cmd_offset(const OffsetArgs& a, const Common& common, std::ostream& out) {
    const auto high = io::load_bin_table(a.high);
    const auto low = io::load_bin_table(a.low);
    const auto pairs = analysis::pair_bins(high, low);
    if (pairs.empty()) throw InputError("the two bin tables share no grid cells");
    const auto r = analysis::frequency_offset(pairs);

    const fs::path path = a.out ? fs::path(*a.out)
                                : fs::path(common.config.output_dir.value_or(".")) / "offset.json";
    {
        auto f = open_output(path);
        f << io::to_json(r).dump(2) << '\n';
    }
    out << fmt::format("offset: {:.3f} dB sigma: {:.3f} dB pairs: {}\n", r.offset_db, r.sigma_db,
                       r.n_pairs);
    out << "wrote " << path.string() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- o2i

struct O2iArgs {
    std::string manifest;
    std::optional<std::string> out;
};

std::string safe_name(const std::string& s) {
    std::string out;
    for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return out;
}

int cmd_o2i(const O2iArgs& a, const Common& common, std::ostream& out) {
    const auto sessions = ingest::load_indoor_manifest(a.manifest);
    if (sessions.empty()) throw InputError("indoor manifest lists no sessions");
    const fs::path dir(a.out ? *a.out : common.config.output_dir.value_or("."));

    // compute everything before writing so a bad session leaves no partial output
    std::vector<analysis::CdfSeries> series;
    for (const auto& s : sessions) series.push_back(analysis::o2i_cdf(s));

    nlohmann::ordered_json summary = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < sessions.size(); ++i) {
        const auto& s = sessions[i];
        const auto name = fmt::format("o2i_{}_f{}.csv", safe_name(s.building_id), s.floor);
        {
            auto f = open_output(dir / name);
            io::write_cdf_csv(f, series[i]);
        }
        const double med = analysis::median(series[i].values);
        summary.push_back({{"building_id", s.building_id},
                           {"floor", s.floor},
                           {"file", name},
                           {"n", series[i].values.size()},
                           {"median_loss_db", med}});
        out << fmt::format("{} floor {}: n={} median={:.2f} dB -> {}\n", s.building_id, s.floor,
                           series[i].values.size(), med, name);
    }
    auto f = open_output(dir / "o2i_summary.json");
    f << summary.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    const auto base = fs::path(path).parent_path();
    auto path_field = [&](const char* key) -> std::optional<std::string> {
        if (!doc.contains(key)) return std::nullopt;
        fs::path p(doc.at(key).get<std::string>());
        return (p.is_relative() ? base / p : p).string();
    };
    auto num = [&](const char* key) -> std::optional<double> {
        if (!doc.contains(key)) return std::nullopt;
        return doc.at(key).get<double>();
    };

    PipelineConfig c;
    try {
        c.site = path_field("site");
        c.pattern = path_field("pattern");
        c.polygons = path_field("polygons");
        c.exclusion_mask = path_field("exclusion_mask");
        c.output_dir = path_field("output_dir");
        c.grid_size = num("grid_size");
        c.d0 = num("d0");
        if (doc.contains("distance_filter")) {
            c.min_d = doc.at("distance_filter").at(0).get<double>();
            c.max_d = doc.at("distance_filter").at(1).get<double>();
        }
        if (doc.contains("distance")) c.distance = doc.at("distance").get<std::string>();
        if (doc.contains("split")) c.split = doc.at("split").get<std::string>();
        if (doc.contains("models")) c.models = doc.at("models").get<std::vector<std::string>>();
        if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    if (c.grid_size && !(*c.grid_size > 0.0)) throw ValidationError("config: grid_size must be > 0");
    if (c.d0 && !(*c.d0 > 0.0)) throw ValidationError("config: d0 must be > 0");
    return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"propkit: path-loss models and drive-test analysis", "propkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    Common common;
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "Pipeline config JSON (flags win)");
    };

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "Generate a synthetic drive test (site, pattern, log)");
    s->add_option("--out", synth.out_dir, "Output directory")->required();
    s->add_option("--n", synth.n, "Number of bins");
    s->add_option("--min-d", synth.min_d, "Minimum 3D distance [m]");
    s->add_option("--max-d", synth.max_d, "Maximum 3D distance [m]");
    s->add_option("--seed", synth.seed, "RNG seed");
    s->add_option("--a0", synth.a0, "Intercept at d0 [dB] (default FSPL(d0))");
    s->add_option("--gamma", synth.gamma, "Path-loss exponent");
    s->add_option("--sigma", synth.sigma, "Shadow fading std [dB]");
    s->add_option("--d0", synth.d0, "Reference distance [m]");
    s->add_option("--model", synth.model, "Draw the mean from a catalog model instead");
    s->add_option("--los-fraction", synth.los_fraction, "Fraction of bins inside a LOS polygon");
    s->add_option("--los-gamma", synth.los_gamma, "Exponent for LOS bins");
    s->add_option("--los-sigma", synth.los_sigma, "Shadow fading for LOS bins [dB]");
    s->add_option("--freq", synth.freq, "Carrier [GHz]");
    s->add_option("--h-bs", synth.h_bs, "BS antenna height [m]");
    s->add_option("--h-ut", synth.h_ut, "UE antenna height [m]");
    s->add_option("--tx-power", synth.tx_power, "Port power [dBm]");
    s->add_option("--rx-gain", synth.rx_gain, "UE gain [dB]");
    s->add_option("--boresight", synth.boresight, "Sector boresight azimuth [deg]");
    s->add_option("--sector-width", synth.sector_width, "Sector width [deg]");
    s->add_option("--lat", synth.lat, "Site latitude");
    s->add_option("--lon", synth.lon, "Site longitude");
    s->add_option("--band", synth.band, "Band label");
    s->add_flag("--isotropic", synth.isotropic, "0 dBi single-beam pattern");
    add_config(s);

    BinArgs bin;
    auto* b = app.add_subcommand("bin", "Bin drive-test logs and extract path loss");
    b->add_option("logs", bin.logs, "Testbed, scanner or sample CSV logs")->required();
    b->add_option("--site", bin.site, "Site config JSON");
    b->add_option("--pattern", bin.pattern, "Antenna pattern CSV");
    b->add_option("--beams", bin.beams, "Beam-set manifest; the envelope is used");
    b->add_option("--polygons", bin.polygons, "LOS polygons GeoJSON");
    b->add_option("--exclude", bin.exclude, "Exclusion mask GeoJSON");
    b->add_option("--grid-size", bin.grid_size, "Bin size [m]");
    b->add_option("--band", bin.band, "Band label for testbed/scanner logs");
    b->add_option("--cells", bin.cells, "Scanner cells of interest")->delimiter(',');
    b->add_option("--out", bin.out, "Bin table CSV");
    add_config(b);

    FitArgs fit;
    auto* f = app.add_subcommand("fit", "Log-distance regression on a bin table");
    f->add_option("bins", fit.bins, "Bin table CSV")->required();
    f->add_option("--d0", fit.d0, "Reference distance [m]");
    f->add_option("--min-d", fit.min_d, "Minimum distance [m] (default d0)");
    f->add_option("--max-d", fit.max_d, "Maximum distance [m]");
    f->add_option("--distance", fit.distance, "2d or 3d");
    f->add_option("--split", fit.splits, "all, los, nlos (repeat or comma-separate)");
    f->add_option("--pin-a0-freq", fit.pin_a0_freq, "Pin a0 to FSPL(d0) at this GHz");
    f->add_option("--out", fit.out, "Fit JSON");
    f->add_option("--profile", fit.profile, "Distance-profile CSV (5 m groups)");
    add_config(f);

    CompareArgs cmp;
    auto* c = app.add_subcommand("compare", "Model prediction errors against a bin table");
    c->add_option("bins", cmp.bins, "Bin table CSV")->required();
    c->add_option("--site", cmp.site, "Site config JSON (frequency and heights)");
    c->add_option("--models", cmp.models, "Model ids (default: full catalog)");
    c->add_option("--split", cmp.split, "all, los or nlos");
    c->add_option("--distance", cmp.distance, "2d or 3d");
    c->add_option("--d0", cmp.d0, "Reference distance for LOG_DISTANCE [m]");
    c->add_option("--min-d", cmp.min_d, "Minimum distance [m]");
    c->add_option("--max-d", cmp.max_d, "Maximum distance [m]");
    c->add_option("--freq", cmp.freq, "Carrier [GHz]");
    c->add_option("--h-bs", cmp.h_bs, "BS antenna height [m]");
    c->add_option("--h-ut", cmp.h_ut, "UE antenna height [m]");
    c->add_option("--building-height", cmp.building_height, "RMa average building height [m]");
    c->add_option("--street-width", cmp.street_width, "RMa average street width [m]");
    c->add_option("--out", cmp.out, "Output directory");
    add_config(c);

    OffsetArgs off;
    auto* o = app.add_subcommand("offset", "Unit-slope offset between two bands");
    o->add_option("high", off.high, "Bin table of the higher band")->required();
    o->add_option("low", off.low, "Bin table of the lower band")->required();
    o->add_option("--out", off.out, "Offset JSON");
    add_config(o);

    O2iArgs o2i;
    auto* i = app.add_subcommand("o2i", "Outdoor-to-indoor loss CDFs per building");
    i->add_option("manifest", o2i.manifest, "Indoor session manifest JSON")->required();
    i->add_option("--out", o2i.out, "Output directory");
    add_config(i);

    std::optional<std::string> models_out;
    auto* m = app.add_subcommand("models", "Dump the model catalog as JSON");
    m->add_option("--out", models_out, "Write to file instead of stdout");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        common.load();
        if (s->parsed()) return cmd_synth(synth, out);
        if (b->parsed()) return cmd_bin(bin, common, out, err);
        if (f->parsed()) return cmd_fit(fit, common, out);
        if (c->parsed()) return cmd_compare(cmp, common, out);
        if (o->parsed()) return cmd_offset(off, common, out);
        if (i->parsed()) return cmd_o2i(o2i, common, out);
        if (m->parsed()) {
            const auto json = models::catalog_json();
            if (models_out) {
                auto file = open_output(*models_out);
                file << json << '\n';
            } else {
                out << json << '\n';
            }
            return kExitOk;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace propkit::cli
