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

#include "propkit/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "csv_util.hpp"
#include "propkit/error.hpp"

namespace propkit::antenna {

namespace {

constexpr double kGridTol = 1e-6;

double wrap360(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    if (w >= 360.0) w -= 360.0;
    return w;
}

double wrap180(double deg) {
    const double w = wrap360(deg + 180.0);
    return w - 180.0;
}

// Locates x on a uniform grid: lower index and fractional offset. Values
// within 1e-9 of a node snap onto it so nodes reproduce stored gains.
std::pair<std::size_t, double> locate(double offset_steps, std::size_t cells) {
    const double nearest = std::round(offset_steps);
    if (std::abs(offset_steps - nearest) < 1e-9) offset_steps = nearest;
    double base = std::floor(offset_steps);
    if (base >= static_cast<double>(cells)) base = static_cast<double>(cells) - 1.0;
    if (base < 0.0) base = 0.0;
    return {static_cast<std::size_t>(base), offset_steps - base};
}

AngleGrid infer_grid(std::vector<double> values, const char* axis) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end(),
                             [](double a, double b) { return std::abs(a - b) < kGridTol; }),
                 values.end());
    AngleGrid grid{.start = values.front(), .step = 1.0, .count = values.size()};
    if (values.size() >= 2) {
        grid.step = values[1] - values[0];
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (std::abs(values[i] - grid.at(i)) > kGridTol) {
                throw ValidationError(std::string(axis) + " samples are not uniformly spaced");
            }
        }
    }
    return grid;
}

void validate_grids(const AngleGrid& az, const AngleGrid& el, std::size_t gain_size) {
    if (az.count == 0 || el.count == 0) throw ValidationError("pattern grid is empty");
    if (!(az.step > 0.0) || !(el.step > 0.0)) throw ValidationError("pattern step must be positive");
    if (std::abs(az.start) > kGridTol) throw ValidationError("azimuth samples must start at 0");
    if (std::abs(az.step * static_cast<double>(az.count) - 360.0) > kGridTol) {
        throw ValidationError("azimuth samples must cover [0, 360) with a uniform step");
    }
    if (el.start < -90.0 - kGridTol || el.last() > 90.0 + kGridTol) {
        throw ValidationError("elevation samples must lie within [-90, 90]");
    }
    if (gain_size != az.count * el.count) {
        throw ValidationError(fmt::format("gain array has {} values, grid needs {}", gain_size,
                                          az.count * el.count));
    }
}

}  // namespace

AntennaPattern::AntennaPattern(AngleGrid azimuth, AngleGrid elevation, std::vector<double> gain,
                               double boresight_azimuth, double mechanical_tilt)
    : azimuth_(azimuth),
      elevation_(elevation),
      gain_(std::move(gain)),
      boresight_azimuth_(wrap360(boresight_azimuth)),
      mechanical_tilt_(mechanical_tilt) {
    validate_grids(azimuth_, elevation_, gain_.size());
    for (double g : gain_) {
        if (!std::isfinite(g)) throw ValidationError("pattern gain must be finite");
    }
}

AntennaPattern AntennaPattern::constant(double gain_dbi, double az_step, double el_step) {
    const auto n_az = static_cast<std::size_t>(std::lround(360.0 / az_step));
    const auto n_el = static_cast<std::size_t>(std::lround(180.0 / el_step)) + 1;
    return AntennaPattern({0.0, az_step, n_az}, {-90.0, el_step, n_el},
                          std::vector<double>(n_az * n_el, gain_dbi));
}

AntennaPattern AntennaPattern::oriented(double boresight_azimuth, double mechanical_tilt) const {
    AntennaPattern copy = *this;
    copy.boresight_azimuth_ = wrap360(boresight_azimuth);
    copy.mechanical_tilt_ = mechanical_tilt;
    return copy;
}

AntennaPattern envelope(const BeamSet& beams) {
    if (beams.beams.empty()) throw ValidationError("beam set is empty");
    const auto& first = beams.beams.front();
    std::vector<double> gain = first.gain();
    for (std::size_t b = 1; b < beams.beams.size(); ++b) {
        const auto& beam = beams.beams[b];
        if (!beam.congruent(first)) {
            throw ValidationError(fmt::format("beam {} is sampled on a different grid", b));
        }
        const auto& g = beam.gain();
        for (std::size_t i = 0; i < gain.size(); ++i) gain[i] = std::max(gain[i], g[i]);
    }
    return AntennaPattern(first.azimuth(), first.elevation(), std::move(gain),
                          first.boresight_azimuth(), first.mechanical_tilt());
}

GainLookup gain_at(const AntennaPattern& pattern, double azimuth_deg, double elevation_deg) {
    const auto& az = pattern.azimuth();
    const auto& el = pattern.elevation();

    const double rel_az = wrap360(azimuth_deg - pattern.boresight_azimuth());
    double rel_el = elevation_deg - pattern.mechanical_tilt();

    GainLookup out;
    if (rel_el < el.start || rel_el > el.last()) {
        out.elevation_clamped = true;
        rel_el = std::clamp(rel_el, el.start, el.last());
    }

    auto [ia0, ta] = locate(rel_az / az.step, az.count);
    const std::size_t ia1 = (ia0 + 1) % az.count;

    std::size_t ie0 = 0;
    std::size_t ie1 = 0;
    double te = 0.0;
    if (el.count > 1) {
        std::tie(ie0, te) = locate((rel_el - el.start) / el.step, el.count - 1);
        ie1 = ie0 + 1;
    }

    const double g00 = pattern.node(ia0, ie0);
    const double g10 = pattern.node(ia1, ie0);
    const double g01 = pattern.node(ia0, ie1);
    const double g11 = pattern.node(ia1, ie1);
    const double lo = ta == 0.0 ? g00 : (1.0 - ta) * g00 + ta * g10;
    const double hi = ta == 0.0 ? g01 : (1.0 - ta) * g01 + ta * g11;
    out.gain_dbi = te == 0.0 ? lo : (1.0 - te) * lo + te * hi;
    return out;
}

double peak_gain(const AntennaPattern& pattern) {
    const auto& g = pattern.gain();
    if (g.empty()) throw ValidationError("pattern is empty");
    return *std::max_element(g.begin(), g.end());
}

BeamSet synthetic_grid_of_beams(std::size_t rows, std::size_t columns, double peak_dbi,
                                double az_span_deg, double el_span_deg, double step_deg) {
    if (rows == 0 || columns == 0) throw ValidationError("beam grid needs rows and columns");
    detail::require_positive(step_deg, "step_deg");

    const auto n_az = static_cast<std::size_t>(std::lround(360.0 / step_deg));
    const auto n_el = static_cast<std::size_t>(std::lround(180.0 / step_deg)) + 1;
    const AngleGrid az_grid{0.0, step_deg, n_az};
    const AngleGrid el_grid{-90.0, step_deg, n_el};

    const double bw_az = az_span_deg / static_cast<double>(columns);
    const double bw_el = el_span_deg / static_cast<double>(rows);
    constexpr double kFloorDb = 40.0;

    BeamSet set;
    set.layout = BeamLayout{rows, columns};
    for (std::size_t r = 0; r < rows; ++r) {
        // pointing angles snap to grid nodes so every lobe peak is sampled
        const double el_point =
            std::round((-el_span_deg / 2.0 + (static_cast<double>(r) + 0.5) * bw_el) / step_deg) *
            step_deg;
        for (std::size_t c = 0; c < columns; ++c) {
            const double az_point =
                std::round((-az_span_deg / 2.0 + (static_cast<double>(c) + 0.5) * bw_az) /
                           step_deg) *
                step_deg;
            std::vector<double> gain(n_az * n_el);
            for (std::size_t ie = 0; ie < n_el; ++ie) {
                const double de = (el_grid.at(ie) - el_point) / bw_el;
                for (std::size_t ia = 0; ia < n_az; ++ia) {
                    const double da = wrap180(az_grid.at(ia) - az_point) / bw_az;
                    const double atten = std::min(12.0 * (da * da + de * de), kFloorDb);
                    gain[ie * n_az + ia] = peak_dbi - atten;
                }
            }
            set.beams.emplace_back(az_grid, el_grid, std::move(gain));
        }
    }
    return set;
}

AntennaPattern read_pattern_csv(std::istream& in) {
    csv::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw ParseError(1, "pattern file is empty");
    if (csv::trim(line) != "azimuth_deg,elevation_deg,gain_dbi") {
        throw ParseError(reader.line_no(), "expected header 'azimuth_deg,elevation_deg,gain_dbi'");
    }

    struct Row {
        double az, el, gain;
        std::size_t line;
    };
    std::vector<Row> rows;
    while (reader.next(line)) {
        if (csv::trim(line).empty()) continue;
        const auto f = csv::split(line);
        if (f.size() != 3) throw ParseError(reader.line_no(), "expected 3 columns");
        rows.push_back({csv::parse_double(f[0], reader.line_no(), "azimuth_deg"),
                        csv::parse_double(f[1], reader.line_no(), "elevation_deg"),
                        csv::parse_double(f[2], reader.line_no(), "gain_dbi"), reader.line_no()});
    }
    if (rows.empty()) throw ValidationError("pattern file has no nodes");

    std::vector<double> azs, els;
    azs.reserve(rows.size());
    els.reserve(rows.size());
    for (const auto& r : rows) {
        azs.push_back(r.az);
        els.push_back(r.el);
    }
    const AngleGrid az = infer_grid(std::move(azs), "azimuth");
    const AngleGrid el = infer_grid(std::move(els), "elevation");
    if (rows.size() != az.count * el.count) {
        throw ValidationError(fmt::format("pattern has {} nodes, a {}x{} grid needs {}", rows.size(),
                                          az.count, el.count, az.count * el.count));
    }

    std::vector<double> gain(az.count * el.count, 0.0);
    std::vector<bool> seen(gain.size(), false);
    for (const auto& r : rows) {
        const auto ia = static_cast<std::size_t>(std::lround((r.az - az.start) / az.step));
        const auto ie = static_cast<std::size_t>(std::lround((r.el - el.start) / el.step));
        const std::size_t k = ie * az.count + ia;
        if (seen[k]) throw ParseError(r.line, "duplicate pattern node");
        seen[k] = true;
        gain[k] = r.gain;
    }
    return AntennaPattern(az, el, std::move(gain));
}

AntennaPattern load_pattern(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open pattern file: " + path);
    return read_pattern_csv(in);
}

void write_pattern_csv(std::ostream& out, const AntennaPattern& pattern) {
    out << "azimuth_deg,elevation_deg,gain_dbi\n";
    const auto& az = pattern.azimuth();
    const auto& el = pattern.elevation();
    for (std::size_t ie = 0; ie < el.count; ++ie) {
        for (std::size_t ia = 0; ia < az.count; ++ia) {
            out << fmt::format("{:.6f},{:.6f},{}\n", az.at(ia), el.at(ie), pattern.node(ia, ie));
        }
    }
}

BeamSet load_beam_set(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw ValidationError("cannot open beam manifest: " + manifest_path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("invalid beam manifest: ") + e.what());
    }

    const auto dir = std::filesystem::path(manifest_path).parent_path();
    BeamSet set;
    try {
        set.layout.rows = doc.at("layout").at("rows").get<std::size_t>();
        set.layout.columns = doc.at("layout").at("columns").get<std::size_t>();
        for (const auto& beam : doc.at("beams")) {
            set.beams.push_back(load_pattern((dir / beam.at("file").get<std::string>()).string()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("beam manifest: ") + e.what());
    }
    if (set.layout.rows * set.layout.columns != set.beams.size()) {
        throw ValidationError("beam count does not match manifest layout");
    }
    return set;
}

}  // namespace propkit::antenna
