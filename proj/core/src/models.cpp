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

#include "propkit/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <numbers>

#include <nlohmann/json.hpp>

#include "propkit/error.hpp"

namespace propkit::models {

namespace {

using std::log10;
constexpr double kPi = std::numbers::pi;

double wavelength(double f_ghz) { return kSpeedOfLight / (f_ghz * 1e9); }

Warning check(bool ok, Warning flag) { return ok ? Warning::kNone : flag; }

void require_geometry(const LinkGeometry& g) {
    detail::require_positive(g.d2d, "d2d");
    detail::require_positive(g.d3d, "d3d");
    detail::require_positive(g.f_ghz, "frequency");
    detail::require_positive(g.h_bs, "h_bs");
    detail::require_positive(g.h_ut, "h_ut");
}

// Published validity ranges. Table values are in km / MHz where the
// originating documents use them; everything here is m and GHz.
constexpr Interval kSuiFreq{1.0, 4.0};
constexpr Interval kSuiDist{100.0, 8000.0};
constexpr Interval kEccFreq{3.4, 3.8};
constexpr Interval kEccDist{1000.0, 10000.0};
constexpr Interval kWinnerFreq{2.0, 6.0};
constexpr Interval kWinnerDist{50.0, 5000.0};
constexpr Interval kTrFreq{0.5, 100.0};
constexpr Interval kTrDist{10.0, 5000.0};
constexpr Interval kTrRmaLosDist{10.0, 10000.0};
constexpr Interval kHataFreq{0.15, 1.5};
constexpr Interval kCost231Freq{1.5, 2.0};
constexpr Interval kHataDist{1000.0, 20000.0};
constexpr Interval kOpenRange{0.0, 1e12};

struct SuiCoefficients {
    double a, b, c;
};

SuiCoefficients sui_coefficients(SuiTerrain t) {
    switch (t) {
        case SuiTerrain::kA: return {4.6, 0.0075, 12.6};
        case SuiTerrain::kB: return {4.0, 0.0065, 17.1};
        case SuiTerrain::kC: return {3.6, 0.005, 20.0};
    }
    return {4.6, 0.0075, 12.6};
}

double tr_rma_pl1(double d3d, double f_ghz, double h) {
    const double hp = std::pow(h, 1.72);
    return 20.0 * log10(40.0 * kPi * d3d * f_ghz / 3.0) + std::min(0.03 * hp, 10.0) * log10(d3d) -
           std::min(0.044 * hp, 14.77) + 0.002 * log10(h) * d3d;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

const char* condition_suffix(Condition c) { return c == Condition::kLos ? "LOS" : "NLOS"; }

Condition parse_condition(std::string_view s, std::string_view full) {
    if (s == "LOS") return Condition::kLos;
    if (s == "NLOS") return Condition::kNlos;
    throw ValidationError("unknown model id: " + std::string(full));
}

Environment parse_environment(std::string_view s, std::string_view full) {
    if (s.empty() || s == "URBAN") return Environment::kUrban;
    if (s == "SUBURBAN") return Environment::kSuburban;
    if (s == "OPEN") return Environment::kOpen;
    throw ValidationError("unknown model id: " + std::string(full));
}

const char* environment_suffix(Environment e) {
    switch (e) {
        case Environment::kUrban: return "URBAN";
        case Environment::kSuburban: return "SUBURBAN";
        case Environment::kOpen: return "OPEN";
    }
    return "URBAN";
}

}  // namespace

LinkGeometry LinkGeometry::from_2d(double d2d, double f_ghz, double h_bs, double h_ut) {
    LinkGeometry g;
    g.f_ghz = f_ghz;
    g.h_bs = h_bs;
    g.h_ut = h_ut;
    return g.at_2d(d2d);
}

LinkGeometry LinkGeometry::at_2d(double d) const {
    LinkGeometry g = *this;
    g.d2d = d;
    g.d3d = std::hypot(d, h_bs - h_ut);
    return g;
}

void LinkGeometry::validate() const {
    require_geometry(*this);
    if (d3d + 1e-9 < d2d) throw ValidationError("d3d must not be shorter than d2d");
}

std::string describe(Warning w) {
    if (w == Warning::kNone) return "";
    std::string out;
    auto add = [&](Warning flag, const char* text) {
        if (!has(w, flag)) return;
        if (!out.empty()) out += ';';
        out += text;
    };
    add(Warning::kFrequencyRange, "frequency outside validity range");
    add(Warning::kDistanceRange, "distance outside validity range");
    add(Warning::kBsHeightRange, "BS height outside validity range");
    add(Warning::kUtHeightRange, "UT height outside validity range");
    add(Warning::kDefaultsApplied, "default parameters applied");
    add(Warning::kOscillatoryRegion, "inside two-ray oscillatory region");
    return out;
}

double fspl(const LinkGeometry& g) {
    detail::require_positive(g.d3d, "d3d");
    detail::require_positive(g.f_ghz, "frequency");
    return 20.0 * log10(g.d3d) + 20.0 * log10(g.f_ghz) + 32.45;
}

double log_distance(double d, double a0, double gamma, double d0) {
    detail::require_positive(d, "distance");
    detail::require_positive(d0, "reference distance");
    return a0 + 10.0 * gamma * log10(d / d0);
}

double sui_exponent(double h_bs, SuiTerrain terrain) {
    const auto [a, b, c] = sui_coefficients(terrain);
    return a - b * h_bs + c / h_bs;
}

double sui_frequency_correction(double f_ghz) { return 6.0 * log10(f_ghz * 1000.0 / 2000.0); }

double sui_height_correction(double h_ut, SuiTerrain terrain) {
    const double k = terrain == SuiTerrain::kC ? -20.0 : -10.8;
    return k * log10(h_ut / 2.0);
}

PathLoss sui(const LinkGeometry& g, SuiTerrain terrain) {
    require_geometry(g);
    constexpr double kD0 = 100.0;
    const double intercept = 20.0 * log10(4.0 * kPi * kD0 / wavelength(g.f_ghz));
    const double gamma = sui_exponent(g.h_bs, terrain);

    PathLoss out;
    out.db = intercept + 10.0 * gamma * log10(g.d2d / kD0) + sui_frequency_correction(g.f_ghz) +
             sui_height_correction(g.h_ut, terrain);
    out.warnings = check(kSuiFreq.contains(g.f_ghz), Warning::kFrequencyRange) |
                   check(kSuiDist.contains(g.d2d), Warning::kDistanceRange) |
                   check(g.h_bs >= 10.0 && g.h_bs <= 80.0, Warning::kBsHeightRange) |
                   check(g.h_ut >= 2.0 && g.h_ut <= 10.0, Warning::kUtHeightRange);
    return out;
}

PathLoss ecc33(const LinkGeometry& g) {
    require_geometry(g);
    const double d = log10(g.d2d / 1000.0);
    const double f = log10(g.f_ghz);

    const double free_space = 92.4 + 20.0 * d + 20.0 * f;
    const double basic_median = 20.41 + 9.83 * d + 7.894 * f + 9.56 * f * f;
    const double bs_gain = log10(g.h_bs / 200.0) * (13.958 + 5.8 * d * d);
    const double rx_gain = (42.57 + 13.7 * f) * (log10(g.h_ut) - 0.585);

    PathLoss out;
    out.db = free_space + basic_median - bs_gain - rx_gain;
    out.warnings = check(kEccFreq.contains(g.f_ghz), Warning::kFrequencyRange) |
                   check(kEccDist.contains(g.d2d), Warning::kDistanceRange);
    return out;
}

double winner2_breakpoint(const LinkGeometry& g, WinnerScenario scenario) {
    const double f_hz = g.f_ghz * 1e9;
    if (scenario == WinnerScenario::kC2) {
        const double hb = std::max(g.h_bs - 1.0, 0.0);
        const double hm = std::max(g.h_ut - 1.0, 0.0);
        return 4.0 * hb * hm * f_hz / kSpeedOfLight;
    }
    return 4.0 * g.h_bs * g.h_ut * f_hz / kSpeedOfLight;
}

PathLoss winner2(const LinkGeometry& g, WinnerScenario scenario, Condition condition) {
    require_geometry(g);
    if (condition == Condition::kNotApplicable) {
        throw ValidationError("WINNER II needs a LOS or NLOS condition");
    }
    const double d = g.d2d;
    const double fc = g.f_ghz / 5.0;
    const double hb = g.h_bs;
    const double hm = g.h_ut;

    PathLoss out;
    if (condition == Condition::kNlos) {
        switch (scenario) {
            case WinnerScenario::kC1:
                out.db = (44.9 - 6.55 * log10(hb)) * log10(d) + 31.46 + 5.83 * log10(hb) +
                         23.0 * log10(fc);
                break;
            case WinnerScenario::kC2:
                out.db = (44.9 - 6.55 * log10(hb)) * log10(d) + 34.46 + 5.83 * log10(hb) +
                         23.0 * log10(fc);
                break;
            case WinnerScenario::kD1:
                out.db = 25.1 * log10(d) + 55.4 - 0.13 * (hb - 25.0) * log10(d / 100.0) -
                         0.9 * (hm - 1.5) + 21.3 * log10(fc);
                break;
        }
    } else {
        const double bp = winner2_breakpoint(g, scenario);
        const bool near = d <= bp;
        switch (scenario) {
            case WinnerScenario::kC1:
                out.db = near ? 23.8 * log10(d) + 41.2 + 20.0 * log10(fc)
                              : 40.0 * log10(d) + 11.65 - 16.2 * log10(hb) - 16.2 * log10(hm) +
                                    3.8 * log10(fc);
                break;
            case WinnerScenario::kC2: {
                const double hb_eff = std::max(hb - 1.0, 1e-3);
                const double hm_eff = std::max(hm - 1.0, 1e-3);
                out.db = near ? 26.0 * log10(d) + 39.0 + 20.0 * log10(fc)
                              : 40.0 * log10(d) + 13.47 - 14.0 * log10(hb_eff) -
                                    14.0 * log10(hm_eff) + 6.0 * log10(fc);
                break;
            }
            case WinnerScenario::kD1:
                out.db = near ? 21.5 * log10(d) + 44.2 + 20.0 * log10(fc)
                              : 40.0 * log10(d) + 10.5 - 18.5 * log10(hb) - 18.5 * log10(hm) +
                                    1.5 * log10(fc);
                break;
        }
    }
    out.warnings = check(kWinnerFreq.contains(g.f_ghz), Warning::kFrequencyRange) |
                   check(kWinnerDist.contains(d), Warning::kDistanceRange);
    return out;
}

double tr38901_breakpoint(const LinkGeometry& g, Tr38901Scenario scenario) {
    const double f_hz = g.f_ghz * 1e9;
    if (scenario == Tr38901Scenario::kRma) {
        return 2.0 * kPi * g.h_bs * g.h_ut * f_hz / kSpeedOfLight;
    }
    // UMa effective heights with h_E = 1 m
    const double hb = std::max(g.h_bs - 1.0, 0.0);
    const double hu = std::max(g.h_ut - 1.0, 0.0);
    return 4.0 * hb * hu * f_hz / kSpeedOfLight;
}

PathLoss tr38901(const LinkGeometry& g, Tr38901Scenario scenario, Condition condition) {
    require_geometry(g);
    if (condition == Condition::kNotApplicable) {
        throw ValidationError("TR 38.901 needs a LOS or NLOS condition");
    }
    const double fc = g.f_ghz;
    const double bp = tr38901_breakpoint(g, scenario);
    const double dh = g.h_bs - g.h_ut;

    PathLoss out;
    out.warnings = check(kTrFreq.contains(fc), Warning::kFrequencyRange);

    double los = 0.0;
    if (scenario == Tr38901Scenario::kRma) {
        const double h = g.avg_building_height.value_or(5.0);
        const double w = g.avg_street_width.value_or(20.0);
        if (!g.avg_building_height || !g.avg_street_width) out.warnings |= Warning::kDefaultsApplied;

        if (g.d2d <= bp) {
            los = tr_rma_pl1(g.d3d, fc, h);
        } else {
            // Anchored at the 3D distance of the breakpoint so both slopes meet.
            const double bp3d = std::hypot(bp, dh);
            los = tr_rma_pl1(bp3d, fc, h) + 40.0 * log10(g.d3d / bp3d);
        }
        out.warnings |= check(g.h_bs >= 10.0 && g.h_bs <= 150.0, Warning::kBsHeightRange) |
                        check(g.h_ut >= 1.0 && g.h_ut <= 10.0, Warning::kUtHeightRange);

        if (condition == Condition::kLos) {
            out.db = los;
            out.warnings |= check(kTrRmaLosDist.contains(g.d2d), Warning::kDistanceRange);
            return out;
        }
        const double nlos = 161.04 - 7.1 * log10(w) + 7.5 * log10(h) -
                            (24.37 - 3.7 * (h / g.h_bs) * (h / g.h_bs)) * log10(g.h_bs) +
                            (43.42 - 3.1 * log10(g.h_bs)) * (log10(g.d3d) - 3.0) +
                            20.0 * log10(fc) -
                            (3.2 * std::pow(log10(11.75 * g.h_ut), 2.0) - 4.97);
        out.db = std::max(los, nlos);
        out.warnings |= check(kTrDist.contains(g.d2d), Warning::kDistanceRange);
        return out;
    }

    if (g.d2d <= bp) {
        los = 28.0 + 22.0 * log10(g.d3d) + 20.0 * log10(fc);
    } else {
        los = 28.0 + 40.0 * log10(g.d3d) + 20.0 * log10(fc) - 9.0 * log10(bp * bp + dh * dh);
    }
    out.warnings |= check(kTrDist.contains(g.d2d), Warning::kDistanceRange) |
                    check(g.h_ut >= 1.5 && g.h_ut <= 22.5, Warning::kUtHeightRange);
    if (condition == Condition::kLos) {
        out.db = los;
        return out;
    }
    const double nlos = 13.54 + 39.08 * log10(g.d3d) + 20.0 * log10(fc) - 0.6 * (g.h_ut - 1.5);
    out.db = std::max(los, nlos);
    return out;
}

PathLoss hata_family(const LinkGeometry& g, HataVariant variant, Environment environment) {
    require_geometry(g);
    const double f_mhz = g.f_ghz * 1000.0;
    const double lf = log10(f_mhz);
    const double lhb = log10(g.h_bs);
    const double ld = log10(g.d2d / 1000.0);

    double mobile_correction = 0.0;
    if (g.city_size == CitySize::kLarge) {
        mobile_correction = f_mhz <= 300.0 ? 8.29 * std::pow(log10(1.54 * g.h_ut), 2.0) - 1.1
                                           : 3.2 * std::pow(log10(11.75 * g.h_ut), 2.0) - 4.97;
    } else {
        mobile_correction = (1.1 * lf - 0.7) * g.h_ut - (1.56 * lf - 0.8);
    }

    const double slope = 44.9 - 6.55 * lhb;
    double urban = 0.0;
    if (variant == HataVariant::kHataOkumura) {
        urban = 69.55 + 26.16 * lf - 13.82 * lhb - mobile_correction + slope * ld;
    } else {
        const double metro = g.city_size == CitySize::kLarge ? 3.0 : 0.0;
        urban = 46.3 + 33.9 * lf - 13.82 * lhb - mobile_correction + slope * ld + metro;
    }

    PathLoss out;
    switch (environment) {
        case Environment::kUrban: out.db = urban; break;
        case Environment::kSuburban:
            out.db = urban - 2.0 * std::pow(log10(f_mhz / 28.0), 2.0) - 5.4;
            break;
        case Environment::kOpen: out.db = urban - 4.78 * lf * lf + 18.33 * lf - 40.94; break;
    }
    const Interval freq = variant == HataVariant::kHataOkumura ? kHataFreq : kCost231Freq;
    out.warnings = check(freq.contains(g.f_ghz), Warning::kFrequencyRange) |
                   check(kHataDist.contains(g.d2d), Warning::kDistanceRange) |
                   check(g.h_bs >= 30.0 && g.h_bs <= 200.0, Warning::kBsHeightRange) |
                   check(g.h_ut >= 1.0 && g.h_ut <= 10.0, Warning::kUtHeightRange);
    return out;
}

double two_ray_critical_distance(const LinkGeometry& g) {
    return 4.0 * g.h_bs * g.h_ut / wavelength(g.f_ghz);
}

double two_ray_asymptote(double d, double h_bs, double h_ut) {
    detail::require_positive(d, "distance");
    detail::require_positive(h_bs, "h_bs");
    detail::require_positive(h_ut, "h_ut");
    return 40.0 * log10(d) - 20.0 * log10(h_bs) - 20.0 * log10(h_ut);
}

PathLoss two_ray(const LinkGeometry& g) {
    require_geometry(g);
    const double lambda = wavelength(g.f_ghz);
    const double direct = std::hypot(g.d2d, g.h_bs - g.h_ut);
    const double reflected = std::hypot(g.d2d, g.h_bs + g.h_ut);
    const double phase = 2.0 * kPi * (reflected - direct) / lambda;

    constexpr double kReflection = -1.0;
    const std::complex<double> field =
        1.0 / direct + kReflection * std::polar(1.0, -phase) / reflected;
    const double gain = std::pow(lambda / (4.0 * kPi), 2.0) * std::norm(field);

    PathLoss out;
    out.db = -10.0 * log10(gain);
    out.warnings = check(g.d2d >= two_ray_critical_distance(g), Warning::kOscillatoryRegion);
    return out;
}

PathLoss evaluate(const ModelId& model, const LinkGeometry& g,
                  const std::optional<LogDistanceParams>& log_params) {
    switch (model.family) {
        case Family::kFspl: return PathLoss{fspl(g), Warning::kNone};
        case Family::kLogDistance:
            if (!log_params) throw ValidationError("LOG_DISTANCE needs a0/gamma/d0 parameters");
            return PathLoss{log_distance(g.d3d, log_params->a0, log_params->gamma, log_params->d0),
                            Warning::kNone};
        case Family::kSui: return sui(g, model.sui);
        case Family::kEcc33: return ecc33(g);
        case Family::kWinner2: return winner2(g, model.winner, model.condition);
        case Family::kTr38901: return tr38901(g, model.tr, model.condition);
        case Family::kHata: return hata_family(g, model.hata, model.environment);
        case Family::kTwoRay: return two_ray(g);
    }
    throw ValidationError("unknown model family");
}

ModelMeta meta(const ModelId& model) {
    switch (model.family) {
        case Family::kFspl:
        case Family::kLogDistance:
        case Family::kTwoRay: return {kOpenRange, kOpenRange, std::nullopt};
        case Family::kSui: {
            // IEEE 802.16.3c-01/29r4 per-terrain shadowing
            const double sigma = model.sui == SuiTerrain::kA   ? 10.6
                                 : model.sui == SuiTerrain::kB ? 9.6
                                                               : 8.2;
            return {kSuiFreq, kSuiDist, sigma};
        }
        case Family::kEcc33: return {kEccFreq, kEccDist, std::nullopt};
        case Family::kWinner2:
            return {kWinnerFreq, kWinnerDist, model.condition == Condition::kLos ? 4.0 : 8.0};
        case Family::kTr38901:
            if (model.tr == Tr38901Scenario::kRma) {
                return model.condition == Condition::kLos
                           ? ModelMeta{kTrFreq, kTrRmaLosDist, 4.0}
                           : ModelMeta{kTrFreq, kTrDist, 8.0};
            }
            return {kTrFreq, kTrDist, model.condition == Condition::kLos ? 4.0 : 6.0};
        case Family::kHata:
            return {model.hata == HataVariant::kHataOkumura ? kHataFreq : kCost231Freq, kHataDist,
                    std::nullopt};
    }
    throw ValidationError("unknown model family");
}

std::string ModelId::name() const {
    switch (family) {
        case Family::kFspl: return "FSPL";
        case Family::kLogDistance: return "LOG_DISTANCE";
        case Family::kSui:
            return sui == SuiTerrain::kA ? "SUI_A" : sui == SuiTerrain::kB ? "SUI_B" : "SUI_C";
        case Family::kEcc33: return "ECC33";
        case Family::kWinner2: {
            const char* s = winner == WinnerScenario::kC1   ? "C1"
                            : winner == WinnerScenario::kC2 ? "C2"
                                                            : "D1";
            return std::string("WINNER2_") + s + "_" + condition_suffix(condition);
        }
        case Family::kTr38901:
            return std::string("TR38901_") + (tr == Tr38901Scenario::kRma ? "RMA_" : "UMA_") +
                   condition_suffix(condition);
        case Family::kHata:
            return std::string(hata == HataVariant::kHataOkumura ? "HATA_OKUMURA_"
                                                                 : "COST231_HATA_") +
                   environment_suffix(environment);
        case Family::kTwoRay: return "TWO_RAY";
    }
    return "UNKNOWN";
}

ModelId ModelId::parse(std::string_view raw) {
    const std::string name = upper(raw);
    const std::string_view s = name;
    ModelId id;

    auto rest_after = [&](std::string_view prefix) -> std::optional<std::string_view> {
        if (s.substr(0, prefix.size()) != prefix) return std::nullopt;
        return s.substr(prefix.size());
    };

    if (s == "FSPL") return id;
    if (s == "LOG_DISTANCE") {
        id.family = Family::kLogDistance;
        return id;
    }
    if (s == "ECC33" || s == "ECC-33") {
        id.family = Family::kEcc33;
        return id;
    }
    if (s == "TWO_RAY") {
        id.family = Family::kTwoRay;
        return id;
    }
    if (s == "SUI_A" || s == "SUI_B" || s == "SUI_C") {
        id.family = Family::kSui;
        id.sui = s.back() == 'A' ? SuiTerrain::kA : s.back() == 'B' ? SuiTerrain::kB : SuiTerrain::kC;
        return id;
    }
    if (auto rest = rest_after("WINNER2_")) {
        id.family = Family::kWinner2;
        const auto scen = rest->substr(0, 2);
        if (scen == "C1") id.winner = WinnerScenario::kC1;
        else if (scen == "C2") id.winner = WinnerScenario::kC2;
        else if (scen == "D1") id.winner = WinnerScenario::kD1;
        else throw ValidationError("unknown model id: " + name);
        if (rest->size() < 4 || (*rest)[2] != '_') throw ValidationError("unknown model id: " + name);
        id.condition = parse_condition(rest->substr(3), name);
        return id;
    }
    if (auto rest = rest_after("TR38901_")) {
        id.family = Family::kTr38901;
        const auto scen = rest->substr(0, 3);
        if (scen == "RMA") id.tr = Tr38901Scenario::kRma;
        else if (scen == "UMA") id.tr = Tr38901Scenario::kUma;
        else throw ValidationError("unknown model id: " + name);
        if (rest->size() < 5 || (*rest)[3] != '_') throw ValidationError("unknown model id: " + name);
        id.condition = parse_condition(rest->substr(4), name);
        return id;
    }
    for (auto [prefix, variant] : {std::pair{std::string_view("HATA_OKUMURA"), HataVariant::kHataOkumura},
                                   std::pair{std::string_view("COST231_HATA"), HataVariant::kCost231Hata}}) {
        if (auto rest = rest_after(prefix)) {
            id.family = Family::kHata;
            id.hata = variant;
            if (rest->empty()) return id;
            if (rest->front() != '_') throw ValidationError("unknown model id: " + name);
            id.environment = parse_environment(rest->substr(1), name);
            return id;
        }
    }
    throw ValidationError("unknown model id: " + name);
}

std::vector<SeriesPoint> predict_series(const ModelId& model, const LinkGeometry& tmpl,
                                        std::span<const double> distances,
                                        const std::optional<LogDistanceParams>& log_params) {
    std::vector<SeriesPoint> out;
    out.reserve(distances.size());
    double prev = 0.0;
    for (double d : distances) {
        detail::require_positive(d, "distance");
        if (d < prev) throw ValidationError("distances must be sorted ascending");
        prev = d;
        const LinkGeometry g = tmpl.at_2d(d);
        out.push_back(SeriesPoint{g.d2d, g.d3d, evaluate(model, g, log_params)});
    }
    return out;
}

std::vector<ModelId> catalog() {
    std::vector<ModelId> out;
    out.push_back(ModelId{});
    for (auto t : {SuiTerrain::kA, SuiTerrain::kB, SuiTerrain::kC}) {
        ModelId id;
        id.family = Family::kSui;
        id.sui = t;
        out.push_back(id);
    }
    {
        ModelId id;
        id.family = Family::kEcc33;
        out.push_back(id);
    }
    for (auto s : {WinnerScenario::kC1, WinnerScenario::kC2, WinnerScenario::kD1}) {
        for (auto c : {Condition::kLos, Condition::kNlos}) {
            ModelId id;
            id.family = Family::kWinner2;
            id.winner = s;
            id.condition = c;
            out.push_back(id);
        }
    }
    for (auto s : {Tr38901Scenario::kRma, Tr38901Scenario::kUma}) {
        for (auto c : {Condition::kLos, Condition::kNlos}) {
            ModelId id;
            id.family = Family::kTr38901;
            id.tr = s;
            id.condition = c;
            out.push_back(id);
        }
    }
    for (auto v : {HataVariant::kHataOkumura, HataVariant::kCost231Hata}) {
        for (auto e : {Environment::kUrban, Environment::kSuburban, Environment::kOpen}) {
            ModelId id;
            id.family = Family::kHata;
            id.hata = v;
            id.environment = e;
            out.push_back(id);
        }
    }
    {
        ModelId id;
        id.family = Family::kTwoRay;
        out.push_back(id);
    }
    return out;
}

std::string catalog_json() {
    auto range = [](const Interval& r) -> nlohmann::json {
        if (r.hi >= kOpenRange.hi) return nullptr;
        return nlohmann::json::array({r.lo, r.hi});
    };
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& id : catalog()) {
        const auto m = meta(id);
        doc.push_back({
            {"id", id.name()},
            {"freq_range_ghz", range(m.freq_ghz)},
            {"dist_range_m", range(m.dist_m)},
            {"published_sigma_db",
             m.published_sigma_db ? nlohmann::json(*m.published_sigma_db) : nlohmann::json(nullptr)},
        });
    }
    return doc.dump(2);
}

}  // namespace propkit::models
