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

#ifndef PROPKIT_MODELS_HPP
#define PROPKIT_MODELS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace propkit::models {

inline constexpr double kSpeedOfLight = 299792458.0;

enum class CitySize { kSmall, kMedium, kLarge };
enum class Environment { kUrban, kSuburban, kOpen };
enum class Condition { kLos, kNlos, kNotApplicable };
enum class SuiTerrain { kA, kB, kC };
enum class WinnerScenario { kC1, kC2, kD1 };
enum class Tr38901Scenario { kRma, kUma };
enum class HataVariant { kHataOkumura, kCost231Hata };

struct LinkGeometry {
    double d2d = 0.0;   // m
    double d3d = 0.0;   // m
    double f_ghz = 0.0;
    double h_bs = 0.0;  // m
    double h_ut = 0.0;  // m
    std::optional<double> avg_building_height;  // m, TR 38.901 RMa
    std::optional<double> avg_street_width;     // m, TR 38.901 RMa
    CitySize city_size = CitySize::kMedium;

    /// Fills d3d from d2d and the antenna height difference.
    static LinkGeometry from_2d(double d2d, double f_ghz, double h_bs, double h_ut);

    LinkGeometry at_2d(double d2d) const;
    void validate() const;
};

/// Validity warnings raised while evaluating a model. Models still return
/// a value outside their published ranges.
enum class Warning : std::uint32_t {
    kNone = 0,
    kFrequencyRange = 1u << 0,
    kDistanceRange = 1u << 1,
    kBsHeightRange = 1u << 2,
    kUtHeightRange = 1u << 3,
    kDefaultsApplied = 1u << 4,
    kOscillatoryRegion = 1u << 5,
};

constexpr Warning operator|(Warning a, Warning b) {
    return static_cast<Warning>(static_cast<std::uint32_t>(a) | static_cast<std::uint32_t>(b));
}
constexpr Warning& operator|=(Warning& a, Warning b) { return a = a | b; }
constexpr bool has(Warning set, Warning flag) {
    return (static_cast<std::uint32_t>(set) & static_cast<std::uint32_t>(flag)) != 0;
}
std::string describe(Warning w);

struct PathLoss {
    double db = 0.0;
    Warning warnings = Warning::kNone;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return v >= lo && v <= hi; }
};

struct ModelMeta {
    Interval freq_ghz;
    Interval dist_m;
    std::optional<double> published_sigma_db;
};

enum class Family {
    kFspl,
    kLogDistance,
    kSui,
    kEcc33,
    kWinner2,
    kTr38901,
    kHata,
    kTwoRay,
};

/// A concrete model: family plus the sub-variant and propagation condition
/// where the family defines them. Canonical names look like
/// "TR38901_UMA_NLOS", "WINNER2_D1_NLOS", "SUI_C", "COST231_HATA_URBAN".
struct ModelId {
    Family family = Family::kFspl;
    Condition condition = Condition::kNotApplicable;
    SuiTerrain sui = SuiTerrain::kA;
    WinnerScenario winner = WinnerScenario::kD1;
    Tr38901Scenario tr = Tr38901Scenario::kUma;
    HataVariant hata = HataVariant::kHataOkumura;
    Environment environment = Environment::kUrban;

    std::string name() const;
    static ModelId parse(std::string_view name);
    friend bool operator==(const ModelId&, const ModelId&) = default;
};

/// Parameters for LOG_DISTANCE, which has no closed form of its own.
struct LogDistanceParams {
    double a0 = 0.0;
    double gamma = 2.0;
    double d0 = 100.0;
};

double fspl(const LinkGeometry& g);
double log_distance(double d, double a0, double gamma, double d0);

/// SUI (IEEE 802.16) terrain A/B/C. Distances in meters, reference 100 m.
PathLoss sui(const LinkGeometry& g, SuiTerrain terrain);
double sui_exponent(double h_bs, SuiTerrain terrain);
double sui_frequency_correction(double f_ghz);
double sui_height_correction(double h_ut, SuiTerrain terrain);

/// ECC-33 with the medium-city receiver gain term.
PathLoss ecc33(const LinkGeometry& g);

PathLoss winner2(const LinkGeometry& g, WinnerScenario scenario, Condition condition);
double winner2_breakpoint(const LinkGeometry& g, WinnerScenario scenario);

/// TR 38.901 RMa/UMa. NLOS is bounded below by LOS at the same geometry.
PathLoss tr38901(const LinkGeometry& g, Tr38901Scenario scenario, Condition condition);
double tr38901_breakpoint(const LinkGeometry& g, Tr38901Scenario scenario);

PathLoss hata_family(const LinkGeometry& g, HataVariant variant, Environment environment);

/// Field sum of the direct ray and a ground reflection with coefficient -1.
PathLoss two_ray(const LinkGeometry& g);
double two_ray_asymptote(double d, double h_bs, double h_ut);
double two_ray_critical_distance(const LinkGeometry& g);

PathLoss evaluate(const ModelId& model, const LinkGeometry& g,
                  const std::optional<LogDistanceParams>& log_params = std::nullopt);

ModelMeta meta(const ModelId& model);

struct SeriesPoint {
    double d2d = 0.0;
    double d3d = 0.0;
    PathLoss loss;
};

/// Evaluates `model` at each 2D distance; d3d is recomputed from the
/// template heights. Distances must be positive and sorted.
std::vector<SeriesPoint> predict_series(const ModelId& model, const LinkGeometry& tmpl,
                                        std::span<const double> distances,
                                        const std::optional<LogDistanceParams>& log_params = std::nullopt);

/// Every closed-form model with its conditions and variants. LOG_DISTANCE
/// is excluded because it needs fitted parameters.
std::vector<ModelId> catalog();

/// JSON array of {id, freq_range_ghz, dist_range_m, published_sigma_db}.
std::string catalog_json();

}  // namespace propkit::models

#endif  // PROPKIT_MODELS_HPP
