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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "propkit/analysis.hpp"
#include "propkit/antenna.hpp"
#include "propkit/models.hpp"

using namespace propkit;

namespace {

const geo::GeodeticPoint kOrigin{47.0, 8.0, 0.0};

std::vector<ingest::MeasurementSample> random_samples(std::size_t n) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> pos(-1000.0, 1000.0), rx(-120.0, -60.0);
    std::vector<ingest::MeasurementSample> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].timestamp_ms = static_cast<std::int64_t>(i) + 1;
        out[i].position = geo::from_local(kOrigin, {pos(rng), pos(rng), 0.0});
        out[i].received_power_dbm = rx(rng);
        out[i].band = "3.5GHz";
    }
    return out;
}

void BM_AggregateBins(benchmark::State& state) {
    const auto samples = random_samples(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(analysis::aggregate_bins(samples, kOrigin));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AggregateBins)->Arg(10'000)->Arg(100'000);

void BM_GainAt(benchmark::State& state) {
    const auto env = antenna::envelope(antenna::synthetic_grid_of_beams());
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> az(0.0, 360.0), el(-30.0, 30.0);
    std::vector<std::pair<double, double>> q(4096);
    for (auto& p : q) p = {az(rng), el(rng)};
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [a, e] = q[i++ & 4095];
        benchmark::DoNotOptimize(antenna::gain_at(env, a, e));
    }
}
BENCHMARK(BM_GainAt);

void BM_Envelope48(benchmark::State& state) {
    const auto beams = antenna::synthetic_grid_of_beams();
    for (auto _ : state) benchmark::DoNotOptimize(antenna::envelope(beams));
}
BENCHMARK(BM_Envelope48);

void BM_FitLogDistance(benchmark::State& state) {
    const auto bins = analysis::synthesize_samples(83.33, 2.9, 6.9, 100.0, static_cast<std::size_t>(state.range(0)),
                                                   {100.0, 2000.0}, 3);
    for (auto _ : state) benchmark::DoNotOptimize(analysis::fit_log_distance(bins));
}
BENCHMARK(BM_FitLogDistance)->Arg(5'000);

void BM_CatalogErrors(benchmark::State& state) {
    const auto bins = analysis::synthesize_samples(83.33, 2.9, 6.9, 100.0, 5000, {100.0, 2000.0}, 4);
    const models::LinkGeometry tmpl{.f_ghz = 3.5, .h_bs = 25.0, .h_ut = 1.5};
    const auto catalog = models::catalog();
    for (auto _ : state) {
        for (const auto& id : catalog) benchmark::DoNotOptimize(analysis::prediction_errors(bins, id, tmpl));
    }
}
BENCHMARK(BM_CatalogErrors);

}  // namespace

BENCHMARK_MAIN();
