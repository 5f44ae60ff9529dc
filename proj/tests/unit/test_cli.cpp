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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "propkit/io.hpp"

namespace fs = std::filesystem;
using propkit::cli::run;

namespace {

const std::string kData = PROPKIT_TEST_DATA;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "propkit");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const char* env = std::getenv("PROPKIT_TMP");
    const fs::path root = env ? fs::path(env) : fs::temp_directory_path() / "propkit_cli_test";
    const auto dir = root / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"fit"}).code == 2);
    CHECK(invoke({"bogus"}).code == 2);
    CHECK(invoke({"fit", "x.csv", "--d0", "abc"}).code == 2);
}

TEST_CASE("models prints the catalog") {
    const auto r = invoke({"models"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.size() == 22);
}

TEST_CASE("bin with no usable samples exits 2") {
    const auto dir = scratch("empty");
    std::ofstream(dir / "empty.csv") << "timestamp_ms,lat,lon,mrsrp_00\n";
    const auto r = invoke({"bin", (dir / "empty.csv").string(), "--site", kData + "/site_urban.json",
                           "--pattern", (dir / "missing.csv").string()});
    CHECK(r.code == 2);
}

TEST_CASE("bin rejects a missing log") {
    const auto dir = scratch("missing");
    std::ofstream(dir / "p.csv") << "azimuth_deg,elevation_deg,gain_dbi\n";
    const auto r = invoke({"bin", (dir / "nope.csv").string(), "--site", kData + "/site_urban.json"});
    CHECK(r.code == 2);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("synth, bin and fit recover the LOS share and exponent") {
    const auto dir = scratch("pipeline");
    auto r = invoke({"synth", "--out", dir.string(), "--n", "2000", "--gamma", "3.1", "--sigma", "9.4",
                     "--los-fraction", "0.42", "--los-gamma", "2.3", "--los-sigma", "5.1",
                     "--h-bs", "12.4", "--h-ut", "1.4", "--seed", "5"});
    REQUIRE(r.code == 0);
    r = invoke({"bin", (dir / "drive.csv").string(), "--site", (dir / "site.json").string(), "--polygons",
                (dir / "polygons.geojson").string(), "--out", (dir / "bins.csv").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("los_fraction: 0.42") != std::string::npos);

    const auto bins = propkit::io::load_bin_table((dir / "bins.csv").string());
    const auto truth = propkit::io::load_bin_table((dir / "truth_bins.csv").string());
    REQUIRE(bins.size() == truth.size());
    std::map<propkit::geo::GridIndex, const propkit::analysis::GridBin*> by_index;
    for (const auto& t : truth) by_index[t.index] = &t;
    double mean_diff = 0.0;
    for (const auto& b : bins) {
        const auto it = by_index.find(b.index);
        REQUIRE(it != by_index.end());
        REQUIRE(b.los == it->second->los);
        REQUIRE(std::abs(b.distance_3d - it->second->distance_3d) < 1e-3);
        // interpolating the envelope can only overstate the strongest beam
        const double diff = b.path_loss_db - it->second->path_loss_db;
        REQUIRE(diff > -1e-3);
        REQUIRE(diff < 1.0);
        mean_diff += diff / bins.size();
    }
    CHECK(mean_diff < 0.1);

    r = invoke({"fit", (dir / "bins.csv").string(), "--split", "los,nlos", "--out", (dir / "fit.json").string()});
    REQUIRE(r.code == 0);
    const auto fit = nlohmann::json::parse(slurp(dir / "fit.json"));
    CHECK(std::abs(fit["fits"]["los"]["gamma"].get<double>() - 2.3) < 0.2);
    CHECK(std::abs(fit["fits"]["nlos"]["gamma"].get<double>() - 3.1) < 0.2);
    CHECK(std::abs(fit["fits"]["nlos"]["sigma"].get<double>() - 9.4) < 0.6);

    r = invoke({"compare", (dir / "bins.csv").string(), "--site", (dir / "site.json").string(), "--models",
                "FSPL,LOG_DISTANCE,TR38901_RMA_NLOS", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto cmp = nlohmann::json::parse(slurp(dir / "compare.json"));
    CHECK(cmp["models"][0]["model"] == "LOG_DISTANCE");
    CHECK(fs::exists(dir / "curves.csv"));
}

TEST_CASE("isotropic drive tests reproduce the generating path loss") {
    const auto dir = scratch("isotropic");
    REQUIRE(invoke({"synth", "--out", dir.string(), "--n", "500", "--isotropic", "--seed", "3"}).code == 0);
    REQUIRE(invoke({"bin", (dir / "drive.csv").string(), "--site", (dir / "site.json").string(), "--out",
                    (dir / "bins.csv").string()})
                .code == 0);
    const auto bins = propkit::io::load_bin_table((dir / "bins.csv").string());
    const auto truth = propkit::io::load_bin_table((dir / "truth_bins.csv").string());
    REQUIRE(bins.size() == truth.size());
    std::map<propkit::geo::GridIndex, double> pl;
    for (const auto& t : truth) pl[t.index] = t.path_loss_db;
    for (const auto& b : bins) {
        REQUIRE(pl.count(b.index) == 1);
        REQUIRE(std::abs(b.path_loss_db - pl[b.index]) < 1e-3);
        CHECK(b.los == propkit::geo::LosLabel::kUnknown);
    }
}

TEST_CASE("splitting unlabelled bins is an input error") {
    const auto dir = scratch("unlabelled");
    REQUIRE(invoke({"synth", "--out", dir.string(), "--n", "200", "--isotropic"}).code == 0);
    REQUIRE(invoke({"bin", (dir / "drive.csv").string(), "--site", (dir / "site.json").string(), "--out",
                    (dir / "bins.csv").string()})
                .code == 0);
    const auto r = invoke({"fit", (dir / "bins.csv").string(), "--split", "los"});
    CHECK(r.code == 2);
    CHECK(r.err.find("no LOS labels") != std::string::npos);
}

TEST_CASE("config file supplies defaults and flags win") {
    const auto dir = scratch("config");
    REQUIRE(invoke({"synth", "--out", dir.string(), "--n", "300"}).code == 0);
    nlohmann::json cfg{{"site", "site.json"}, {"grid_size", 5.0}, {"output_dir", "."}, {"d0", 100.0},
                       {"distance_filter", {150.0, 1200.0}}};
    std::ofstream(dir / "pipeline.json") << cfg.dump();
    REQUIRE(invoke({"bin", (dir / "drive.csv").string(), "--config", (dir / "pipeline.json").string()}).code == 0);
    CHECK(fs::exists(dir / "bins.csv"));
    REQUIRE(invoke({"fit", (dir / "bins.csv").string(), "--config", (dir / "pipeline.json").string(),
                    "--max-d", "1000"})
                .code == 0);
    const auto fit = nlohmann::json::parse(slurp(dir / "fit.json"));
    const auto range = fit["fits"]["all"]["distance_range"];
    CHECK(range[0].get<double>() >= 150.0);
    CHECK(range[1].get<double>() <= 1000.0);

    std::ofstream(dir / "broken.json") << "{\"grid_size\": -1}";
    CHECK(invoke({"fit", (dir / "bins.csv").string(), "--config", (dir / "broken.json").string()}).code == 2);
}

TEST_CASE("offset between two bands") {
    const auto hi = scratch("offset_hi");
    const auto lo = scratch("offset_lo");
    REQUIRE(invoke({"synth", "--out", hi.string(), "--n", "300", "--model", "FSPL", "--sigma", "0",
                    "--freq", "3.5", "--isotropic"})
                .code == 0);
    REQUIRE(invoke({"synth", "--out", lo.string(), "--n", "300", "--model", "FSPL", "--sigma", "0",
                    "--freq", "2.1", "--isotropic"})
                .code == 0);
    const auto r = invoke({"offset", (hi / "truth_bins.csv").string(), (lo / "truth_bins.csv").string(), "--out",
                           (hi / "offset.json").string()});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(slurp(hi / "offset.json"));
    CHECK(doc["offset_db"].get<double>() == doctest::Approx(20 * std::log10(3.5 / 2.1)).epsilon(1e-6));

    const auto far = scratch("offset_far");
    REQUIRE(invoke({"synth", "--out", far.string(), "--n", "50", "--min-d", "5000", "--max-d", "6000",
                    "--isotropic"})
                .code == 0);
    CHECK(invoke({"offset", (hi / "truth_bins.csv").string(), (far / "truth_bins.csv").string()}).code == 2);
}

TEST_CASE("o2i writes one CDF per session") {
    const auto dir = scratch("o2i");
    const auto r = invoke({"o2i", kData + "/indoor_manifest.json", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto text = slurp(dir / "o2i_A_f1.csv");
    CHECK(text.rfind("loss_db,probability\n", 0) == 0);
    // outdoor median -73.5; weakest indoor sample -110
    CHECK(text.find("-36.5") != std::string::npos);
    CHECK(invoke({"o2i", kData + "/indoor_manifest_bad.json", "--out", dir.string()}).code == 2);
}
