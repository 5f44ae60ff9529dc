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

#ifndef PROPKIT_TOOLS_COMMANDS_HPP
#define PROPKIT_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace propkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidInput = 2;

/// Shared pipeline settings, loadable from a JSON file via --config.
/// Command-line flags take precedence over values loaded here.
struct PipelineConfig {
    std::optional<std::string> site;
    std::optional<std::string> pattern;
    std::optional<std::string> polygons;
    std::optional<double> grid_size;
    std::optional<double> d0;
    std::optional<double> min_d;
    std::optional<double> max_d;
    std::optional<std::string> distance;  // "2d" | "3d"
    std::optional<std::string> split;
    std::optional<std::string> exclusion_mask;
    std::vector<std::string> models;
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;

    static PipelineConfig load(const std::string& path);
};

/// Runs one invocation; `args[0]` is the program name. Returns the
/// process exit code: 0 on success, 2 on invalid input, 1 otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace propkit::cli

#endif  // PROPKIT_TOOLS_COMMANDS_HPP
