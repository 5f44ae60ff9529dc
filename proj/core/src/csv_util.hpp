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

#ifndef PROPKIT_SRC_CSV_UTIL_HPP
#define PROPKIT_SRC_CSV_UTIL_HPP

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "propkit/error.hpp"

namespace propkit::csv {

/// Line reader that tracks 1-based line numbers and strips a trailing CR.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        if (!std::getline(in_, line)) return false;
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

    std::size_t line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view field, std::size_t line, std::string_view name) {
    field = trim(field);
    double v = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError(line, "invalid number in column '" + std::string(name) + "': '" +
                                   std::string(field) + "'");
    }
    return v;
}

inline std::optional<double> parse_optional_double(std::string_view field, std::size_t line,
                                                   std::string_view name) {
    if (trim(field).empty()) return std::nullopt;
    return parse_double(field, line, name);
}

inline std::int64_t parse_int(std::string_view field, std::size_t line, std::string_view name) {
    field = trim(field);
    std::int64_t v = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError(line, "invalid integer in column '" + std::string(name) + "': '" +
                                   std::string(field) + "'");
    }
    return v;
}

inline std::optional<std::int64_t> parse_optional_int(std::string_view field, std::size_t line,
                                                      std::string_view name) {
    if (trim(field).empty()) return std::nullopt;
    return parse_int(field, line, name);
}

}  // namespace propkit::csv

#endif  // PROPKIT_SRC_CSV_UTIL_HPP
