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

#ifndef PROPKIT_ERROR_HPP
#define PROPKIT_ERROR_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace propkit {

/// Input failed a range or structural check (bad coordinates, missing
/// config field, malformed CSV row, mismatched pattern grids).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation
/// (non-positive distance or frequency, coincident points).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed input file, tagged with the 1-based line that failed.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline void require_positive(double v, std::string_view name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be positive and finite");
    }
}

inline void require_finite(double v, std::string_view name) {
    if (!std::isfinite(v)) {
        throw ValidationError(std::string(name) + " must be finite");
    }
}

}  // namespace detail
}  // namespace propkit

#endif  // PROPKIT_ERROR_HPP
