// Copyright 2026 The geophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace geophase {

enum class ErrorKind {
    invalid_argument,
    impossible_readout,
    geodesic_undefined,
    undefined_phase,
    visibility_zero,
    phase_undefined_at,
    too_large,
    grid_too_coarse,
    near_critical,
    no_bracket,
    no_critical_point,
};

const char *error_kind_name(ErrorKind kind);

/// Every failure raised by the library. `location()` carries the polar angle
/// (or strength) where a phase became undefined, when one is known.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message, std::optional<double> location = std::nullopt);

    ErrorKind kind() const noexcept {
        return kind_;
    }
    std::optional<double> location() const noexcept {
        return location_;
    }

   private:
    ErrorKind kind_;
    std::optional<double> location_;
};

}  // namespace geophase
