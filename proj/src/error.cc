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

#include "geophase/error.h"

namespace geophase {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument:
            return "invalid-argument";
        case ErrorKind::impossible_readout:
            return "impossible-readout";
        case ErrorKind::geodesic_undefined:
            return "geodesic-undefined";
        case ErrorKind::undefined_phase:
            return "undefined-phase";
        case ErrorKind::visibility_zero:
            return "visibility-zero";
        case ErrorKind::phase_undefined_at:
            return "phase-undefined-at";
        case ErrorKind::too_large:
            return "too-large";
        case ErrorKind::grid_too_coarse:
            return "grid-too-coarse";
        case ErrorKind::near_critical:
            return "near-critical";
        case ErrorKind::no_bracket:
            return "no-bracket";
        case ErrorKind::no_critical_point:
            return "no-critical-point-in-box";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message, std::optional<double> location)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind), location_(location) {
}

}  // namespace geophase
