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

#include "geophase/protocol.h"

#include <cmath>
#include <string>

#include "geophase/error.h"

namespace geophase {

double ParallelSweep::eta_eff() const {
    return -std::expm1(-4.0 * c);
}

MeasurementProtocol::MeasurementProtocol(
    Direction initial, std::vector<Direction> orientations, std::vector<double> strengths, bool final_postselect)
    : initial_(initial),
      initial_spinor_(eigenstate(initial)),
      orientations_(std::move(orientations)),
      strengths_(std::move(strengths)),
      final_postselect_(final_postselect) {
    if (orientations_.empty()) {
        throw Error(ErrorKind::invalid_argument, "protocol needs at least one step");
    }
    if (orientations_.size() != strengths_.size()) {
        throw Error(ErrorKind::invalid_argument, "orientation and strength lists differ in length");
    }
    if (final_postselect_ && strengths_.back() != 1.0) {
        throw Error(ErrorKind::invalid_argument, "a postselected final step must be projective (eta = 1)");
    }
    kraus_plus_.reserve(size());
    kraus_minus_.reserve(size());
    for (size_t k = 0; k < size(); k++) {
        double eta = strengths_[k];
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw Error(ErrorKind::invalid_argument, "strength at step " + std::to_string(k + 1) + " outside [0, 1]");
        }
        kraus_plus_.push_back(kraus(orientations_[k], eta, Readout::plus));
        kraus_minus_.push_back(kraus(orientations_[k], eta, Readout::minus));
    }
}

MeasurementProtocol MeasurementProtocol::parallel(double c, double theta, int n_steps) {
    if (n_steps < 2) {
        throw Error(ErrorKind::invalid_argument, "parallel protocol needs N >= 2");
    }
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw Error(ErrorKind::invalid_argument, "integrated strength c must be finite and non-negative");
    }
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw Error(ErrorKind::invalid_argument, "polar angle must lie in [0, pi]");
    }
    double eta = 4.0 * c / n_steps;
    if (eta > 1.0) {
        throw Error(
            ErrorKind::invalid_argument,
            "per-step strength 4c/N = " + std::to_string(eta) + " exceeds 1; increase N");
    }
    std::vector<Direction> dirs;
    std::vector<double> etas;
    dirs.reserve(n_steps);
    etas.reserve(n_steps);
    for (int k = 1; k <= n_steps; k++) {
        // phi_N = 2 pi maps back onto phi_0 = 0.
        dirs.emplace_back(theta, k == n_steps ? 0.0 : kTwoPi * k / n_steps);
        etas.push_back(k == n_steps ? 1.0 : eta);
    }
    MeasurementProtocol p(Direction(theta, 0.0), std::move(dirs), std::move(etas), true);
    p.sweep_ = ParallelSweep{c, theta};
    return p;
}

}  // namespace geophase
