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
#include <span>
#include <vector>

#include "geophase/qubit.h"

namespace geophase {

/// Parameters of the parallel family: orientations (theta, 2 pi k / N),
/// per-step strength 4c/N, final strong postselected step.
struct ParallelSweep {
    double c = 0.0;
    double theta = 0.0;

    /// 1 - exp(-4c).
    double eta_eff() const;
};

/// A sequence of N null-type measurements applied to the initial state
/// |+n_0>. Step k (1-based) measures along orientations()[k-1] with strength
/// strengths()[k-1]. When final_postselect() is set, step N is projective
/// (eta = 1) and only its + readout is kept.
///
/// Kraus operators for both readouts of every step are tabulated at
/// construction; the object is immutable afterwards.
class MeasurementProtocol {
   public:
    /// The family used throughout: theta_k = theta, phi_k = 2 pi k / N,
    /// eta_k = 4c/N for k < N and eta_N = 1. Requires N >= 2 and 4c/N <= 1.
    static MeasurementProtocol parallel(double c, double theta, int n_steps);

    /// Arbitrary orientations and strengths. Throws invalid_argument on
    /// length mismatch, strengths outside [0, 1], or final_postselect with a
    /// non-projective last step.
    MeasurementProtocol(
        Direction initial, std::vector<Direction> orientations, std::vector<double> strengths,
        bool final_postselect = true);

    size_t size() const {
        return orientations_.size();
    }
    const Direction &initial_direction() const {
        return initial_;
    }
    Spinor initial_spinor() const {
        return initial_spinor_;
    }
    QubitState initial_state() const {
        return QubitState::from_spinor(initial_spinor_);
    }
    std::span<const Direction> orientations() const {
        return orientations_;
    }
    std::span<const double> strengths() const {
        return strengths_;
    }
    bool final_postselect() const {
        return final_postselect_;
    }
    /// Set for protocols built by parallel().
    const std::optional<ParallelSweep> &sweep() const {
        return sweep_;
    }

    /// Kraus operator of step `index` (0-based) for readout r.
    const Operator2 &kraus_at(size_t index, Readout r) const {
        return r == Readout::plus ? kraus_plus_[index] : kraus_minus_[index];
    }

   private:
    Direction initial_;
    Spinor initial_spinor_{};
    std::vector<Direction> orientations_;
    std::vector<double> strengths_;
    bool final_postselect_ = true;
    std::optional<ParallelSweep> sweep_;
    std::vector<Operator2> kraus_plus_;
    std::vector<Operator2> kraus_minus_;
};

}  // namespace geophase
