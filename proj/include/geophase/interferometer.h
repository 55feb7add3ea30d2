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

#include <array>
#include <span>
#include <utility>

#include "geophase/protocol.h"
#include "geophase/qubit.h"

namespace geophase {

/// System (x) detector operator; basis index 2 * s + d with s = 0 for |up>
/// and d = 0 for the detector state |+>.
class Operator4 {
   public:
    static Operator4 identity();

    cplx &operator()(int row, int col) {
        return m_[4 * row + col];
    }
    const cplx &operator()(int row, int col) const {
        return m_[4 * row + col];
    }
    Operator4 adjoint() const;
    Operator4 operator*(const Operator4 &rhs) const;
    std::array<cplx, 4> operator*(const std::array<cplx, 4> &v) const;
    double max_abs_diff(const Operator4 &other) const;

   private:
    std::array<cplx, 16> m_{};
};

/// Detector coupled along n with integrated coupling g in [0, pi/2].
class DetectorCoupling {
   public:
    DetectorCoupling(Direction n, double g);

    const Direction &direction() const {
        return n_;
    }
    double g() const {
        return g_;
    }
    /// sin^2 g.
    double eta() const;

   private:
    Direction n_;
    double g_;
};

/// exp(-i g (1 - sigma_n) (x) sigma_y / 2), in closed form: (1 - sigma_n)/2 is
/// the projector onto |-n>, so the exponential rotates the detector only in
/// that block.
Operator4 entangling_unitary(const DetectorCoupling &coupling);

/// Detector blocks <+|U|+> and <-|U|+>, the Kraus pair (M_+, M_-).
std::pair<Operator2, Operator2> kraus_from_model(const DetectorCoupling &coupling);

struct IntensityPair {
    double i1 = 0.0;
    double i2 = 0.0;
    double gamma = 0.0;
    double i0 = 1.0;
};

/// (I0/2)(1 +- sqrt(P) Re e^{i chi + i gamma}) from the quasicontinuous
/// amplitude.
IntensityPair postselected_intensities(double c, double theta, double gamma, double i0);

/// (I0/4)|1 +- sqrt(P) e^{i chi + i gamma}|^2.
IntensityPair polarizer_intensities(double c, double theta, double gamma, double i0);

/// (I0/2)(sum |A|^2 +- Re e^{i gamma} sum A^2) with A the amplitude of one
/// readout sequence, both sums from the doubled transfer matrix. Throws
/// visibility_zero when sum A^2 underflows.
IntensityPair averaged_intensities(const MeasurementProtocol &protocol, double gamma, double i0);

/// <psi_0|M_{N-1} ... M_1|psi_0> for readouts r_1 .. r_{N-1}.
cplx upper_arm_amplitude(const MeasurementProtocol &protocol, std::span<const Readout> readouts);

/// <psi_0|F M~_{N-1} ... M~_1 F|psi_0> with M~_k measuring along -n_k and
/// F = R^-1(n_0) sigma_x R(n_0).
cplx lower_arm_amplitude(const MeasurementProtocol &protocol, std::span<const Readout> readouts);

/// Largest |lower - conj(upper)| over all 2^(N-1) readout sequences. Throws
/// too_large for N > 10.
double oppositeness_residual(const MeasurementProtocol &protocol);

}  // namespace geophase
