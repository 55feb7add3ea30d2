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

#include <span>
#include <vector>

#include "geophase/protocol.h"
#include "geophase/qubit.h"

namespace geophase {

/// sqrt(P) e^{i chi}. The phase is the principal value in (-pi, pi] and is
/// flagged undefined when P < 1e-12.
struct PhaseAmplitude {
    cplx amplitude = 1.0;
    double probability = 1.0;
    double phase = 0.0;
    bool phase_defined = true;

    static PhaseAmplitude from(cplx amplitude);
};

/// Product of many complex factors kept as mantissa * exp(log_scale) so that
/// long chains neither underflow nor lose their phase.
struct LogAmplitude {
    cplx mantissa = 1.0;
    double log_scale = 0.0;

    cplx value() const;
    /// log |value|, or -inf for an exact zero.
    double log_abs() const;
};

/// Pancharatnam phase of a sequence of states: sum of arg <psi_{k+1}|psi_k>,
/// plus arg <psi_0|psi_last> when `closed`. The returned amplitude is the
/// product of overlaps of the normalized states. Gauge invariant. Throws
/// undefined_phase when consecutive states are orthogonal.
PhaseAmplitude pancharatnam_phase(std::span<const QubitState> states, bool closed);

/// <psi_0| M_N^{(r_N)} ... M_1^{(r_1)} |psi_0> evaluated stepwise through the
/// log-weight of QubitState. `readouts` has one entry per step; for a
/// postselected protocol the last one must be plus. Throws undefined_phase if
/// any step annihilates the state.
PhaseAmplitude sequence_amplitude(const MeasurementProtocol &protocol, std::span<const Readout> readouts);

/// sequence_amplitude with every readout plus.
PhaseAmplitude all_plus_amplitude(const MeasurementProtocol &protocol);

/// Normalized states |psi_0>, |psi_1>, ..., |psi_{N-1}> visited by the
/// all-plus sequence (the final strong step is not included).
std::vector<QubitState> all_plus_states(const MeasurementProtocol &protocol);

/// Quasicontinuous (N -> infinity) all-plus amplitude of the parallel family:
/// -e^{-c} (cosh tau + z sinh(tau)/tau), z = c + i pi cos(theta),
/// tau^2 = z^2 - pi^2 sin^2(theta).
PhaseAmplitude postselected_closed_form(double c, double theta);

/// The same expression with the caller choosing the branch of tau; used to
/// check that the result does not depend on it.
cplx postselected_closed_form_with_tau(double c, double theta, cplx tau);

/// Oriented solid angle of the closed geodesic polygon through `polygon`,
/// reported in (-2 pi, 2 pi]; the area is only defined modulo 4 pi, which is
/// what -Omega/2 mod 2 pi needs. A two-vertex path (there and back) encloses
/// nothing. Throws geodesic_undefined for antipodal neighbours and
/// invalid_argument for fewer than two vertices.
double solid_angle(std::span<const BlochPoint> polygon);

}  // namespace geophase
