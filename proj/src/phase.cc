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

#include "geophase/phase.h"

#include <cmath>
#include <limits>

#include "geophase/error.h"

namespace geophase {

namespace {

constexpr double kUndefinedProbability = 1e-12;
constexpr double kOrthogonalOverlap = 1e-12;
constexpr double kTauSeriesRadius = 1e-4;

// cosh(t) and sinh(t)/t by their Taylor series, six terms each.
void even_series(cplx tau, cplx &cosh_t, cplx &sinhc_t) {
    cplx t2 = tau * tau;
    cplx term_c = 1.0;
    cplx term_s = 1.0;
    cosh_t = 0.0;
    sinhc_t = 0.0;
    for (int k = 0; k < 6; k++) {
        cosh_t += term_c;
        sinhc_t += term_s;
        term_c *= t2 / double((2 * k + 1) * (2 * k + 2));
        term_s *= t2 / double((2 * k + 2) * (2 * k + 3));
    }
}

std::array<double, 3> cross(const std::array<double, 3> &a, const std::array<double, 3> &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const std::array<double, 3> &a, const std::array<double, 3> &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Signed solid angle of the geodesic triangle (a, b, c).
double triangle_solid_angle(
    const std::array<double, 3> &a, const std::array<double, 3> &b, const std::array<double, 3> &c) {
    double numerator = dot(a, cross(b, c));
    double denominator = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    return 2.0 * std::atan2(numerator, denominator);
}

}  // namespace

PhaseAmplitude PhaseAmplitude::from(cplx amplitude) {
    PhaseAmplitude out;
    out.amplitude = amplitude;
    out.probability = std::norm(amplitude);
    out.phase_defined = out.probability >= kUndefinedProbability;
    out.phase = out.phase_defined ? std::arg(amplitude) : 0.0;
    return out;
}

cplx LogAmplitude::value() const {
    return mantissa * std::exp(log_scale);
}

double LogAmplitude::log_abs() const {
    double m = std::abs(mantissa);
    if (m == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::log(m) + log_scale;
}

PhaseAmplitude pancharatnam_phase(std::span<const QubitState> states, bool closed) {
    if (states.size() < 2) {
        throw Error(ErrorKind::invalid_argument, "Pancharatnam phase needs at least two states");
    }
    cplx product = 1.0;
    auto link = [&](const QubitState &to, const QubitState &from) {
        // The log-weights only carry gauge phases and norms; drop them.
        cplx overlap = inner(to.spinor(), from.spinor()) * std::polar(1.0, from.log_weight().imag() - to.log_weight().imag());
        if (std::abs(overlap) < kOrthogonalOverlap) {
            throw Error(ErrorKind::undefined_phase, "consecutive states are orthogonal");
        }
        product *= overlap;
    };
    for (size_t k = 0; k + 1 < states.size(); k++) {
        link(states[k + 1], states[k]);
    }
    if (closed) {
        link(states.front(), states.back());
    }
    return PhaseAmplitude::from(product);
}

PhaseAmplitude sequence_amplitude(const MeasurementProtocol &protocol, std::span<const Readout> readouts) {
    if (readouts.size() != protocol.size()) {
        throw Error(ErrorKind::invalid_argument, "need exactly one readout per measurement step");
    }
    if (protocol.final_postselect() && readouts.back() != Readout::plus) {
        throw Error(ErrorKind::invalid_argument, "postselected protocol requires the final readout to be +");
    }
    QubitState state = protocol.initial_state();
    for (size_t k = 0; k < readouts.size(); k++) {
        try {
            state = apply_operator(state, protocol.kraus_at(k, readouts[k])).state;
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::impossible_readout) {
                throw;
            }
            throw Error(ErrorKind::undefined_phase, "readout sequence annihilates the state at step " + std::to_string(k + 1));
        }
    }
    cplx overlap = inner(protocol.initial_spinor(), state.spinor());
    return PhaseAmplitude::from(overlap * std::exp(state.log_weight()));
}

PhaseAmplitude all_plus_amplitude(const MeasurementProtocol &protocol) {
    std::vector<Readout> plus(protocol.size(), Readout::plus);
    return sequence_amplitude(protocol, plus);
}

std::vector<QubitState> all_plus_states(const MeasurementProtocol &protocol) {
    std::vector<QubitState> states;
    states.reserve(protocol.size());
    QubitState state = protocol.initial_state();
    states.push_back(state);
    for (size_t k = 0; k + 1 < protocol.size(); k++) {
        state = apply_operator(state, protocol.kraus_at(k, Readout::plus)).state.normalized();
        states.push_back(state);
    }
    return states;
}

cplx postselected_closed_form_with_tau(double c, double theta, cplx tau) {
    cplx z(c, kPi * std::cos(theta));
    if (std::abs(tau) < kTauSeriesRadius) {
        cplx cosh_t;
        cplx sinhc_t;
        even_series(tau, cosh_t, sinhc_t);
        return -std::exp(-c) * (cosh_t + z * sinhc_t);
    }
    // e^{-c} cosh(tau) and e^{-c} sinh(tau)/tau without overflow for large c.
    cplx up = std::exp(tau - c);
    cplx down = std::exp(-tau - c);
    return -(0.5 * (up + down) + z * (up - down) / (2.0 * tau));
}

PhaseAmplitude postselected_closed_form(double c, double theta) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw Error(ErrorKind::invalid_argument, "integrated strength c must be finite and non-negative");
    }
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw Error(ErrorKind::invalid_argument, "polar angle must lie in [0, pi]");
    }
    if (c == 0.0) {
        return PhaseAmplitude::from(1.0);
    }
    cplx z(c, kPi * std::cos(theta));
    double s = kPi * std::sin(theta);
    cplx tau = std::sqrt(z * z - s * s);
    return PhaseAmplitude::from(postselected_closed_form_with_tau(c, theta, tau));
}

double solid_angle(std::span<const BlochPoint> polygon) {
    if (polygon.size() < 2) {
        throw Error(ErrorKind::invalid_argument, "polygon needs at least two vertices");
    }
    for (size_t k = 0; k < polygon.size(); k++) {
        const BlochPoint &a = polygon[k];
        const BlochPoint &b = polygon[(k + 1) % polygon.size()];
        if (angle_between(a, b) >= kPi - 1e-9) {
            throw Error(ErrorKind::geodesic_undefined, "antipodal neighbours at vertex " + std::to_string(k));
        }
    }
    // Fan triangulation from the first vertex; each triangle is exact for
    // geodesic edges, so the sum is exact modulo 4 pi.
    auto apex = polygon[0].unit_vector();
    double total = 0.0;
    for (size_t k = 1; k + 1 < polygon.size(); k++) {
        total += triangle_solid_angle(apex, polygon[k].unit_vector(), polygon[k + 1].unit_vector());
    }
    double reduced = std::remainder(total, 2.0 * kTwoPi);
    if (reduced <= -kTwoPi + 1e-12) {
        reduced += 2.0 * kTwoPi;
    }
    return reduced;
}

}  // namespace geophase
