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

#include "geophase/interferometer.h"

#include <cmath>
#include <vector>

#include "geophase/error.h"
#include "geophase/phase.h"
#include "geophase/trajectory.h"

namespace geophase {

namespace {

constexpr size_t kMaxOppositenessSteps = 10;

void check_intensity(double i0) {
    if (!(i0 > 0.0) || !std::isfinite(i0)) {
        throw Error(ErrorKind::invalid_argument, "input intensity I0 must be positive");
    }
}

void check_readouts(const MeasurementProtocol &protocol, std::span<const Readout> readouts) {
    if (readouts.size() + 1 != protocol.size()) {
        throw Error(ErrorKind::invalid_argument, "arm amplitudes take one readout per weak step (N - 1)");
    }
}

}  // namespace

Operator4 Operator4::identity() {
    Operator4 out;
    for (int i = 0; i < 4; i++) {
        out(i, i) = 1.0;
    }
    return out;
}

Operator4 Operator4::adjoint() const {
    Operator4 out;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            out(i, j) = std::conj((*this)(j, i));
        }
    }
    return out;
}

Operator4 Operator4::operator*(const Operator4 &rhs) const {
    Operator4 out;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            cplx acc = 0.0;
            for (int k = 0; k < 4; k++) {
                acc += (*this)(i, k) * rhs(k, j);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

std::array<cplx, 4> Operator4::operator*(const std::array<cplx, 4> &v) const {
    std::array<cplx, 4> out{};
    for (int i = 0; i < 4; i++) {
        for (int k = 0; k < 4; k++) {
            out[i] += (*this)(i, k) * v[k];
        }
    }
    return out;
}

double Operator4::max_abs_diff(const Operator4 &other) const {
    double m = 0.0;
    for (size_t i = 0; i < m_.size(); i++) {
        m = std::max(m, std::abs(m_[i] - other.m_[i]));
    }
    return m;
}

DetectorCoupling::DetectorCoupling(Direction n, double g) : n_(n), g_(g) {
    // Beyond pi/2 the model's M_+ = P_+ + cos(g) P_- is no longer the
    // positive square root used by kraus().
    if (!(g >= 0.0 && g <= kPi / 2)) {
        throw Error(ErrorKind::invalid_argument, "coupling g must lie in [0, pi/2]");
    }
}

double DetectorCoupling::eta() const {
    double s = std::sin(g_);
    return s * s;
}

Operator4 entangling_unitary(const DetectorCoupling &coupling) {
    Spinor plus = eigenstate(coupling.direction(), Readout::plus);
    Spinor minus = eigenstate(coupling.direction(), Readout::minus);
    double cg = std::cos(coupling.g());
    double sg = std::sin(coupling.g());
    // exp(-i g sigma_y) = [[cos g, -sin g], [sin g, cos g]].
    const double rot[2][2] = {{cg, -sg}, {sg, cg}};
    Operator4 u;
    for (int s = 0; s < 2; s++) {
        for (int t = 0; t < 2; t++) {
            cplx p_plus = plus[s] * std::conj(plus[t]);
            cplx p_minus = minus[s] * std::conj(minus[t]);
            for (int d = 0; d < 2; d++) {
                for (int e = 0; e < 2; e++) {
                    u(2 * s + d, 2 * t + e) = (d == e ? p_plus : 0.0) + p_minus * rot[d][e];
                }
            }
        }
    }
    return u;
}

std::pair<Operator2, Operator2> kraus_from_model(const DetectorCoupling &coupling) {
    Operator4 u = entangling_unitary(coupling);
    Operator2 m_plus;
    Operator2 m_minus;
    for (int s = 0; s < 2; s++) {
        for (int t = 0; t < 2; t++) {
            m_plus(s, t) = u(2 * s, 2 * t);
            m_minus(s, t) = u(2 * s + 1, 2 * t);
        }
    }
    return {m_plus, m_minus};
}

IntensityPair postselected_intensities(double c, double theta, double gamma, double i0) {
    check_intensity(i0);
    PhaseAmplitude a = postselected_closed_form(c, theta);
    double x = (a.amplitude * std::polar(1.0, gamma)).real();
    return {0.5 * i0 * (1.0 + x), 0.5 * i0 * (1.0 - x), gamma, i0};
}

IntensityPair polarizer_intensities(double c, double theta, double gamma, double i0) {
    check_intensity(i0);
    PhaseAmplitude a = postselected_closed_form(c, theta);
    cplx w = a.amplitude * std::polar(1.0, gamma);
    return {0.25 * i0 * std::norm(1.0 + w), 0.25 * i0 * std::norm(1.0 - w), gamma, i0};
}

IntensityPair averaged_intensities(const MeasurementProtocol &protocol, double gamma, double i0) {
    check_intensity(i0);
    EnsembleSummary summary = averaged_phase_exact(protocol);
    double incoherent = summary.accept_rate;
    double interference = (summary.mean_z * std::polar(1.0, gamma)).real();
    return {0.5 * i0 * (incoherent + interference), 0.5 * i0 * (incoherent - interference), gamma, i0};
}

cplx upper_arm_amplitude(const MeasurementProtocol &protocol, std::span<const Readout> readouts) {
    check_readouts(protocol, readouts);
    Spinor psi0 = protocol.initial_spinor();
    Spinor v = psi0;
    for (size_t k = 0; k < readouts.size(); k++) {
        v = protocol.kraus_at(k, readouts[k]) * v;
    }
    return inner(psi0, v);
}

cplx lower_arm_amplitude(const MeasurementProtocol &protocol, std::span<const Readout> readouts) {
    check_readouts(protocol, readouts);
    const Operator2 sx = Operator2::pauli_x();
    Operator2 r0 = rotation_matrix(protocol.initial_direction());
    Operator2 flip = r0.adjoint() * sx * r0;
    Spinor psi0 = protocol.initial_spinor();
    Spinor v = flip * psi0;
    for (size_t k = 0; k < readouts.size(); k++) {
        Operator2 r = rotation_matrix(protocol.orientations()[k]);
        double eta = protocol.strengths()[k];
        Operator2 m = r.adjoint() * sx * kraus_axis(eta, readouts[k]) * sx * r;
        v = m * v;
    }
    v = flip * v;
    return inner(psi0, v);
}

double oppositeness_residual(const MeasurementProtocol &protocol) {
    if (protocol.size() > kMaxOppositenessSteps) {
        throw Error(ErrorKind::too_large, "oppositeness check enumerates 2^(N-1) sequences; limited to N <= 10");
    }
    const size_t weak = protocol.size() - 1;
    std::vector<Readout> readouts(weak);
    double worst = 0.0;
    for (uint64_t mask = 0; mask < (uint64_t(1) << weak); mask++) {
        for (size_t k = 0; k < weak; k++) {
            readouts[k] = (mask >> k) & 1 ? Readout::minus : Readout::plus;
        }
        cplx up = upper_arm_amplitude(protocol, readouts);
        cplx low = lower_arm_amplitude(protocol, readouts);
        worst = std::max(worst, std::abs(low - std::conj(up)));
    }
    return worst;
}

}  // namespace geophase
