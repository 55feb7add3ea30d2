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

#include "geophase/qubit.h"

#include <algorithm>
#include <cmath>

#include "geophase/error.h"

namespace geophase {

namespace {

constexpr double kPoleEpsilon = 1e-15;
constexpr double kMinBranchProbability = 1e-300;

double clamp_polar(double theta) {
    return std::clamp(theta, 0.0, kPi);
}

std::array<double, 3> spherical_to_vector(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

double wrap_pi(double angle) {
    double r = std::remainder(angle, kTwoPi);
    if (r <= -kPi) {
        r += kTwoPi;
    }
    return r;
}

double wrap_two_pi(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

cplx inner(const Spinor &bra, const Spinor &ket) {
    return std::conj(bra[0]) * ket[0] + std::conj(bra[1]) * ket[1];
}

double norm_sq(const Spinor &v) {
    return std::norm(v[0]) + std::norm(v[1]);
}

Operator2 Operator2::pauli_x() {
    return {0.0, 1.0, 1.0, 0.0};
}

Operator2 Operator2::pauli_y() {
    return {0.0, cplx(0, -1), cplx(0, 1), 0.0};
}

Operator2 Operator2::pauli_z() {
    return {1.0, 0.0, 0.0, -1.0};
}

Operator2 Operator2::adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

Operator2 Operator2::transpose() const {
    return {m_[0], m_[2], m_[1], m_[3]};
}

Operator2 Operator2::operator*(const Operator2 &rhs) const {
    const auto &b = rhs.m_;
    return {
        m_[0] * b[0] + m_[1] * b[2],
        m_[0] * b[1] + m_[1] * b[3],
        m_[2] * b[0] + m_[3] * b[2],
        m_[2] * b[1] + m_[3] * b[3],
    };
}

Spinor Operator2::operator*(const Spinor &v) const {
    return {m_[0] * v[0] + m_[1] * v[1], m_[2] * v[0] + m_[3] * v[1]};
}

Operator2 Operator2::operator+(const Operator2 &rhs) const {
    return {m_[0] + rhs.m_[0], m_[1] + rhs.m_[1], m_[2] + rhs.m_[2], m_[3] + rhs.m_[3]};
}

Operator2 Operator2::operator-(const Operator2 &rhs) const {
    return {m_[0] - rhs.m_[0], m_[1] - rhs.m_[1], m_[2] - rhs.m_[2], m_[3] - rhs.m_[3]};
}

Operator2 Operator2::operator*(cplx s) const {
    return {m_[0] * s, m_[1] * s, m_[2] * s, m_[3] * s};
}

double Operator2::max_abs_diff(const Operator2 &other) const {
    double worst = 0.0;
    for (size_t i = 0; i < 4; i++) {
        worst = std::max(worst, std::abs(m_[i] - other.m_[i]));
    }
    return worst;
}

Direction::Direction(double theta, double phi) : theta_(clamp_polar(theta)), phi_(wrap_two_pi(phi)) {
}

std::array<double, 3> Direction::unit_vector() const {
    return spherical_to_vector(theta_, phi_);
}

Direction Direction::opposite() const {
    return {kPi - theta_, phi_ + kPi};
}

BlochPoint::BlochPoint(double theta, double phi) : theta_(clamp_polar(theta)), phi_(wrap_two_pi(phi)) {
}

BlochPoint BlochPoint::from_vector(const std::array<double, 3> &v) {
    double rho = std::hypot(v[0], v[1]);
    double theta = std::atan2(rho, v[2]);
    double phi = rho < kPoleEpsilon ? 0.0 : std::atan2(v[1], v[0]);
    return {theta, phi};
}

std::array<double, 3> BlochPoint::unit_vector() const {
    return spherical_to_vector(theta_, phi_);
}

Spinor BlochPoint::spinor() const {
    return {std::cos(theta_ / 2), std::polar(std::sin(theta_ / 2), phi_)};
}

double angle_between(const BlochPoint &a, const BlochPoint &b) {
    auto u = a.unit_vector();
    auto v = b.unit_vector();
    std::array<double, 3> cross{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    return std::atan2(std::hypot(cross[0], cross[1], cross[2]), dot);
}

QubitState::QubitState(cplx amp_up, cplx amp_down, cplx log_weight) {
    *this = from_spinor({amp_up, amp_down}, log_weight);
}

QubitState QubitState::from_spinor(const Spinor &v, cplx log_weight) {
    double n = std::sqrt(norm_sq(v));
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorKind::invalid_argument, "cannot normalize a zero or non-finite state");
    }
    // Gauge: amp_up real non-negative; at the south pole, amp_down is.
    double gauge = std::abs(v[0]) > kPoleEpsilon * n ? std::arg(v[0]) : std::arg(v[1]);
    cplx unit = std::polar(1.0 / n, -gauge);
    QubitState s;
    s.amp_ = {v[0] * unit, v[1] * unit};
    s.amp_[0] = std::abs(s.amp_[0]);
    s.log_weight_ = cplx(log_weight.real() + std::log(n), wrap_pi(log_weight.imag() + gauge));
    return s;
}

QubitState QubitState::from_bloch(const BlochPoint &p) {
    return from_spinor(p.spinor());
}

Spinor QubitState::unnormalized() const {
    cplx w = std::exp(log_weight_);
    return {amp_[0] * w, amp_[1] * w};
}

QubitState QubitState::normalized() const {
    QubitState s = *this;
    s.log_weight_ = cplx(0.0, log_weight_.imag());
    return s;
}

QubitState QubitState::with_phase(double beta) const {
    QubitState s = *this;
    s.log_weight_ = cplx(log_weight_.real(), wrap_pi(log_weight_.imag() + beta));
    return s;
}

Operator2 rotation_matrix(const Direction &n) {
    double c = std::cos(n.theta() / 2);
    double s = std::sin(n.theta() / 2);
    cplx e = std::polar(1.0, -n.phi());
    return {c, e * s, s, -e * c};
}

Operator2 kraus_axis(double eta, Readout r) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorKind::invalid_argument, "measurement strength must lie in [0, 1]");
    }
    if (r == Readout::plus) {
        return {1.0, 0.0, 0.0, std::sqrt(1.0 - eta)};
    }
    return {0.0, 0.0, 0.0, std::sqrt(eta)};
}

Operator2 kraus(const Direction &n, double eta, Readout r) {
    if (eta == 0.0) {
        // Rotation invariant; skip the rounding of R^-1 R.
        kraus_axis(eta, r);
        return r == Readout::plus ? Operator2::identity() : Operator2::zero();
    }
    Operator2 rot = rotation_matrix(n);
    return rot.adjoint() * kraus_axis(eta, r) * rot;
}

Spinor eigenstate(const Direction &n, Readout r) {
    Spinor basis = r == Readout::plus ? Spinor{1.0, 0.0} : Spinor{0.0, 1.0};
    return rotation_matrix(n).adjoint() * basis;
}

MeasurementOutcome apply_operator(const QubitState &state, const Operator2 &op) {
    Spinor out = op * state.spinor();
    double p = norm_sq(out);
    if (!(p >= kMinBranchProbability)) {
        throw Error(ErrorKind::impossible_readout, "readout has zero probability for this state");
    }
    return {QubitState::from_spinor(out, state.log_weight()), p};
}

MeasurementOutcome apply_measurement(const QubitState &state, const Direction &n, double eta, Readout r) {
    return apply_operator(state, kraus(n, eta, r));
}

BlochPoint bloch_coords(const Spinor &v) {
    double a = std::abs(v[0]);
    double b = std::abs(v[1]);
    double theta = 2.0 * std::atan2(b, a);
    double scale = std::max(a, b);
    double phi = 0.0;
    if (a > kPoleEpsilon * scale && b > kPoleEpsilon * scale) {
        phi = std::arg(v[1]) - std::arg(v[0]);
    }
    return {theta, phi};
}

BlochPoint bloch_coords(const QubitState &state) {
    return bloch_coords(state.spinor());
}

BlochPoint geodesic_interpolate(const BlochPoint &a, const BlochPoint &b, double s) {
    double omega = angle_between(a, b);
    if (omega >= kPi - 1e-9) {
        throw Error(ErrorKind::geodesic_undefined, "endpoints are antipodal; the shortest geodesic is not unique");
    }
    if (omega < 1e-15) {
        return a;
    }
    if (s == 0.0) {
        return a;
    }
    if (s == 1.0) {
        return b;
    }
    auto u = a.unit_vector();
    auto v = b.unit_vector();
    double wa = std::sin((1.0 - s) * omega) / std::sin(omega);
    double wb = std::sin(s * omega) / std::sin(omega);
    return BlochPoint::from_vector({wa * u[0] + wb * v[0], wa * u[1] + wb * v[1], wa * u[2] + wb * v[2]});
}

}  // namespace geophase
