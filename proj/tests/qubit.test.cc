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

#include <cmath>

#include "geophase/error.h"
#include "gtest/gtest.h"

using namespace geophase;

namespace {

Operator2 sum_of_squares(const Direction &n, double eta) {
    Operator2 p = kraus(n, eta, Readout::plus);
    Operator2 m = kraus(n, eta, Readout::minus);
    return p.adjoint() * p + m.adjoint() * m;
}

}  // namespace

TEST(qubit, wrap_pi_range) {
    ASSERT_DOUBLE_EQ(wrap_pi(kPi), kPi);
    ASSERT_DOUBLE_EQ(wrap_pi(-kPi), kPi);
    ASSERT_NEAR(wrap_pi(3 * kPi / 2), -kPi / 2, 1e-15);
    ASSERT_NEAR(wrap_pi(-5 * kPi / 2), -kPi / 2, 1e-15);
    ASSERT_EQ(wrap_two_pi(kTwoPi), 0.0);
    ASSERT_NEAR(wrap_two_pi(-kPi / 2), 3 * kPi / 2, 1e-15);
}

TEST(qubit, rotation_is_unitary) {
    for (double theta : {0.0, 0.3, kPi / 2, 2.9, kPi}) {
        for (double phi : {0.0, 1.0, 4.0}) {
            Operator2 r = rotation_matrix(Direction(theta, phi));
            ASSERT_LT((r.adjoint() * r).max_abs_diff(Operator2::identity()), 1e-14);
        }
    }
}

TEST(qubit, eigenstate_is_fixed_by_plus_operator) {
    Direction n(1.1, 2.3);
    Spinor up = eigenstate(n, Readout::plus);
    Spinor down = eigenstate(n, Readout::minus);
    ASSERT_NEAR(std::abs(inner(up, down)), 0.0, 1e-15);
    for (double eta : {0.1, 0.5, 1.0}) {
        Spinor out = kraus(n, eta, Readout::plus) * up;
        ASSERT_NEAR(std::abs(out[0] - up[0]) + std::abs(out[1] - up[1]), 0.0, 1e-14);
        Spinor gone = kraus(n, eta, Readout::minus) * up;
        ASSERT_NEAR(norm_sq(gone), 0.0, 1e-28);
    }
    // The Bloch vector of |+n> is n itself.
    BlochPoint p = bloch_coords(up);
    ASSERT_NEAR(p.theta(), 1.1, 1e-14);
    ASSERT_NEAR(p.phi(), 2.3, 1e-14);
}

TEST(qubit, kraus_completeness_grid) {
    double worst = 0.0;
    for (int i = 0; i <= 8; i++) {
        for (int j = 0; j < 8; j++) {
            for (double eta : {0.0, 1e-6, 0.01, 0.3, 0.75, 1.0}) {
                Direction n(kPi * i / 8, kTwoPi * j / 8);
                worst = std::max(worst, sum_of_squares(n, eta).max_abs_diff(Operator2::identity()));
            }
        }
    }
    ASSERT_LT(worst, 1e-14);
}

TEST(qubit, kraus_is_hermitian) {
    for (double eta : {0.0, 0.2, 1.0}) {
        for (Readout r : {Readout::plus, Readout::minus}) {
            Operator2 m = kraus(Direction(0.7, 5.1), eta, r);
            ASSERT_LT(m.max_abs_diff(m.adjoint()), 1e-15);
        }
    }
}

TEST(qubit, kraus_axis_values) {
    Operator2 p = kraus_axis(0.36, Readout::plus);
    Operator2 m = kraus_axis(0.36, Readout::minus);
    ASSERT_LT(p.max_abs_diff(Operator2(1.0, 0.0, 0.0, 0.8)), 1e-15);
    ASSERT_LT(m.max_abs_diff(Operator2(0.0, 0.0, 0.0, 0.6)), 1e-15);
    ASSERT_THROW(kraus_axis(-0.1, Readout::plus), Error);
    ASSERT_THROW(kraus_axis(1.5, Readout::minus), Error);
    ASSERT_THROW(kraus_axis(std::nan(""), Readout::minus), Error);
}

TEST(qubit, zero_strength_is_exact_identity) {
    Direction n(0.4, 1.3);
    ASSERT_EQ(kraus(n, 0.0, Readout::plus).max_abs_diff(Operator2::identity()), 0.0);
    ASSERT_EQ(kraus(n, 0.0, Readout::minus).max_abs_diff(Operator2::zero()), 0.0);
}

TEST(qubit, projective_measurement_projects) {
    Direction n(kPi / 3, kPi / 4);
    QubitState psi = QubitState::from_bloch(BlochPoint(0.2, 0.1));
    auto plus = apply_measurement(psi, n, 1.0, Readout::plus);
    auto minus = apply_measurement(psi, n, 1.0, Readout::minus);
    ASSERT_NEAR(plus.probability + minus.probability, 1.0, 1e-14);
    BlochPoint b = bloch_coords(plus.state);
    ASSERT_NEAR(b.theta(), kPi / 3, 1e-12);
    ASSERT_NEAR(b.phi(), kPi / 4, 1e-12);
}

TEST(qubit, impossible_readout_throws) {
    // Exact zero needs the axis basis; a tilted axis leaves ~1e-33 of rounding.
    Direction n(0.0, 0.0);
    QubitState psi = QubitState::from_spinor(eigenstate(n, Readout::plus));
    try {
        apply_measurement(psi, n, 0.5, Readout::minus);
        FAIL() << "expected impossible_readout";
    } catch (const Error &e) {
        ASSERT_EQ(e.kind(), ErrorKind::impossible_readout);
    }
}

TEST(qubit, log_weight_tracks_the_unnormalized_vector) {
    QubitState psi = QubitState::from_bloch(BlochPoint(1.0, 0.5));
    Spinor raw = psi.spinor();
    Direction n(0.3, 2.0);
    for (int k = 0; k < 50; k++) {
        Operator2 m = kraus(n, 0.3, k % 3 ? Readout::plus : Readout::minus);
        raw = m * raw;
        psi = apply_operator(psi, m).state;
    }
    Spinor rebuilt = psi.unnormalized();
    ASSERT_NEAR(std::abs(rebuilt[0] - raw[0]), 0.0, 1e-14);
    ASSERT_NEAR(std::abs(rebuilt[1] - raw[1]), 0.0, 1e-14);
}

TEST(qubit, gauge_keeps_up_amplitude_real) {
    QubitState s(cplx(0.0, 2.0), cplx(1.0, 1.0));
    ASSERT_EQ(s.amp_up().imag(), 0.0);
    ASSERT_GT(s.amp_up().real(), 0.0);
    ASSERT_NEAR(norm_sq(s.spinor()), 1.0, 1e-15);
    QubitState shifted = s.with_phase(0.7);
    cplx ratio = shifted.unnormalized()[1] / s.unnormalized()[1];
    ASSERT_NEAR(std::arg(ratio), 0.7, 1e-14);
}

TEST(qubit, bloch_round_trip) {
    for (double theta : {0.0, 0.5, kPi / 2, 2.5, kPi}) {
        for (double phi : {0.0, 1.0, 6.0}) {
            BlochPoint p(theta, phi);
            BlochPoint q = bloch_coords(p.spinor());
            auto a = p.unit_vector();
            auto b = q.unit_vector();
            for (int i = 0; i < 3; i++) {
                ASSERT_NEAR(a[i], b[i], 1e-14);
            }
        }
    }
    // Phi is zero at the poles.
    ASSERT_EQ(bloch_coords(Spinor{0.0, cplx(0.0, 1.0)}).phi(), 0.0);
}

TEST(qubit, geodesic_interpolation) {
    BlochPoint a(kPi / 2, 0.0);
    BlochPoint b(kPi / 2, kPi / 2);
    BlochPoint mid = geodesic_interpolate(a, b, 0.5);
    ASSERT_NEAR(mid.theta(), kPi / 2, 1e-14);
    ASSERT_NEAR(mid.phi(), kPi / 4, 1e-14);
    ASSERT_NEAR(angle_between(a, geodesic_interpolate(a, b, 0.25)), kPi / 8, 1e-14);
    ASSERT_THROW(geodesic_interpolate(BlochPoint(0, 0), BlochPoint(kPi, 0), 0.5), Error);
}

TEST(qubit, direction_normalizes_angles) {
    Direction d(4.0, -1.0);
    ASSERT_EQ(d.theta(), kPi);
    ASSERT_NEAR(d.phi(), kTwoPi - 1.0, 1e-15);
    Direction o = Direction(0.3, 0.2).opposite();
    auto u = o.unit_vector();
    auto v = Direction(0.3, 0.2).unit_vector();
    for (int i = 0; i < 3; i++) {
        ASSERT_NEAR(u[i], -v[i], 1e-15);
    }
}
