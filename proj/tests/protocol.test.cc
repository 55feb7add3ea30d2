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

#include "geophase/error.h"
#include "gtest/gtest.h"

using namespace geophase;

TEST(protocol, parallel_layout) {
    auto p = MeasurementProtocol::parallel(2.0, kPi / 4, 8);
    ASSERT_EQ(p.size(), 8u);
    ASSERT_TRUE(p.final_postselect());
    ASSERT_TRUE(p.sweep().has_value());
    ASSERT_EQ(p.sweep()->c, 2.0);
    for (size_t k = 0; k + 1 < p.size(); k++) {
        ASSERT_DOUBLE_EQ(p.strengths()[k], 1.0);
        ASSERT_NEAR(p.orientations()[k].phi(), kTwoPi * double(k + 1) / 8, 1e-14);
        ASSERT_DOUBLE_EQ(p.orientations()[k].theta(), kPi / 4);
    }
    ASSERT_EQ(p.strengths().back(), 1.0);
    ASSERT_EQ(p.orientations().back().phi(), 0.0);
    // psi_0 = |+n_0> with n_0 at phi = 0.
    ASSERT_NEAR(p.initial_spinor()[0].real(), std::cos(kPi / 8), 1e-15);
    ASSERT_NEAR(p.initial_spinor()[1].real(), std::sin(kPi / 8), 1e-15);
}

TEST(protocol, final_step_projects_on_initial_state) {
    auto p = MeasurementProtocol::parallel(0.5, 1.2, 20);
    Spinor psi0 = p.initial_spinor();
    Spinor out = p.kraus_at(19, Readout::plus) * psi0;
    ASSERT_NEAR(std::abs(out[0] - psi0[0]) + std::abs(out[1] - psi0[1]), 0.0, 1e-14);
    ASSERT_NEAR(norm_sq(p.kraus_at(19, Readout::minus) * psi0), 0.0, 1e-28);
}

TEST(protocol, effective_strength) {
    ParallelSweep s{0.25, 1.0};
    ASSERT_NEAR(s.eta_eff(), 1.0 - std::exp(-1.0), 1e-15);
}

TEST(protocol, rejects_bad_parameters) {
    ASSERT_THROW(MeasurementProtocol::parallel(1.0, kPi / 4, 1), Error);
    ASSERT_THROW(MeasurementProtocol::parallel(-0.1, kPi / 4, 10), Error);
    ASSERT_THROW(MeasurementProtocol::parallel(1.0, 3.5, 10), Error);
    // 4c/N > 1.
    ASSERT_THROW(MeasurementProtocol::parallel(5.0, kPi / 4, 10), Error);
    ASSERT_NO_THROW(MeasurementProtocol::parallel(2.5, kPi / 4, 10));
}

TEST(protocol, general_constructor_validation) {
    Direction n0(0.5, 0.0);
    std::vector<Direction> dirs{Direction(0.5, 1.0), n0};
    ASSERT_THROW(MeasurementProtocol(n0, dirs, {0.1}), Error);
    ASSERT_THROW(MeasurementProtocol(n0, dirs, {0.1, 0.9}, true), Error);
    ASSERT_THROW(MeasurementProtocol(n0, dirs, {1.2, 1.0}), Error);
    ASSERT_NO_THROW(MeasurementProtocol(n0, dirs, {0.1, 0.9}, false));
    MeasurementProtocol p(n0, dirs, {0.1, 1.0});
    ASSERT_EQ(p.size(), 2u);
    ASSERT_FALSE(p.sweep().has_value());
}
