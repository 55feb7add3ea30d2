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
#include <complex>
#include <utility>

namespace geophase {

using cplx = std::complex<double>;

/// Column vector (amplitude of |up>, amplitude of |down>).
using Spinor = std::array<cplx, 2>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle into (-pi, pi].
double wrap_pi(double angle);
/// Wraps an angle into [0, 2pi).
double wrap_two_pi(double angle);

cplx inner(const Spinor &bra, const Spinor &ket);
double norm_sq(const Spinor &v);

/// 2x2 complex matrix, row-major.
class Operator2 {
   public:
    constexpr Operator2() = default;
    constexpr Operator2(cplx a, cplx b, cplx c, cplx d) : m_{a, b, c, d} {
    }

    static constexpr Operator2 identity() {
        return {1.0, 0.0, 0.0, 1.0};
    }
    static constexpr Operator2 zero() {
        return {};
    }
    static Operator2 pauli_x();
    static Operator2 pauli_y();
    static Operator2 pauli_z();

    cplx &operator()(int row, int col) {
        return m_[2 * row + col];
    }
    const cplx &operator()(int row, int col) const {
        return m_[2 * row + col];
    }

    Operator2 adjoint() const;
    Operator2 transpose() const;

    Operator2 operator*(const Operator2 &rhs) const;
    Spinor operator*(const Spinor &v) const;
    Operator2 operator+(const Operator2 &rhs) const;
    Operator2 operator-(const Operator2 &rhs) const;
    Operator2 operator*(cplx s) const;

    double max_abs_diff(const Operator2 &other) const;

   private:
    std::array<cplx, 4> m_{};
};

/// Measurement axis n = (sin t cos p, sin t sin p, cos t). Theta is clamped
/// to [0, pi] and phi reduced into [0, 2pi).
class Direction {
   public:
    Direction() = default;
    Direction(double theta, double phi);

    double theta() const {
        return theta_;
    }
    double phi() const {
        return phi_;
    }
    std::array<double, 3> unit_vector() const;
    Direction opposite() const;

   private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

/// Bloch-sphere coordinates of a normalized state. Same ranges as Direction.
class BlochPoint {
   public:
    BlochPoint() = default;
    BlochPoint(double theta, double phi);

    static BlochPoint from_vector(const std::array<double, 3> &v);

    double theta() const {
        return theta_;
    }
    double phi() const {
        return phi_;
    }
    std::array<double, 3> unit_vector() const;
    /// cos(Theta/2)|up> + e^{i Phi} sin(Theta/2)|down>.
    Spinor spinor() const;

   private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

double angle_between(const BlochPoint &a, const BlochPoint &b);

enum class Readout : signed char { plus = 1, minus = -1 };

inline Readout opposite(Readout r) {
    return r == Readout::plus ? Readout::minus : Readout::plus;
}

/// A possibly unnormalized qubit state stored as a normalized spinor with
/// amp_up real and non-negative, plus a complex log-weight. The exact
/// unnormalized vector is spinor() * exp(log_weight()).
class QubitState {
   public:
    QubitState() = default;
    /// Takes arbitrary (nonzero) amplitudes and normalizes them.
    QubitState(cplx amp_up, cplx amp_down, cplx log_weight = 0.0);
    static QubitState from_spinor(const Spinor &v, cplx log_weight = 0.0);
    static QubitState from_bloch(const BlochPoint &p);

    cplx amp_up() const {
        return amp_[0];
    }
    cplx amp_down() const {
        return amp_[1];
    }
    const Spinor &spinor() const {
        return amp_;
    }
    cplx log_weight() const {
        return log_weight_;
    }
    Spinor unnormalized() const;

    /// Same ray with the log-weight discarded.
    QubitState normalized() const;
    /// Multiplies the represented vector by e^{i beta}.
    QubitState with_phase(double beta) const;

   private:
    Spinor amp_{1.0, 0.0};
    cplx log_weight_ = 0.0;
};

/// R(n): unitary taking |+n> to |up> and |-n> to |down>.
Operator2 rotation_matrix(const Direction &n);

/// Null-type Kraus operators along e_z: diag(1, sqrt(1-eta)) for +,
/// diag(0, sqrt(eta)) for -. Throws invalid_argument for eta outside [0, 1].
Operator2 kraus_axis(double eta, Readout r);

/// R^{-1}(n) kraus_axis(eta, r) R(n). Hermitian with eigenvectors |+-n>.
Operator2 kraus(const Direction &n, double eta, Readout r);

/// |+n> = R^{-1}(n)|up>.
Spinor eigenstate(const Direction &n, Readout r = Readout::plus);

struct MeasurementOutcome {
    QubitState state;
    double probability;
};

/// Applies kraus(n, eta, r). The returned state carries the updated
/// log-weight so that it still represents the exact unnormalized product.
/// Throws impossible_readout when the branch probability is below 1e-300.
MeasurementOutcome apply_measurement(const QubitState &state, const Direction &n, double eta, Readout r);
/// Same, with a precomputed Kraus operator.
MeasurementOutcome apply_operator(const QubitState &state, const Operator2 &op);

/// Theta = 2 atan2(|down|, |up|); Phi = arg(down) - arg(up), set to 0 at poles.
BlochPoint bloch_coords(const QubitState &state);
BlochPoint bloch_coords(const Spinor &v);

/// Great-circle interpolation. Throws geodesic_undefined for (near) antipodal
/// endpoints.
BlochPoint geodesic_interpolate(const BlochPoint &a, const BlochPoint &b, double s);

}  // namespace geophase
