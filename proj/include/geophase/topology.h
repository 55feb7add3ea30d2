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

#include <functional>
#include <span>
#include <vector>

#include "geophase/qubit.h"

namespace geophase {

/// chi(theta) on an adaptively refined grid, continued onto the real line
/// starting from chi(0). Points whose probability fell below the exclusion
/// threshold are kept (flagged) but carry no phase.
struct UnfoldedPhaseCurve {
    std::vector<double> theta;
    std::vector<double> chi;
    std::vector<double> principal;
    std::vector<double> probability;
    std::vector<bool> excluded;

    size_t size() const {
        return theta.size();
    }
    /// Unfolded value at the sample nearest to `t` that is not excluded.
    double chi_at(double t) const;
};

/// Sample of a phase-valued function: phase in (-period/2, period/2] (or any
/// representative) and the weight that decides whether it is defined.
struct PhaseSample {
    double phase = 0.0;
    double weight = 1.0;
};

struct UnfoldOptions {
    /// Phase period: 2 pi for chi, pi for the averaged phase.
    double period = kTwoPi;
    /// Largest accepted jump of the principal value between neighbouring
    /// defined samples.
    double max_jump = kPi / 2;
    /// Samples with weight below this carry no phase.
    double min_weight = 1e-8;
    /// Uniform samples taken before refinement (endpoints included).
    size_t initial_points = 129;
    /// Refinement stops with phase_undefined_at below this spacing.
    double min_step = 1e-12;
    /// Extra abscissae sampled up front, e.g. an output grid.
    std::vector<double> seeds;
};

/// Continues f over [lo, hi] by bisecting whichever gap between defined
/// neighbours shows a jump >= max_jump. The first sample fixes the branch.
UnfoldedPhaseCurve unfold(const std::function<PhaseSample(double)> &f, double lo, double hi, const UnfoldOptions &options);

/// chi(theta) of the quasicontinuous postselected amplitude over
/// [0, theta_max], refined until neighbouring principal values differ by less
/// than `tolerance`. Throws phase_undefined_at near a zero of P.
UnfoldedPhaseCurve unfold_phase(double c, double theta_max = kPi, double tolerance = kPi / 2);

/// Unfolded chi at the requested angles (sorted ascending, starting at 0).
std::vector<double> unfold_phase_on_grid(double c, std::span<const double> thetas, double tolerance = kPi / 2);

struct ChernResult {
    int chern = 0;
    /// Before rounding: (chi(pi) - chi(0)) / 2 pi, or total flux / 2 pi.
    double raw = 0.0;
    double residual = 0.0;
    bool reliable = true;
    /// Plaquette method only.
    double total_flux = 0.0;
    double max_plaquette_flux = 0.0;
};

/// Chern number from the unfolded endpoint difference. Throws near_critical
/// within 1e-3 of critical_strength().
ChernResult chern_number(double c);

struct PlaquetteOptions {
    /// Strips along theta; also the number of geodesic closure points per
    /// loop. At least 64.
    int grid_n = 128;
    /// Measurements per trajectory (the measured part of each loop).
    int n_steps = 500;
    /// Refuse when any single plaquette carries more flux than this.
    double max_flux = kPi / 2;
};

/// Berry flux of the map (theta, t) -> |psi_theta(t)> summed over gauge
/// invariant plaquettes. Rows are the all-plus states of the finite-N
/// protocol followed by a geodesic back to |psi_0>.
ChernResult chern_via_curvature(double c, const PlaquetteOptions &options = {});

/// Flux of each strip between neighbouring theta rows, in strip order.
std::vector<double> plaquette_strip_flux(double c, const PlaquetteOptions &options);

struct CriticalStrength {
    double c = 0.0;
    /// P(theta = pi/2) at the returned root.
    double probability = 0.0;
    int iterations = 0;
};

/// Bisection root of Re A(c, pi/2) = cos s + c sin(s)/s (s^2 = pi^2 - c^2).
/// Throws no_bracket when the ends do not straddle a sign change.
CriticalStrength critical_strength(double lo = 1.0, double hi = 4.0, double tol = 1e-10);

struct WindingResult {
    int m = 0;
    double raw = 0.0;
    /// Distance of chi_bar(pi/2) - chi_bar(0) from a multiple of pi.
    double endpoint_residual = 0.0;
    std::vector<double> theta;
    std::vector<double> chi_bar;
    std::vector<double> visibility;
};

/// Winding of the averaged phase (a circle of length pi) over theta in
/// [0, pi/2], from the exact transfer matrix at N = n_steps. Refined until
/// jumps are below pi/4. Throws phase_undefined_at when the visibility drops
/// below 1e-8.
WindingResult winding_number_averaged(double c, int n_theta = 65, int n_steps = 500);

struct SearchBox {
    double c_lo = 2.5;
    double c_hi = 4.5;
    double theta_lo = 0.5;
    double theta_hi = 1.5;
};

struct CriticalPoint {
    double c = 0.0;
    double theta = 0.0;
    double visibility = 0.0;
    int levels = 0;
};

struct CriticalSearchOptions {
    int n_steps = 500;
    int grid = 41;
    int levels = 10;
    /// A minimum above this is reported as no_critical_point.
    double max_visibility = 1e-3;
};

/// e^{-alpha} of the parallel protocol at N = n_steps; 0 where it underflows.
double averaged_visibility(double c, double theta, int n_steps);

/// Visibility on a c x theta grid, row-major in c (OpenMP over points).
std::vector<double> visibility_grid(std::span<const double> cs, std::span<const double> thetas, int n_steps);

/// Minimizer of e^{-alpha} over the box by nested grid refinement.
CriticalPoint averaged_critical_point(const SearchBox &box = {}, const CriticalSearchOptions &options = {});

namespace reference {

std::vector<double> plaquette_strip_flux(double c, const PlaquetteOptions &options);
std::vector<double> visibility_grid(std::span<const double> cs, std::span<const double> thetas, int n_steps);

}  // namespace reference

}  // namespace geophase
