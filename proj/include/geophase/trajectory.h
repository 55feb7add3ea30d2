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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geophase/phase.h"
#include "geophase/protocol.h"
#include "geophase/rng.h"

namespace geophase {

/// One sampled readout sequence.
struct TrajectoryRecord {
    std::vector<Readout> readouts;
    /// Bloch points of |psi_0>, ..., |psi_N>; empty unless requested.
    std::vector<BlochPoint> states;
    /// <psi_0|psi~_N> for the realized sequence (zero when rejected).
    PhaseAmplitude amplitude;
    /// Product of the stepwise Born probabilities.
    double path_probability = 1.0;
    /// (<psi_0|M_N^+|psi_{N-1}>)^2 with |psi_{N-1}> normalized but carrying
    /// its accumulated phase: P(r_N = + | history) e^{2 i chi}. Without
    /// postselection the - branch is added as well.
    cplx conditional_z = 0.0;
    bool accepted = false;
    uint64_t seed = 0;
    uint64_t index = 0;
};

/// Samples every readout from its Born probability, including the final
/// strong step. `rng` is advanced; its key identifies the realization.
TrajectoryRecord sample_trajectory(const MeasurementProtocol &protocol, CounterRng &rng, bool record_states = false);
/// Realization `index` of the ensemble keyed by `master_seed`.
TrajectoryRecord sample_trajectory(
    const MeasurementProtocol &protocol, uint64_t master_seed, uint64_t index, bool record_states = false);

struct EnumeratedSequence {
    std::vector<Readout> readouts;
    PhaseAmplitude amplitude;
    double probability = 0.0;
};

inline constexpr size_t kMaxEnumeratedSteps = 16;

/// All 2^N readout sequences (both final readouts) with exact amplitude and
/// probability. Throws too_large for N > 16.
std::vector<EnumeratedSequence> enumerate_all(const MeasurementProtocol &protocol);

/// Sum of amplitude^2 over an enumeration: the exact right-hand side of the
/// averaged-phase definition.
cplx sum_squared_amplitudes(std::span<const EnumeratedSequence> sequences);

/// Sum over readout sequences of <psi_0|A|psi_0> <psi_0|A|psi_0>, or with the
/// second factor conjugated, as a product of 4x4 doubled-space transfer
/// matrices sum_r M_r (x) M_r. A postselected final step contributes only
/// its + branch.
LogAmplitude doubled_transfer(const MeasurementProtocol &protocol, bool conjugate_second);

enum class Estimator {
    /// Final readout sampled; rejected runs add 0, accepted add e^{2 i chi}.
    sampled_final,
    /// Final readout averaged analytically: each run adds P(+) e^{2 i chi}.
    conditional,
};

struct Histogram {
    std::vector<uint64_t> counts;

    explicit Histogram(size_t bins = 0) : counts(bins, 0) {
    }
    size_t size() const {
        return counts.size();
    }
    double bin_width() const;
    double bin_center(size_t bin) const;
    /// Bins are (-pi + i w, -pi + (i+1) w].
    size_t bin_of(double chi) const;
    uint64_t total() const;
    size_t mode() const;
};

struct EnsembleSummary {
    /// e^{2 i chi_bar - alpha}.
    cplx mean_z = 1.0;
    /// Averaged phase, defined mod pi; reported in (-pi/2, pi/2].
    double chi_bar = 0.0;
    double alpha = 0.0;
    /// Bootstrap standard error of mean_z (both components combined).
    double stderr_z = 0.0;
    uint64_t n_realizations = 0;
    uint64_t n_accepted = 0;
    uint64_t n_all_plus = 0;
    /// Accepted fraction (Monte Carlo) or the exact acceptance probability.
    double accept_rate = 1.0;
    std::optional<Histogram> histogram;

    double visibility() const;
};

/// Exact averaged phase from doubled_transfer. Throws visibility_zero when
/// |e^{2 i chi_bar - alpha}| < 1e-300.
EnsembleSummary averaged_phase_exact(const MeasurementProtocol &protocol);

struct EnsembleOptions {
    uint64_t n_realizations = 4000;
    uint64_t seed = 0;
    /// 0 disables the histogram; otherwise at least 8.
    int bins = 0;
    Estimator estimator = Estimator::sampled_final;
    int bootstrap_resamples = 200;
};

/// Monte Carlo estimate of the averaged phase (OpenMP over realizations,
/// reduced in realization order). Bit-identical for a fixed seed regardless
/// of the thread count. Throws visibility_zero when every run is rejected.
EnsembleSummary averaged_phase_mc(const MeasurementProtocol &protocol, const EnsembleOptions &options);

/// averaged_phase_mc with a histogram of chi over accepted realizations.
EnsembleSummary phase_histogram(const MeasurementProtocol &protocol, uint64_t n_realizations, int bins, uint64_t seed);

/// Per-realization output of the ensemble kernel.
struct RealizationSample {
    cplx z = 0.0;
    double phase = 0.0;
    bool accepted = false;
    bool all_plus = false;
};

RealizationSample sample_realization(
    const MeasurementProtocol &protocol, uint64_t master_seed, uint64_t index, Estimator estimator);

/// OpenMP kernel: realization i lands in slot i.
std::vector<RealizationSample> run_realizations(
    const MeasurementProtocol &protocol, uint64_t n_realizations, uint64_t master_seed, Estimator estimator);

/// Reduces kernel output into a summary (serial, index order).
EnsembleSummary summarize_realizations(std::span<const RealizationSample> samples, const EnsembleOptions &options);

namespace reference {

/// Single-threaded loop over the same per-realization code; kept as the
/// reference the OpenMP kernel is tested and benchmarked against.
std::vector<RealizationSample> run_realizations(
    const MeasurementProtocol &protocol, uint64_t n_realizations, uint64_t master_seed, Estimator estimator);

EnsembleSummary averaged_phase_mc(const MeasurementProtocol &protocol, const EnsembleOptions &options);

}  // namespace reference

}  // namespace geophase
