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

#include <algorithm>
#include <cmath>

#include "geophase/error.h"
#include "geophase/trajectory.h"

namespace geophase {

namespace {

constexpr uint64_t kBootstrapSalt = 0x6a09e667f3bcc908ULL;

void check_options(const EnsembleOptions &options) {
    if (options.n_realizations < 1) {
        throw Error(ErrorKind::invalid_argument, "need at least one realization");
    }
    if (options.bins != 0 && options.bins < 8) {
        throw Error(ErrorKind::invalid_argument, "histogram needs at least 8 bins");
    }
    if (options.bootstrap_resamples < 0) {
        throw Error(ErrorKind::invalid_argument, "bootstrap resample count must be non-negative");
    }
}

cplx bootstrap_mean(std::span<const RealizationSample> samples, uint64_t seed, uint64_t b) {
    CounterRng rng(seed ^ kBootstrapSalt, b);
    const size_t n = samples.size();
    cplx total = 0.0;
    for (size_t i = 0; i < n; i++) {
        size_t pick = std::min(n - 1, size_t(rng.uniform() * double(n)));
        total += samples[pick].z;
    }
    return total / double(n);
}

EnsembleSummary summarize(std::span<const RealizationSample> samples, const EnsembleOptions &options, bool parallel) {
    check_options(options);
    EnsembleSummary out;
    out.n_realizations = samples.size();
    cplx total = 0.0;
    if (options.bins > 0) {
        out.histogram.emplace(size_t(options.bins));
    }
    for (const auto &s : samples) {
        total += s.z;
        if (s.accepted) {
            out.n_accepted++;
            if (out.histogram) {
                out.histogram->counts[out.histogram->bin_of(s.phase)]++;
            }
        }
        if (s.all_plus) {
            out.n_all_plus++;
        }
    }
    out.accept_rate = double(out.n_accepted) / double(samples.size());
    if (out.n_accepted == 0 && options.estimator == Estimator::sampled_final) {
        throw Error(ErrorKind::visibility_zero, "every realization was rejected");
    }
    out.mean_z = total / double(samples.size());
    if (std::abs(out.mean_z) == 0.0) {
        throw Error(ErrorKind::visibility_zero, "ensemble mean of e^{2i chi} vanished");
    }
    out.chi_bar = 0.5 * std::arg(out.mean_z);
    out.alpha = std::max(0.0, -std::log(std::abs(out.mean_z)));

    const int64_t resamples = options.bootstrap_resamples;
    if (resamples >= 2) {
        std::vector<cplx> means(static_cast<size_t>(resamples));
#pragma omp parallel for schedule(static) if (parallel)
        for (int64_t b = 0; b < resamples; b++) {
            means[size_t(b)] = bootstrap_mean(samples, options.seed, uint64_t(b));
        }
        cplx centre = 0.0;
        for (const cplx &m : means) {
            centre += m;
        }
        centre /= double(resamples);
        double var = 0.0;
        for (const cplx &m : means) {
            var += std::norm(m - centre);
        }
        out.stderr_z = std::sqrt(var / double(resamples - 1));
    }
    return out;
}

}  // namespace

double Histogram::bin_width() const {
    return kTwoPi / double(counts.size());
}

double Histogram::bin_center(size_t bin) const {
    return -kPi + (double(bin) + 0.5) * bin_width();
}

size_t Histogram::bin_of(double chi) const {
    double shifted = (wrap_pi(chi) + kPi) / bin_width();
    auto bin = int64_t(std::ceil(shifted)) - 1;
    return size_t(std::clamp<int64_t>(bin, 0, int64_t(counts.size()) - 1));
}

uint64_t Histogram::total() const {
    uint64_t t = 0;
    for (uint64_t c : counts) {
        t += c;
    }
    return t;
}

size_t Histogram::mode() const {
    return size_t(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

double EnsembleSummary::visibility() const {
    return std::abs(mean_z);
}

std::vector<RealizationSample> run_realizations(
    const MeasurementProtocol &protocol, uint64_t n_realizations, uint64_t master_seed, Estimator estimator) {
    std::vector<RealizationSample> out(n_realizations);
    const auto n = int64_t(n_realizations);
#pragma omp parallel for schedule(dynamic, 16)
    for (int64_t i = 0; i < n; i++) {
        out[size_t(i)] = sample_realization(protocol, master_seed, uint64_t(i), estimator);
    }
    return out;
}

EnsembleSummary summarize_realizations(std::span<const RealizationSample> samples, const EnsembleOptions &options) {
    return summarize(samples, options, true);
}

EnsembleSummary averaged_phase_mc(const MeasurementProtocol &protocol, const EnsembleOptions &options) {
    check_options(options);
    auto samples = run_realizations(protocol, options.n_realizations, options.seed, options.estimator);
    return summarize(samples, options, true);
}

EnsembleSummary phase_histogram(const MeasurementProtocol &protocol, uint64_t n_realizations, int bins, uint64_t seed) {
    if (bins < 8) {
        throw Error(ErrorKind::invalid_argument, "histogram needs at least 8 bins");
    }
    EnsembleOptions options;
    options.n_realizations = n_realizations;
    options.seed = seed;
    options.bins = bins;
    return averaged_phase_mc(protocol, options);
}

namespace reference {

std::vector<RealizationSample> run_realizations(
    const MeasurementProtocol &protocol, uint64_t n_realizations, uint64_t master_seed, Estimator estimator) {
    std::vector<RealizationSample> out(n_realizations);
    for (uint64_t i = 0; i < n_realizations; i++) {
        out[i] = sample_realization(protocol, master_seed, i, estimator);
    }
    return out;
}

EnsembleSummary averaged_phase_mc(const MeasurementProtocol &protocol, const EnsembleOptions &options) {
    check_options(options);
    auto samples = reference::run_realizations(protocol, options.n_realizations, options.seed, options.estimator);
    return summarize(samples, options, false);
}

}  // namespace reference

}  // namespace geophase
