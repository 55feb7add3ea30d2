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

constexpr double kLogVisibilityFloor = -690.7755278982137;  // log(1e-300)

// Walks one realization. The state is kept normalized with its phase
// intact; log_p collects the log of the stepwise probabilities, so the
// unnormalized vector is state * exp(log_p / 2).
template <typename OnStep>
void walk(const MeasurementProtocol &protocol, CounterRng &rng, Spinor &state, double &log_p, cplx &conditional,
          Readout &last, OnStep on_step) {
    const size_t n = protocol.size();
    const Spinor psi0 = protocol.initial_spinor();
    state = psi0;
    log_p = 0.0;
    for (size_t k = 0; k < n; k++) {
        const Operator2 &mp = protocol.kraus_at(k, Readout::plus);
        const Operator2 &mm = protocol.kraus_at(k, Readout::minus);
        Spinor wp = mp * state;
        Spinor wm = mm * state;
        if (k + 1 == n) {
            cplx a = inner(psi0, wp);
            conditional = a * a;
            if (!protocol.final_postselect()) {
                cplx b = inner(psi0, wm);
                conditional += b * b;
            }
        }
        double pp = norm_sq(wp);
        double pm = norm_sq(wm);
        double u = rng.uniform() * (pp + pm);
        Readout r = (u < pp || pm == 0.0) ? Readout::plus : Readout::minus;
        const Spinor &w = r == Readout::plus ? wp : wm;
        double p = r == Readout::plus ? pp : pm;
        double scale = 1.0 / std::sqrt(p);
        state = {w[0] * scale, w[1] * scale};
        // The Kraus pair is complete, so pp + pm = 1 up to rounding.
        log_p += std::log(p / (pp + pm));
        last = r;
        on_step(k, r, state);
    }
}

struct Enumerator {
    const MeasurementProtocol &protocol;
    Spinor psi0;
    std::vector<EnumeratedSequence> out;
    std::vector<Readout> prefix;

    void visit(size_t k, const Spinor &state, double log_p, bool dead) {
        if (k == protocol.size()) {
            EnumeratedSequence seq;
            seq.readouts = prefix;
            if (dead) {
                seq.amplitude = PhaseAmplitude::from(0.0);
                seq.probability = 0.0;
            } else {
                seq.amplitude = PhaseAmplitude::from(inner(psi0, state) * std::exp(0.5 * log_p));
                seq.probability = std::exp(log_p);
            }
            out.push_back(std::move(seq));
            return;
        }
        for (Readout r : {Readout::plus, Readout::minus}) {
            prefix.push_back(r);
            if (dead) {
                visit(k + 1, state, log_p, true);
            } else {
                Spinor w = protocol.kraus_at(k, r) * state;
                double p = norm_sq(w);
                if (p < 1e-300) {
                    visit(k + 1, state, log_p, true);
                } else {
                    double s = 1.0 / std::sqrt(p);
                    visit(k + 1, {w[0] * s, w[1] * s}, log_p + std::log(p), false);
                }
            }
            prefix.pop_back();
        }
    }
};

using Vec4 = std::array<cplx, 4>;

// v <- sum_r (A_r (x) B_r) v with B_r = A_r or conj(A_r).
Vec4 apply_doubled(const Operator2 &a0, const Operator2 &a1, bool conj_second, bool plus_only, const Vec4 &v) {
    Vec4 out{};
    auto add = [&](const Operator2 &a) {
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                cplx acc = 0.0;
                for (int k = 0; k < 2; k++) {
                    for (int l = 0; l < 2; l++) {
                        cplx b = conj_second ? std::conj(a(j, l)) : a(j, l);
                        acc += a(i, k) * b * v[2 * k + l];
                    }
                }
                out[2 * i + j] += acc;
            }
        }
    };
    add(a0);
    if (!plus_only) {
        add(a1);
    }
    return out;
}

}  // namespace

TrajectoryRecord sample_trajectory(const MeasurementProtocol &protocol, CounterRng &rng, bool record_states) {
    TrajectoryRecord rec;
    rec.index = rng.counter();
    rec.seed = rng.key();
    rec.readouts.reserve(protocol.size());
    if (record_states) {
        rec.states.reserve(protocol.size() + 1);
        rec.states.push_back(bloch_coords(protocol.initial_spinor()));
    }
    Spinor state;
    double log_p = 0.0;
    Readout last = Readout::plus;
    walk(protocol, rng, state, log_p, rec.conditional_z, last, [&](size_t, Readout r, const Spinor &s) {
        rec.readouts.push_back(r);
        if (record_states) {
            rec.states.push_back(bloch_coords(s));
        }
    });
    rec.accepted = last == Readout::plus;
    rec.path_probability = std::exp(log_p);
    cplx amp = inner(protocol.initial_spinor(), state) * std::exp(0.5 * log_p);
    if (protocol.final_postselect() && !rec.accepted) {
        amp = 0.0;
    }
    rec.amplitude = PhaseAmplitude::from(amp);
    return rec;
}

TrajectoryRecord sample_trajectory(
    const MeasurementProtocol &protocol, uint64_t master_seed, uint64_t index, bool record_states) {
    CounterRng rng(master_seed, index);
    TrajectoryRecord rec = sample_trajectory(protocol, rng, record_states);
    rec.seed = master_seed;
    rec.index = index;
    return rec;
}

RealizationSample sample_realization(
    const MeasurementProtocol &protocol, uint64_t master_seed, uint64_t index, Estimator estimator) {
    CounterRng rng(master_seed, index);
    Spinor state;
    double log_p = 0.0;
    cplx conditional = 0.0;
    Readout last = Readout::plus;
    bool all_plus = true;
    walk(protocol, rng, state, log_p, conditional, last, [&](size_t, Readout r, const Spinor &) {
        all_plus = all_plus && r == Readout::plus;
    });
    RealizationSample out;
    out.accepted = last == Readout::plus;
    out.all_plus = all_plus;
    // amplitude^2 / path probability, with the path probability cancelled.
    cplx a = inner(protocol.initial_spinor(), state);
    if (out.accepted) {
        out.phase = std::arg(a);
    }
    if (estimator == Estimator::conditional) {
        out.z = conditional;
    } else if (out.accepted || !protocol.final_postselect()) {
        out.z = a * a;
    }
    return out;
}

std::vector<EnumeratedSequence> enumerate_all(const MeasurementProtocol &protocol) {
    if (protocol.size() > kMaxEnumeratedSteps) {
        throw Error(
            ErrorKind::too_large,
            "enumeration of " + std::to_string(protocol.size()) + " steps refused (limit " +
                std::to_string(kMaxEnumeratedSteps) + "); use Monte Carlo sampling or the exact averaged phase");
    }
    Enumerator e{protocol, protocol.initial_spinor(), {}, {}};
    e.out.reserve(size_t(1) << protocol.size());
    e.visit(0, e.psi0, 0.0, false);
    return std::move(e.out);
}

cplx sum_squared_amplitudes(std::span<const EnumeratedSequence> sequences) {
    cplx total = 0.0;
    for (const auto &s : sequences) {
        total += s.amplitude.amplitude * s.amplitude.amplitude;
    }
    return total;
}

LogAmplitude doubled_transfer(const MeasurementProtocol &protocol, bool conjugate_second) {
    Spinor psi0 = protocol.initial_spinor();
    auto second = [&](cplx x) {
        return conjugate_second ? std::conj(x) : x;
    };
    Vec4 v;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            v[2 * i + j] = psi0[i] * second(psi0[j]);
        }
    }
    double log_scale = 0.0;
    const size_t n = protocol.size();
    for (size_t k = 0; k < n; k++) {
        bool plus_only = k + 1 == n && protocol.final_postselect();
        v = apply_doubled(
            protocol.kraus_at(k, Readout::plus), protocol.kraus_at(k, Readout::minus), conjugate_second, plus_only, v);
        double m = 0.0;
        for (const cplx &x : v) {
            m = std::max(m, std::abs(x));
        }
        if (m == 0.0) {
            return {0.0, 0.0};
        }
        for (cplx &x : v) {
            x /= m;
        }
        log_scale += std::log(m);
    }
    cplx result = 0.0;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            result += std::conj(psi0[i]) * std::conj(second(psi0[j])) * v[2 * i + j];
        }
    }
    return {result, log_scale};
}

EnsembleSummary averaged_phase_exact(const MeasurementProtocol &protocol) {
    LogAmplitude w = doubled_transfer(protocol, false);
    double log_abs = w.log_abs();
    if (!(log_abs >= kLogVisibilityFloor)) {
        throw Error(ErrorKind::visibility_zero, "averaged visibility below 1e-300; the averaged phase is undefined");
    }
    EnsembleSummary out;
    out.alpha = std::max(0.0, -log_abs);
    out.mean_z = std::polar(std::exp(log_abs), std::arg(w.mantissa));
    out.chi_bar = 0.5 * std::arg(w.mantissa);
    out.accept_rate = doubled_transfer(protocol, true).value().real();
    return out;
}

}  // namespace geophase
