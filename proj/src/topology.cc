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

#include "geophase/topology.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "geophase/error.h"
#include "geophase/parallel.h"
#include "geophase/phase.h"
#include "geophase/protocol.h"
#include "geophase/trajectory.h"

namespace geophase {

namespace {

constexpr double kNearCriticalWindow = 1e-3;
constexpr double kMinVisibility = 1e-8;
constexpr size_t kMaxSamples = size_t(1) << 22;

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) {
        out[size_t(i)] = i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
    }
    return out;
}

void check_strength(double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw Error(ErrorKind::invalid_argument, "integrated strength c must be finite and non-negative");
    }
}

}  // namespace

double UnfoldedPhaseCurve::chi_at(double t) const {
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_dist = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < theta.size(); i++) {
        if (!excluded[i] && std::abs(theta[i] - t) < best_dist) {
            best_dist = std::abs(theta[i] - t);
            best = chi[i];
        }
    }
    return best;
}

UnfoldedPhaseCurve unfold(
    const std::function<PhaseSample(double)> &f, double lo, double hi, const UnfoldOptions &options) {
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorKind::invalid_argument, "unfold interval must be finite and ordered");
    }
    if (!(options.max_jump > 0.0 && options.max_jump < options.period)) {
        throw Error(ErrorKind::invalid_argument, "max_jump must lie in (0, period)");
    }
    std::map<double, PhaseSample> samples;
    auto add = [&](double t) {
        if (samples.find(t) == samples.end()) {
            samples.emplace(t, f(t));
        }
    };
    size_t n0 = std::max<size_t>(options.initial_points, 2);
    for (size_t i = 0; i < n0; i++) {
        add(i + 1 == n0 ? hi : lo + (hi - lo) * double(i) / double(n0 - 1));
    }
    for (double t : options.seeds) {
        if (t >= lo && t <= hi) {
            add(t);
        }
    }

    auto defined = [&](const PhaseSample &s) {
        return s.weight >= options.min_weight;
    };
    while (true) {
        std::vector<double> inserts;
        auto prev = samples.end();
        for (auto it = samples.begin(); it != samples.end(); ++it) {
            if (!defined(it->second)) {
                continue;
            }
            if (prev != samples.end()) {
                double jump = std::abs(std::remainder(it->second.phase - prev->second.phase, options.period));
                if (jump >= options.max_jump) {
                    // Close in on the jump from both defined ends; anything
                    // between them is excluded and cannot carry the phase.
                    auto left = std::next(prev);
                    auto right = std::prev(it);
                    double w_left = left->first - prev->first;
                    double w_right = it->first - right->first;
                    if (std::max(w_left, w_right) < options.min_step) {
                        double where = 0.5 * (prev->first + it->first);
                        throw Error(
                            ErrorKind::phase_undefined_at,
                            "phase jumps by " + std::to_string(jump) + " near theta = " + std::to_string(where) +
                                "; the probability vanishes there",
                            where);
                    }
                    if (w_left >= options.min_step) {
                        inserts.push_back(0.5 * (prev->first + left->first));
                    }
                    if (right != prev && w_right >= options.min_step) {
                        inserts.push_back(0.5 * (right->first + it->first));
                    }
                }
            }
            prev = it;
        }
        if (inserts.empty()) {
            break;
        }
        if (samples.size() + inserts.size() > kMaxSamples) {
            throw Error(ErrorKind::phase_undefined_at, "phase refinement did not converge", inserts.front());
        }
        for (double t : inserts) {
            add(t);
        }
    }

    UnfoldedPhaseCurve curve;
    curve.theta.reserve(samples.size());
    bool anchored = false;
    double running = 0.0;
    double last_phase = 0.0;
    for (const auto &[t, s] : samples) {
        bool ok = defined(s);
        curve.theta.push_back(t);
        curve.principal.push_back(s.phase);
        curve.probability.push_back(s.weight);
        curve.excluded.push_back(!ok);
        if (!ok) {
            curve.chi.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        if (!anchored) {
            running = s.phase;
            anchored = true;
        } else {
            running += std::remainder(s.phase - last_phase, options.period);
        }
        last_phase = s.phase;
        curve.chi.push_back(running);
    }
    if (!anchored) {
        throw Error(ErrorKind::phase_undefined_at, "phase undefined on the whole interval", lo);
    }
    return curve;
}

namespace {

UnfoldOptions postselected_options(double tolerance) {
    if (!(tolerance > 0.0 && tolerance <= kPi / 2)) {
        throw Error(ErrorKind::invalid_argument, "unfold tolerance must lie in (0, pi/2]");
    }
    UnfoldOptions options;
    options.max_jump = tolerance;
    return options;
}

PhaseSample closed_form_sample(double c, double theta) {
    PhaseAmplitude a = postselected_closed_form(c, theta);
    return {std::arg(a.amplitude), a.probability};
}

}  // namespace

UnfoldedPhaseCurve unfold_phase(double c, double theta_max, double tolerance) {
    check_strength(c);
    if (!(theta_max > 0.0 && theta_max <= kPi)) {
        throw Error(ErrorKind::invalid_argument, "theta_max must lie in (0, pi]");
    }
    return unfold(
        [c](double t) {
            return closed_form_sample(c, t);
        },
        0.0, theta_max, postselected_options(tolerance));
}

std::vector<double> unfold_phase_on_grid(double c, std::span<const double> thetas, double tolerance) {
    check_strength(c);
    if (thetas.empty()) {
        return {};
    }
    if (!std::is_sorted(thetas.begin(), thetas.end()) || thetas.front() < 0.0 || thetas.back() > kPi) {
        throw Error(ErrorKind::invalid_argument, "theta grid must be ascending within [0, pi]");
    }
    UnfoldOptions options = postselected_options(tolerance);
    options.seeds.assign(thetas.begin(), thetas.end());
    double hi = std::max(thetas.back(), 1e-300);
    UnfoldedPhaseCurve curve = unfold(
        [c](double t) {
            return closed_form_sample(c, t);
        },
        0.0, hi, options);
    std::vector<double> out;
    out.reserve(thetas.size());
    for (double t : thetas) {
        auto it = std::lower_bound(curve.theta.begin(), curve.theta.end(), t);
        out.push_back(curve.chi[size_t(it - curve.theta.begin())]);
    }
    return out;
}

CriticalStrength critical_strength(double lo, double hi, double tol) {
    if (!(lo < hi) || !(tol > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "critical_strength needs lo < hi and tol > 0");
    }
    auto f = [](double c) {
        return postselected_closed_form(c, kPi / 2).amplitude.real();
    };
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) {
        return {lo, postselected_closed_form(lo, kPi / 2).probability, 0};
    }
    if (f_hi == 0.0) {
        return {hi, postselected_closed_form(hi, kPi / 2).probability, 0};
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw Error(
            ErrorKind::no_bracket,
            "equator amplitude has the same sign at c = " + std::to_string(lo) + " and c = " + std::to_string(hi));
    }
    CriticalStrength out;
    while (hi - lo > tol && out.iterations < 200) {
        double mid = 0.5 * (lo + hi);
        double f_mid = f(mid);
        if (f_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        out.iterations++;
    }
    out.c = 0.5 * (lo + hi);
    out.probability = postselected_closed_form(out.c, kPi / 2).probability;
    return out;
}

ChernResult chern_number(double c) {
    check_strength(c);
    static const double c_crit = critical_strength().c;
    if (std::abs(c - c_crit) < kNearCriticalWindow) {
        throw Error(
            ErrorKind::near_critical,
            "c = " + std::to_string(c) + " is within 1e-3 of the critical strength " + std::to_string(c_crit) +
                "; chi is undefined at theta = pi/2",
            kPi / 2);
    }
    UnfoldedPhaseCurve curve = unfold_phase(c, kPi);
    ChernResult out;
    out.raw = (curve.chi.back() - curve.chi.front()) / kTwoPi;
    out.chern = int(std::lround(out.raw));
    out.residual = std::abs(out.raw - out.chern);
    out.reliable = out.residual < 0.05;
    return out;
}

double averaged_visibility(double c, double theta, int n_steps) {
    auto protocol = MeasurementProtocol::parallel(c, theta, n_steps);
    double log_abs = doubled_transfer(protocol, false).log_abs();
    return log_abs < -700.0 ? 0.0 : std::exp(log_abs);
}

std::vector<double> visibility_grid(std::span<const double> cs, std::span<const double> thetas, int n_steps) {
    std::vector<double> out(cs.size() * thetas.size());
    const size_t nt = thetas.size();
    parallel_for(int64_t(out.size()), [&](int64_t k) {
        size_t i = size_t(k) / nt;
        size_t j = size_t(k) % nt;
        out[size_t(k)] = averaged_visibility(cs[i], thetas[j], n_steps);
    });
    return out;
}

namespace reference {

std::vector<double> visibility_grid(std::span<const double> cs, std::span<const double> thetas, int n_steps) {
    std::vector<double> out;
    out.reserve(cs.size() * thetas.size());
    for (double c : cs) {
        for (double t : thetas) {
            out.push_back(averaged_visibility(c, t, n_steps));
        }
    }
    return out;
}

}  // namespace reference

WindingResult winding_number_averaged(double c, int n_theta, int n_steps) {
    check_strength(c);
    if (n_theta < 2) {
        throw Error(ErrorKind::invalid_argument, "winding number needs at least two theta points");
    }
    UnfoldOptions options;
    options.period = kPi;
    options.max_jump = kPi / 4;
    options.min_weight = kMinVisibility;
    options.initial_points = size_t(n_theta);
    options.min_step = 1e-9;
    auto sample = [&](double t) -> PhaseSample {
        auto protocol = MeasurementProtocol::parallel(c, t, n_steps);
        LogAmplitude w = doubled_transfer(protocol, false);
        double log_abs = w.log_abs();
        double vis = log_abs < -700.0 ? 0.0 : std::exp(log_abs);
        return {0.5 * std::arg(w.mantissa), vis};
    };
    UnfoldedPhaseCurve curve = unfold(sample, 0.0, kPi / 2, options);
    for (size_t i = 0; i < curve.size(); i++) {
        if (curve.excluded[i]) {
            throw Error(
                ErrorKind::phase_undefined_at,
                "averaged phase ill-defined: visibility " + std::to_string(curve.probability[i]) +
                    " below 1e-8 at theta = " + std::to_string(curve.theta[i]),
                curve.theta[i]);
        }
    }
    WindingResult out;
    out.theta = curve.theta;
    out.chi_bar = curve.chi;
    out.visibility = curve.probability;
    out.raw = (curve.chi.back() - curve.chi.front()) / kPi;
    out.m = int(std::lround(out.raw));
    out.endpoint_residual = std::abs(out.raw - out.m) * kPi;
    return out;
}

CriticalPoint averaged_critical_point(const SearchBox &box, const CriticalSearchOptions &options) {
    if (!(box.c_lo < box.c_hi && box.theta_lo < box.theta_hi)) {
        throw Error(ErrorKind::no_critical_point, "search box is empty");
    }
    if (box.c_lo < 0.0 || box.theta_lo < 0.0 || box.theta_hi > kPi) {
        throw Error(ErrorKind::invalid_argument, "search box must satisfy c >= 0 and theta in [0, pi]");
    }
    if (options.grid < 3 || options.levels < 1) {
        throw Error(ErrorKind::invalid_argument, "critical-point search needs grid >= 3 and levels >= 1");
    }
    SearchBox current = box;
    CriticalPoint best;
    best.visibility = std::numeric_limits<double>::infinity();
    for (int level = 0; level < options.levels; level++) {
        auto cs = linspace(current.c_lo, current.c_hi, options.grid);
        auto ts = linspace(current.theta_lo, current.theta_hi, options.grid);
        auto vis = visibility_grid(cs, ts, options.n_steps);
        size_t k = size_t(std::min_element(vis.begin(), vis.end()) - vis.begin());
        size_t i = k / ts.size();
        size_t j = k % ts.size();
        if (vis[k] < best.visibility) {
            best = {cs[i], ts[j], vis[k], level + 1};
        }
        double hc = 2.0 * (cs[1] - cs[0]);
        double ht = 2.0 * (ts[1] - ts[0]);
        current.c_lo = std::max(box.c_lo, cs[i] - hc);
        current.c_hi = std::min(box.c_hi, cs[i] + hc);
        current.theta_lo = std::max(box.theta_lo, ts[j] - ht);
        current.theta_hi = std::min(box.theta_hi, ts[j] + ht);
    }
    if (!(best.visibility <= options.max_visibility)) {
        throw Error(
            ErrorKind::no_critical_point,
            "no critical point in box: minimum visibility " + std::to_string(best.visibility) + " at c = " +
                std::to_string(best.c) + ", theta = " + std::to_string(best.theta));
    }
    return best;
}

}  // namespace geophase
