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

// Prints one PASS/FAIL line per acceptance criterion. Exit status is the
// number of failing criteria (0 when everything passes).

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "geophase/error.h"
#include "geophase/interferometer.h"
#include "geophase/phase.h"
#include "geophase/topology.h"
#include "geophase/trajectory.h"

using namespace geophase;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    vsnprintf(buffer, sizeof(buffer), format, args);
    va_end(args);
    return buffer;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; i++) {
        out.push_back(lo + (hi - lo) * i / (n - 1));
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome closed_form_vs_product() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    double worst_ratio = 0.0;
    for (double c : {0.5, 1.0, 2.0, 3.0, 5.0}) {
        for (double theta : {kPi / 8, kPi / 4, kPi / 2, 3 * kPi / 4}) {
            cplx exact = postselected_closed_form(c, theta).amplitude;
            double e2 = std::abs(all_plus_amplitude(MeasurementProtocol::parallel(c, theta, 2000)).amplitude - exact);
            double e4 = std::abs(all_plus_amplitude(MeasurementProtocol::parallel(c, theta, 4000)).amplitude - exact);
            worst = std::max(worst, e2);
            worst_ratio = std::max(worst_ratio, e4 / e2);
        }
    }
    double t = seconds_since(t0);
    return {worst < 5e-3 && worst_ratio <= 0.6 && t < 5,
            fmt("max err(N=2000)=%.3g, max err ratio 4000/2000=%.4f, %.2fs", worst, worst_ratio, t)};
}

Outcome strong_limit() {
    auto thetas = linspace(0, kPi, 201);
    auto chi = unfold_phase_on_grid(20.0, thetas);
    double worst = 0.0;
    double where = 0.0;
    for (size_t i = 0; i < thetas.size(); i++) {
        double d = std::abs(chi[i] - kPi * (std::cos(thetas[i]) - 1));
        if (d > worst) {
            worst = d;
            where = thetas[i];
        }
    }
    return {worst < 0.01, fmt("max |chi - pi(cos theta - 1)| = %.5f at theta=%.3f (201 points)", worst, where)};
}

Outcome equator_dichotomy() {
    auto thetas = linspace(0, kPi / 2, 65);
    bool ok = true;
    std::string detail;
    for (double c : {0.5, 1.0, 2.0, 2.5, 3.0, 5.0}) {
        double chi = unfold_phase_on_grid(c, thetas).back();
        double d = std::min(std::abs(chi), std::abs(chi + kPi));
        ok = ok && d < 1e-9;
        detail += fmt("c=%g:%.3g ", c, chi);
    }
    return {ok, detail};
}

Outcome critical_strength_check() {
    CriticalStrength crit = critical_strength();
    auto thetas = linspace(0, kPi / 2, 65);
    double below = unfold_phase_on_grid(crit.c - 0.05, thetas).back();
    double above = unfold_phase_on_grid(crit.c + 0.05, thetas).back();
    bool flip = std::abs(below) < 1e-9 && std::abs(above + kPi) < 1e-9;
    bool ok = crit.c >= 2.10 && crit.c <= 2.20 && crit.probability < 1e-15 && flip &&
              std::abs(crit.c - 2.15) <= 0.05;
    return {ok, fmt("c_crit=%.12f, P=%.3g, chi(pi/2) at -0.05/+0.05: %.3g/%.6f", crit.c, crit.probability, below, above)};
}

Outcome chern_numbers() {
    auto t0 = std::chrono::steady_clock::now();
    ChernResult e1 = chern_number(1.0);
    ChernResult e3 = chern_number(3.0);
    ChernResult p1 = chern_via_curvature(1.0);
    ChernResult p3 = chern_via_curvature(3.0);
    double t = seconds_since(t0);
    double residual = std::max(p1.residual, p3.residual);
    bool ok = e1.chern == 0 && p1.chern == 0 && e3.chern == -1 && p3.chern == -1 && residual < 1e-6 && t < 30;
    return {ok, fmt("endpoint %d/%d, plaquette %d/%d (c=1/c=3), plaquette residual %.2g, %.2fs", e1.chern, e3.chern,
                    p1.chern, p3.chern, residual, t)};
}

Outcome monotonicity() {
    auto thetas = linspace(0, kPi, 200);
    auto strong = unfold_phase_on_grid(3.0, thetas);
    auto weak = unfold_phase_on_grid(1.0, thetas);
    bool decreasing = true;
    int increasing_steps = 0;
    for (size_t i = 1; i < thetas.size(); i++) {
        decreasing = decreasing && strong[i] < strong[i - 1];
        increasing_steps += weak[i] > weak[i - 1];
    }
    return {decreasing && increasing_steps > 0,
            fmt("c=3 strictly decreasing: %s; c=1 increasing steps: %d", decreasing ? "yes" : "no", increasing_steps)};
}

Outcome oracle_chain() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (double c : {0.5, 1.0, 2.0}) {
        auto p = MeasurementProtocol::parallel(c, kPi / 4, 10);
        auto all = enumerate_all(p);
        double total = 0.0;
        for (const auto &s : all) {
            total += s.probability;
        }
        cplx brute = sum_squared_amplitudes(all);
        cplx transfer = doubled_transfer(p, false).value();
        EnsembleOptions o;
        o.n_realizations = 100000;
        o.seed = 20260101;
        EnsembleSummary mc = averaged_phase_mc(p, o);
        double sigmas = std::abs(mc.mean_z - transfer) / mc.stderr_z;
        ok = ok && std::abs(total - 1) < 1e-12 && std::abs(brute - transfer) < 1e-12 && sigmas < 4;
        detail += fmt("c=%g: |sum P-1|=%.1g |enum-transfer|=%.1g MC %.2f sigma; ", c, std::abs(total - 1),
                      std::abs(brute - transfer), sigmas);
    }
    double t = seconds_since(t0);
    detail += fmt("%.2fs", t);
    return {ok && t < 60, detail};
}

Outcome averaged_limits() {
    EnsembleSummary weak = averaged_phase_exact(MeasurementProtocol::parallel(0.05, kPi / 4, 500));
    EnsembleSummary strong = averaged_phase_exact(MeasurementProtocol::parallel(20.0, kPi / 4, 500));
    double target = kPi * (std::cos(kPi / 4) - 1);
    double strong_err = std::abs(std::remainder(strong.chi_bar - target, kPi));
    bool weak_ok = std::abs(weak.chi_bar) < 0.02 && weak.alpha < 0.02;
    bool strong_ok = strong_err < 0.02 && strong.alpha < 0.02;
    return {weak_ok && strong_ok,
            fmt("c=0.05: chi_bar=%.4f alpha=%.4f; c=20: chi_bar err (mod pi)=%.4f alpha=%.4f", weak.chi_bar,
                weak.alpha, strong_err, strong.alpha)};
}

Outcome averaged_critical() {
    auto t0 = std::chrono::steady_clock::now();
    CriticalPoint p = averaged_critical_point();
    double t = seconds_since(t0);
    bool ok = std::abs(p.c - 3.35) <= 0.3 && std::abs(p.theta - kPi / 3) <= 0.15 && p.visibility < 1e-4 && t < 300;
    return {ok, fmt("(c, theta)=(%.5f, %.5f), visibility=%.3g, %.2fs", p.c, p.theta, p.visibility, t)};
}

Outcome winding() {
    int weak = winding_number_averaged(0.5).m;
    int strong = winding_number_averaged(20.0).m;
    return {weak == 0 && strong == -1, fmt("m(c=0.5)=%d, m(c=20)=%d", weak, strong)};
}

Outcome model_equivalence() {
    double worst = 0.0;
    for (int i = 0; i < 5; i++) {
        for (int j = 0; j < 5; j++) {
            for (int k = 0; k < 5; k++) {
                Direction n(kPi * i / 4, kTwoPi * j / 5);
                double g = kPi / 2 * k / 4;
                auto [mp, mm] = kraus_from_model(DetectorCoupling(n, g));
                double eta = std::min(1.0, std::pow(std::sin(g), 2));
                worst = std::max(worst, mp.max_abs_diff(kraus(n, eta, Readout::plus)));
                worst = std::max(worst, mm.max_abs_diff(kraus(n, eta, Readout::minus)));
            }
        }
    }
    return {worst < 1e-12, fmt("max entrywise error %.3g over 125 points", worst)};
}

Outcome oppositeness() {
    double r = oppositeness_residual(MeasurementProtocol::parallel(1.0, kPi / 4, 8));
    return {r < 1e-12, fmt("max |lower - conj(upper)| = %.3g over 128 sequences", r)};
}

// The histogram is property based: the mode must hold the all-+ phase, and
// the tallest local maximum away from the mode (more than one bin off) must
// lie at more negative chi.
Outcome distribution_structure() {
    auto p = MeasurementProtocol::parallel(0.5, kPi / 4, 500);
    EnsembleSummary s = phase_histogram(p, 4000, 64, 0);
    const Histogram &h = *s.histogram;
    double chi_plus = all_plus_amplitude(p).phase;
    size_t mode = h.mode();
    size_t n = h.size();
    size_t second = n;
    for (size_t i = 0; i < n; i++) {
        size_t left = (i + n - 1) % n;
        size_t right = (i + 1) % n;
        size_t dist = std::min((i + n - mode) % n, (mode + n - i) % n);
        if (dist <= 1 || h.counts[i] == 0 || h.counts[i] < h.counts[left] || h.counts[i] < h.counts[right]) {
            continue;
        }
        if (second == n || h.counts[i] > h.counts[second]) {
            second = i;
        }
    }
    bool mode_ok = mode == h.bin_of(chi_plus);
    bool second_ok = second != n && h.bin_center(second) < chi_plus;
    std::string where = second == n ? "none" : fmt("%.3f (%llu counts)", h.bin_center(second),
                                                 (unsigned long long)h.counts[second]);
    return {mode_ok && second_ok, fmt("mode bin center %.3f (%llu), all-+ phase %.4f, secondary peak at %s",
                                      h.bin_center(mode), (unsigned long long)h.counts[mode], chi_plus, where.c_str())};
}

Outcome conservation() {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst11 = 0.0;
    double worst12 = 0.0;
    for (int trial = 0; trial < 1000; trial++) {
        double c = 20 * u(rng);
        double theta = kPi * u(rng);
        double gamma = kTwoPi * u(rng) - kPi;
        double i0 = 0.1 + 10 * u(rng);
        IntensityPair a = postselected_intensities(c, theta, gamma, i0);
        IntensityPair b = polarizer_intensities(c, theta, gamma, i0);
        double prob = postselected_closed_form(c, theta).probability;
        worst11 = std::max(worst11, std::abs(a.i1 + a.i2 - i0));
        worst12 = std::max(worst12, std::abs(b.i1 + b.i2 - i0 * (1 + prob) / 2));
    }
    return {worst11 < 1e-12 && worst12 < 1e-12,
            fmt("max deviation postselected %.3g, polarizer %.3g (1000 draws)", worst11, worst12)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"closed form vs product", closed_form_vs_product},
        {"strong limit", strong_limit},
        {"equator dichotomy", equator_dichotomy},
        {"critical strength", critical_strength_check},
        {"chern numbers", chern_numbers},
        {"monotonicity transition", monotonicity},
        {"small-N oracle chain", oracle_chain},
        {"averaged-phase limits", averaged_limits},
        {"averaged critical point", averaged_critical},
        {"winding numbers", winding},
        {"measurement-model equivalence", model_equivalence},
        {"lower-arm conjugation", oppositeness},
        {"distribution structure", distribution_structure},
        {"interferometer conservation", conservation},
    };
    int failures = 0;
    for (size_t k = 0; k < criteria.size(); k++) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const Error &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures;
}
