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
#include <limits>
#include <optional>
#include <stdexcept>

#include "cli.h"
#include "geophase/error.h"
#include "geophase/interferometer.h"
#include "geophase/parallel.h"
#include "geophase/phase.h"
#include "geophase/protocol.h"
#include "geophase/topology.h"
#include "geophase/trajectory.h"

namespace geophase::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Cell real(double x) {
    return x;
}

Cell integer(int64_t x) {
    return x;
}

Cell text(std::string s) {
    return s;
}

void raise(Table &table, int code) {
    table.exit_code = std::max(table.exit_code, code);
}

void check_conservation(bool ok, const std::string &law) {
    if (!ok) {
        throw std::logic_error("conservation check failed: " + law);
    }
}

}  // namespace

Table cmd_postselected(const RunConfig &config) {
    auto cs = config.c_values();
    auto thetas = config.theta_values();
    Table table;
    table.columns = {"c", "theta", "P", "chi", "chi_unfolded", "flag"};

    struct Series {
        std::vector<double> unfolded;
        std::string failure;
    };
    std::vector<Series> series(cs.size());
    parallel_for(int64_t(cs.size()), [&](int64_t i) {
        Series &s = series[size_t(i)];
        try {
            s.unfolded = unfold_phase_on_grid(cs[size_t(i)], thetas);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::phase_undefined_at) {
                throw;
            }
            s.unfolded.assign(thetas.size(), kNaN);
            s.failure = e.what();
        }
    });

    int64_t flagged = 0;
    for (size_t i = 0; i < cs.size(); i++) {
        if (!series[i].failure.empty()) {
            table.notes.push_back("c=" + format_real(cs[i]) + ": " + series[i].failure);
        }
        for (size_t j = 0; j < thetas.size(); j++) {
            PhaseAmplitude a = postselected_closed_form(cs[i], thetas[j]);
            double unfolded = series[i].unfolded[j];
            std::string flag;
            if (!a.phase_defined) {
                flag = "undefined-phase";
            } else if (std::isnan(unfolded)) {
                flag = "unfold-failed";
            }
            if (!flag.empty()) {
                flagged++;
            }
            table.rows.push_back(
                {real(cs[i]), real(thetas[j]), real(a.probability), real(a.phase_defined ? a.phase : kNaN),
                 real(a.phase_defined ? unfolded : kNaN), text(flag)});
        }
    }
    table.summary["points"] = int64_t(table.rows.size());
    table.summary["flagged"] = flagged;
    if (flagged > 0) {
        raise(table, kPartial);
    }
    return table;
}

Table cmd_distribution(const RunConfig &config) {
    auto cs = config.c_values();
    auto thetas = config.theta_values();
    Table table;
    table.columns = {"kind",        "c",      "theta",         "bin_center", "count", "chi_bar",
                     "alpha",       "stderr", "accept_rate",   "all_plus_rate",       "flag"};
    EnsembleOptions options;
    options.n_realizations = config.realizations;
    options.seed = config.seed;
    options.bins = config.bins;
    options.estimator = config.estimator == "conditional" ? Estimator::conditional : Estimator::sampled_final;
    nlohmann::ordered_json per_point = nlohmann::ordered_json::array();
    Cell none;
    for (double c : cs) {
        for (double theta : thetas) {
            auto protocol = MeasurementProtocol::parallel(c, theta, config.n_steps);
            nlohmann::ordered_json entry;
            entry["c"] = c;
            entry["theta"] = theta;
            try {
                EnsembleSummary s = averaged_phase_mc(protocol, options);
                const Histogram &h = *s.histogram;
                for (size_t b = 0; b < h.size(); b++) {
                    table.rows.push_back(
                        {text("bin"), real(c), real(theta), real(h.bin_center(b)), integer(int64_t(h.counts[b])), none,
                         none, none, none, none, text("")});
                }
                double all_plus_rate = double(s.n_all_plus) / double(s.n_realizations);
                table.rows.push_back(
                    {text("summary"), real(c), real(theta), none, integer(int64_t(s.n_accepted)), real(s.chi_bar),
                     real(s.alpha), real(s.stderr_z), real(s.accept_rate), real(all_plus_rate), text("")});
                entry["chi_bar"] = s.chi_bar;
                entry["alpha"] = s.alpha;
                entry["stderr"] = s.stderr_z;
                entry["accept_rate"] = s.accept_rate;
                entry["all_plus_rate"] = all_plus_rate;
                entry["mode_bin_center"] = h.bin_center(h.mode());
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::visibility_zero) {
                    throw;
                }
                table.rows.push_back(
                    {text("summary"), real(c), real(theta), none, none, none, none, none, none, none,
                     text("visibility-zero")});
                table.notes.push_back("c=" + format_real(c) + ", theta=" + format_real(theta) + ": " + e.what());
                entry["flag"] = "visibility-zero";
                raise(table, kPartial);
            }
            per_point.push_back(std::move(entry));
        }
    }
    table.summary["points"] = std::move(per_point);
    return table;
}

Table cmd_chern(const RunConfig &config) {
    auto cs = config.c_values();
    Table table;
    table.columns = {"c", "chern_endpoint", "chern_plaquette", "residual", "raw_endpoint", "raw_plaquette", "flag"};
    PlaquetteOptions options;
    options.grid_n = config.grid_n;
    options.n_steps = config.n_steps;
    Cell none;
    int64_t failures = 0;
    for (double c : cs) {
        try {
            ChernResult ends = chern_number(c);
            ChernResult plaq = chern_via_curvature(c, options);
            bool agree = ends.chern == plaq.chern && ends.reliable && plaq.reliable;
            table.rows.push_back(
                {real(c), integer(ends.chern), integer(plaq.chern), real(std::max(ends.residual, plaq.residual)),
                 real(ends.raw), real(plaq.raw), text(agree ? "" : "methods-disagree")});
            if (!agree) {
                failures++;
                table.notes.push_back("c=" + format_real(c) + ": endpoint and plaquette Chern numbers disagree");
            }
        } catch (const Error &e) {
            switch (e.kind()) {
                case ErrorKind::near_critical:
                case ErrorKind::phase_undefined_at:
                case ErrorKind::grid_too_coarse:
                    break;
                default:
                    throw;
            }
            failures++;
            std::string where = e.location() ? " (theta=" + format_real(*e.location()) + ")" : "";
            table.notes.push_back("c=" + format_real(c) + ": " + e.what() + where);
            table.rows.push_back({real(c), none, none, none, none, none, text(error_kind_name(e.kind()))});
        }
    }
    table.summary["failures"] = failures;
    if (failures > 0) {
        raise(table, kTopologyFailure);
    }
    return table;
}

Table cmd_critical(const RunConfig &config) {
    Table table;
    table.columns = {"kind", "c", "theta", "metric", "flag"};
    Cell none;
    auto [lo, hi] = parse_interval(config.bracket, false);
    try {
        CriticalStrength root = critical_strength(lo, hi);
        table.rows.push_back(
            {text("postselected_root"), real(root.c), real(kPi / 2), real(root.probability), text("")});
        table.summary["postselected_root"] = root.c;
        table.summary["probability_at_root"] = root.probability;
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::no_bracket && e.kind() != ErrorKind::invalid_argument) {
            throw;
        }
        table.rows.push_back({text("postselected_root"), none, none, none, text(error_kind_name(e.kind()))});
        table.notes.push_back(e.what());
        raise(table, kSearchFailure);
    }

    auto [c_lo, c_hi] = parse_interval(config.search_c, false);
    auto [t_lo, t_hi] = parse_interval(config.search_theta, true);
    CriticalSearchOptions options;
    options.n_steps = config.n_steps;
    try {
        CriticalPoint p = averaged_critical_point({c_lo, c_hi, t_lo, t_hi}, options);
        table.rows.push_back({text("averaged_point"), real(p.c), real(p.theta), real(p.visibility), text("")});
        table.summary["averaged_c"] = p.c;
        table.summary["averaged_theta"] = p.theta;
        table.summary["visibility"] = p.visibility;
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::no_critical_point) {
            throw;
        }
        table.rows.push_back({text("averaged_point"), none, none, none, text(error_kind_name(e.kind()))});
        table.notes.push_back(e.what());
        raise(table, kSearchFailure);
    }
    return table;
}

Table cmd_interferometer(const RunConfig &config) {
    auto cs = config.c_values();
    auto thetas = config.theta_values();
    auto gammas = config.gamma_values();
    const double i0 = config.i0;
    const double tol = 1e-12 * std::max(1.0, i0);
    Table table;
    table.columns = {"c", "theta", "gamma", "I1", "I2", "flag"};
    Cell none;
    for (double c : cs) {
        for (double theta : thetas) {
            std::optional<MeasurementProtocol> protocol;
            if (config.scheme == "averaged") {
                protocol.emplace(MeasurementProtocol::parallel(c, theta, config.n_steps));
            }
            double p = postselected_closed_form(c, theta).probability;
            for (double gamma : gammas) {
                IntensityPair pair;
                if (config.scheme == "postselected") {
                    pair = postselected_intensities(c, theta, gamma, i0);
                    check_conservation(std::abs(pair.i1 + pair.i2 - i0) <= tol, "I1 + I2 = I0");
                } else if (config.scheme == "polarizer") {
                    pair = polarizer_intensities(c, theta, gamma, i0);
                    check_conservation(
                        std::abs(pair.i1 + pair.i2 - 0.5 * i0 * (1.0 + p)) <= tol, "I1 + I2 = I0 (1 + P) / 2");
                } else {
                    try {
                        pair = averaged_intensities(*protocol, gamma, i0);
                    } catch (const Error &e) {
                        if (e.kind() != ErrorKind::visibility_zero) {
                            throw;
                        }
                        table.rows.push_back({real(c), real(theta), real(gamma), none, none, text("visibility-zero")});
                        raise(table, kPartial);
                        continue;
                    }
                    check_conservation(pair.i1 >= -tol && pair.i2 >= -tol, "|interference| <= incoherent term");
                }
                table.rows.push_back({real(c), real(theta), real(gamma), real(pair.i1), real(pair.i2), text("")});
            }
        }
    }
    table.summary["scheme"] = config.scheme;
    table.summary["rows"] = int64_t(table.rows.size());
    return table;
}

Table run_command(const RunConfig &config) {
    config.validate();
    if (config.command == "postselected") {
        return cmd_postselected(config);
    }
    if (config.command == "distribution") {
        return cmd_distribution(config);
    }
    if (config.command == "chern") {
        return cmd_chern(config);
    }
    if (config.command == "critical") {
        return cmd_critical(config);
    }
    if (config.command == "interferometer") {
        return cmd_interferometer(config);
    }
    throw Error(ErrorKind::invalid_argument, "unknown command '" + config.command + "'");
}

}  // namespace geophase::cli
