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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli.h"
#include "geophase/error.h"
#include "geophase/parallel.h"
#include "geophase/version.h"

namespace geophase::cli {

namespace {

void add_options(CLI::App &app, RunConfig &cfg) {
    auto *c = app.add_option("--c", cfg.c, "integrated measurement strength")->capture_default_str();
    auto *c_range = app.add_option("--c-range", cfg.c_range, "strength sweep start:stop:count (inclusive)");
    c->excludes(c_range);
    auto *theta = app.add_option("--theta", cfg.theta, "polar angle, radians or a multiple of pi (pi/4, 3pi/4)")
                      ->capture_default_str();
    auto *theta_range = app.add_option("--theta-range", cfg.theta_range, "polar angle sweep start:stop:count");
    theta->excludes(theta_range);
    auto *gamma = app.add_option("--gamma", cfg.gamma, "reference-arm phase")->capture_default_str();
    auto *gamma_range = app.add_option("--gamma-range", cfg.gamma_range, "reference-arm phase sweep start:stop:count");
    gamma->excludes(gamma_range);
    app.add_option("-N,--steps", cfg.n_steps, "measurements per sequence (>= 3)")->capture_default_str();
    app.add_option("--realizations", cfg.realizations, "Monte Carlo realizations")->capture_default_str();
    app.add_option("--seed", cfg.seed, "64-bit master seed")->capture_default_str();
    app.add_option("--bins", cfg.bins, "histogram bins over (-pi, pi]")->capture_default_str();
    app.add_option("--I0", cfg.i0, "input intensity")->capture_default_str();
    app.add_option("--scheme", cfg.scheme, "interferometer scheme")
        ->check(CLI::IsMember({"postselected", "polarizer", "averaged"}))
        ->capture_default_str();
    app.add_option("--estimator", cfg.estimator, "Monte Carlo estimator")
        ->check(CLI::IsMember({"sampled", "conditional"}))
        ->capture_default_str();
    app.add_option("--grid", cfg.grid_n, "plaquette grid per axis (>= 64)")->capture_default_str();
    app.add_option("--bracket", cfg.bracket, "bisection bracket lo:hi for the postselected critical strength")
        ->capture_default_str();
    app.add_option("--search-c", cfg.search_c, "averaged critical point search range in c, lo:hi")
        ->capture_default_str();
    app.add_option("--search-theta", cfg.search_theta, "averaged critical point search range in theta, lo:hi")
        ->capture_default_str();
    app.add_option("-o,--output", cfg.output, "output file (default: stdout)");
    app.add_option("--output-dir", cfg.output_dir, "directory for relative --output paths")
        ->envname("GEOPHASE_OUTPUT_DIR");
    app.add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads, 0 = OpenMP default")
        ->envname("GEOPHASE_THREADS")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

int exit_code_for(const Error &e) {
    switch (e.kind()) {
        case ErrorKind::near_critical:
        case ErrorKind::phase_undefined_at:
        case ErrorKind::grid_too_coarse:
            return kTopologyFailure;
        case ErrorKind::no_bracket:
        case ErrorKind::no_critical_point:
            return kSearchFailure;
        case ErrorKind::visibility_zero:
        case ErrorKind::undefined_phase:
            return kPartial;
        default:
            return kUsage;
    }
}

}  // namespace

int main_impl(int argc, char **argv) {
    CLI::App app{"geophase " GEOPHASE_VERSION ": geometric phases induced by sequences of weak measurements"};
    app.set_config("--config", "", "key=value file; command-line flags override it");
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 usage, 2 partial (flagged points), 3 topology failure, 4 search failure.\n"
        "Environment: GEOPHASE_OUTPUT_DIR (directory for relative outputs), GEOPHASE_THREADS (thread count).");
    RunConfig cfg;
    add_options(app, cfg);
    const std::pair<const char *, const char *> commands[] = {
        {"postselected", "all-plus phase and probability from the quasicontinuous closed form"},
        {"distribution", "Monte Carlo phase histogram and averaged phase"},
        {"chern", "Chern number by endpoint unfolding and by plaquette flux"},
        {"critical", "postselected critical strength and averaged critical point"},
        {"interferometer", "drain intensities over a gamma sweep"},
    };
    for (const auto &[name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    Table table;
    try {
        set_thread_count(cfg.threads);
        table = run_command(cfg);
    } catch (const Error &e) {
        std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    std::ostringstream body;
    if (cfg.format == "json") {
        write_json(body, cfg, table);
    } else {
        write_csv(body, cfg, table);
    }
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << body.str();
    } else {
        std::filesystem::path path(cfg.output);
        if (path.is_relative() && !cfg.output_dir.empty()) {
            path = std::filesystem::path(cfg.output_dir) / path;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write " << path << "\n";
            return kUsage;
        }
        file << body.str();
    }
    for (const auto &note : table.notes) {
        std::cerr << "note: " << note << "\n";
    }
    return table.exit_code;
}

}  // namespace geophase::cli
