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
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace geophase::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kPartial = 2,
    kTopologyFailure = 3,
    kSearchFailure = 4,
};

/// Decimal radians or a multiple of pi: "0.7", "pi", "-pi/2", "3pi/4", "3*pi/4".
double parse_angle(const std::string &text);
/// Plain real number; rejects trailing garbage.
double parse_real(const std::string &text);

/// "start:stop:count", endpoints inclusive. count = 1 requires start = stop.
std::vector<double> parse_range(const std::string &text, bool angles);
/// "lo:hi".
std::pair<double, double> parse_interval(const std::string &text, bool angles);

struct RunConfig {
    std::string command;
    std::string c = "1";
    std::string c_range;
    std::string theta = "pi/4";
    std::string theta_range;
    std::string gamma = "0";
    std::string gamma_range;
    int n_steps = 500;
    uint64_t realizations = 4000;
    uint64_t seed = 0;
    int bins = 64;
    double i0 = 1.0;
    std::string scheme = "postselected";
    std::string estimator = "sampled";
    int grid_n = 128;
    std::string bracket = "1:4";
    std::string search_c = "2.5:4.5";
    std::string search_theta = "0.5:1.5";
    std::string output;
    std::string output_dir;
    std::string format = "csv";
    int threads = 0;

    std::vector<double> c_values() const;
    std::vector<double> theta_values() const;
    std::vector<double> gamma_values() const;
    bool theta_swept() const {
        return !theta_range.empty();
    }
    /// Everything that determines the numbers, in a fixed order. Thread
    /// count and output location are left out so that files compare equal
    /// across them.
    std::vector<std::pair<std::string, std::string>> echo() const;
    /// Throws geophase::Error(invalid_argument) on inconsistent settings.
    void validate() const;
};

using Cell = std::variant<std::monostate, double, int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    /// Extra '#' lines written after the config echo.
    std::vector<std::string> notes;
    int exit_code = kOk;
};

/// %.17g, with "nan" / "inf" spelled out.
std::string format_real(double x);

void write_csv(std::ostream &out, const RunConfig &config, const Table &table);
void write_json(std::ostream &out, const RunConfig &config, const Table &table);

Table cmd_postselected(const RunConfig &config);
Table cmd_distribution(const RunConfig &config);
Table cmd_chern(const RunConfig &config);
Table cmd_critical(const RunConfig &config);
Table cmd_interferometer(const RunConfig &config);

Table run_command(const RunConfig &config);

/// Parses argv, runs, writes the output. Returns the process exit code.
int main_impl(int argc, char **argv);

}  // namespace geophase::cli
