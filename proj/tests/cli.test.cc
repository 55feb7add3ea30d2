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

#include "cli.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "geophase/error.h"
#include "geophase/qubit.h"
#include "gtest/gtest.h"
#include "json.hpp"

using namespace geophase;
using namespace geophase::cli;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string &args, const std::string &env = "") {
    std::string command = env + " " + GEOPHASE_CLI_PATH + " " + args + " 2>/dev/null";
    FILE *pipe = popen(command.c_str(), "r");
    RunResult result;
    char buffer[4096];
    size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.out.append(buffer, n);
    }
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> data_lines(const std::string &csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            out.push_back(line);
        }
    }
    return out;
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("geophase_cli_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(parse, angles) {
    ASSERT_DOUBLE_EQ(parse_angle("pi"), kPi);
    ASSERT_DOUBLE_EQ(parse_angle("pi/4"), kPi / 4);
    ASSERT_DOUBLE_EQ(parse_angle("3pi/4"), 3 * kPi / 4);
    ASSERT_DOUBLE_EQ(parse_angle("-pi/2"), -kPi / 2);
    ASSERT_DOUBLE_EQ(parse_angle("0.25"), 0.25);
    ASSERT_DOUBLE_EQ(parse_angle("2*pi"), kTwoPi);
    ASSERT_THROW(parse_angle("pie"), Error);
    ASSERT_THROW(parse_real("pi"), Error);
    ASSERT_THROW(parse_real("1.5x"), Error);
}

TEST(parse, ranges) {
    auto r = parse_range("0:pi:5", true);
    ASSERT_EQ(r.size(), 5u);
    ASSERT_EQ(r.front(), 0.0);
    ASSERT_DOUBLE_EQ(r.back(), kPi);
    ASSERT_DOUBLE_EQ(r[2], kPi / 2);
    ASSERT_EQ(parse_range("2:2:1", false), std::vector<double>{2.0});
    ASSERT_THROW(parse_range("0:1", false), Error);
    ASSERT_THROW(parse_range("0:1:0", false), Error);
    auto iv = parse_interval("2.5:4.5", false);
    ASSERT_EQ(iv.first, 2.5);
    ASSERT_EQ(iv.second, 4.5);
}

TEST(config, validation) {
    RunConfig ok;
    ok.command = "postselected";
    ASSERT_NO_THROW(ok.validate());
    RunConfig bad = ok;
    bad.theta = "4";
    ASSERT_THROW(bad.validate(), Error);
    bad = ok;
    bad.n_steps = 2;
    ASSERT_THROW(bad.validate(), Error);
    bad = ok;
    bad.c = "-1";
    ASSERT_THROW(bad.validate(), Error);
    bad = ok;
    bad.command = "distribution";
    bad.bins = 4;
    ASSERT_THROW(bad.validate(), Error);
    bad = ok;
    bad.i0 = 0.0;
    ASSERT_THROW(bad.validate(), Error);
}

TEST(format, reals_round_trip) {
    for (double x : {kPi, -0.1, 1e-300, 2.0 / 3.0}) {
        ASSERT_EQ(std::stod(format_real(x)), x);
    }
}

TEST(binary, postselected_equator_above_critical) {
    RunResult r = run("postselected --c 3 --theta pi/2");
    ASSERT_EQ(r.exit_code, 0);
    auto lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 2u);
    auto header = split(lines[0]);
    auto row = split(lines[1]);
    ASSERT_EQ(header[3], "chi");
    ASSERT_EQ(header[4], "chi_unfolded");
    ASSERT_NEAR(std::stod(row[4]), -kPi, 1e-9);
}

TEST(binary, exit_codes) {
    ASSERT_EQ(run("").exit_code, kUsage);
    ASSERT_EQ(run("bogus").exit_code, kUsage);
    ASSERT_EQ(run("postselected --theta 4").exit_code, kUsage);
    ASSERT_EQ(run("postselected --steps 2").exit_code, kUsage);
    ASSERT_EQ(run("postselected --c 2.1251444108929718 --theta-range 0:pi:11").exit_code, kPartial);
    ASSERT_EQ(run("chern --c 2.1251444108929718").exit_code, kTopologyFailure);
    ASSERT_EQ(run("critical --search-c 0.4:0.6").exit_code, kSearchFailure);
    ASSERT_EQ(run("critical --bracket 3:4").exit_code, kSearchFailure);
    ASSERT_EQ(run("interferometer --c 1 --gamma-range 0:2pi:5").exit_code, kOk);
}

TEST(binary, header_echoes_configuration) {
    RunResult r = run("distribution --c 0.5 --realizations 200 --seed 9");
    ASSERT_EQ(r.exit_code, 0);
    ASSERT_EQ(r.out.rfind("# geophase ", 0), 0u);
    ASSERT_NE(r.out.find("# seed=9\n"), std::string::npos);
    ASSERT_NE(r.out.find("# realizations=200\n"), std::string::npos);
    ASSERT_EQ(r.out.find("threads"), std::string::npos);
}

TEST(binary, output_is_independent_of_thread_count) {
    std::string args = "distribution --c 1 --theta pi/3 --realizations 600 --seed 4 --bins 32";
    RunResult one = run(args, "GEOPHASE_THREADS=1");
    RunResult four = run(args, "GEOPHASE_THREADS=4");
    ASSERT_EQ(one.exit_code, 0);
    ASSERT_EQ(one.out, four.out);
    ASSERT_EQ(one.out, run(args, "GEOPHASE_THREADS=4").out);
}

TEST(binary, config_file_with_override) {
    auto dir = scratch_dir("config");
    auto path = dir / "run.ini";
    std::ofstream(path) << "c=3\ntheta=pi/2\nsteps=400\n";
    RunResult from_file = run("postselected --config " + path.string());
    ASSERT_EQ(from_file.exit_code, 0);
    ASSERT_NE(from_file.out.find("# c=3\n"), std::string::npos);
    ASSERT_NE(from_file.out.find("# N=400\n"), std::string::npos);
    RunResult overridden = run("postselected --config " + path.string() + " --c 1");
    ASSERT_NE(overridden.out.find("# c=1\n"), std::string::npos);
    ASSERT_NE(overridden.out.find("# theta=pi/2\n"), std::string::npos);
}

TEST(binary, json_schema) {
    RunResult r = run("interferometer --c 1 --theta pi/4 --gamma-range 0:pi:3 --format json");
    ASSERT_EQ(r.exit_code, 0);
    auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["schema"], 1);
    ASSERT_TRUE(doc.contains("version"));
    ASSERT_EQ(doc["config"]["scheme"], "postselected");
    auto columns = doc["columns"].get<std::vector<std::string>>();
    ASSERT_EQ(columns[3], "I1");
    ASSERT_EQ(doc["rows"].size(), 3u);
    for (const auto &row : doc["rows"]) {
        ASSERT_NEAR(row["I1"].get<double>() + row["I2"].get<double>(), 1.0, 1e-12);
    }
}

TEST(binary, output_dir_from_environment) {
    auto dir = scratch_dir("outdir");
    RunResult r = run("chern --c 3 -o chern.csv", "GEOPHASE_OUTPUT_DIR=" + dir.string());
    ASSERT_EQ(r.exit_code, 0);
    ASSERT_TRUE(r.out.empty());
    std::ifstream in(dir / "chern.csv");
    std::stringstream content;
    content << in.rdbuf();
    auto lines = data_lines(content.str());
    ASSERT_EQ(lines.size(), 2u);
    auto row = split(lines[1]);
    ASSERT_EQ(row[1], "-1");
    ASSERT_EQ(row[2], "-1");
}
