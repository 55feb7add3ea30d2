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

#include <cmath>
#include <cstdio>
#include <regex>

#include "cli.h"
#include "geophase/error.h"
#include "geophase/qubit.h"
#include "geophase/version.h"

namespace geophase::cli {

namespace {

[[noreturn]] void bad(const std::string &message) {
    throw Error(ErrorKind::invalid_argument, message);
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

nlohmann::ordered_json cell_json(const Cell &cell) {
    if (const auto *d = std::get_if<double>(&cell)) {
        return std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
    }
    if (const auto *i = std::get_if<int64_t>(&cell)) {
        return *i;
    }
    if (const auto *s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    return nullptr;
}

std::string cell_text(const Cell &cell) {
    if (const auto *d = std::get_if<double>(&cell)) {
        return format_real(*d);
    }
    if (const auto *i = std::get_if<int64_t>(&cell)) {
        return std::to_string(*i);
    }
    if (const auto *s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    return "";
}

}  // namespace

double parse_real(const std::string &text) {
    size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception &) {
        bad("not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(value)) {
        bad("not a finite number: '" + text + "'");
    }
    return value;
}

double parse_angle(const std::string &text) {
    static const std::regex pattern(R"(^\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*((?:\d+\.?\d*|\.\d+)))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) {
        return parse_real(text);
    }
    double value = kPi;
    if (m[2].matched) {
        value *= std::stod(m[2].str());
    }
    if (m[3].matched) {
        double d = std::stod(m[3].str());
        if (d == 0.0) {
            bad("division by zero in angle '" + text + "'");
        }
        value /= d;
    }
    return m[1].str() == "-" ? -value : value;
}

std::vector<double> parse_range(const std::string &text, bool angles) {
    auto parts = split(text, ':');
    if (parts.size() != 3) {
        bad("range must be start:stop:count, got '" + text + "'");
    }
    double start = angles ? parse_angle(parts[0]) : parse_real(parts[0]);
    double stop = angles ? parse_angle(parts[1]) : parse_real(parts[1]);
    double count_real = parse_real(parts[2]);
    if (count_real < 1 || count_real != std::floor(count_real) || count_real > 1e7) {
        bad("range count must be a positive integer, got '" + parts[2] + "'");
    }
    auto count = size_t(count_real);
    if (stop < start) {
        bad("range '" + text + "' is not ascending");
    }
    if (count == 1) {
        if (start != stop) {
            bad("a one-point range needs start = stop");
        }
        return {start};
    }
    std::vector<double> out(count);
    for (size_t i = 0; i < count; i++) {
        out[i] = i + 1 == count ? stop : start + (stop - start) * double(i) / double(count - 1);
    }
    return out;
}

std::pair<double, double> parse_interval(const std::string &text, bool angles) {
    auto parts = split(text, ':');
    if (parts.size() != 2) {
        bad("interval must be lo:hi, got '" + text + "'");
    }
    double lo = angles ? parse_angle(parts[0]) : parse_real(parts[0]);
    double hi = angles ? parse_angle(parts[1]) : parse_real(parts[1]);
    return {lo, hi};
}

std::vector<double> RunConfig::c_values() const {
    return c_range.empty() ? std::vector<double>{parse_real(c)} : parse_range(c_range, false);
}

std::vector<double> RunConfig::theta_values() const {
    return theta_range.empty() ? std::vector<double>{parse_angle(theta)} : parse_range(theta_range, true);
}

std::vector<double> RunConfig::gamma_values() const {
    return gamma_range.empty() ? std::vector<double>{parse_angle(gamma)} : parse_range(gamma_range, true);
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("command", command);
    out.emplace_back(c_range.empty() ? "c" : "c-range", c_range.empty() ? c : c_range);
    out.emplace_back(theta_range.empty() ? "theta" : "theta-range", theta_range.empty() ? theta : theta_range);
    out.emplace_back(gamma_range.empty() ? "gamma" : "gamma-range", gamma_range.empty() ? gamma : gamma_range);
    out.emplace_back("N", std::to_string(n_steps));
    out.emplace_back("realizations", std::to_string(realizations));
    out.emplace_back("seed", std::to_string(seed));
    out.emplace_back("bins", std::to_string(bins));
    out.emplace_back("I0", format_real(i0));
    out.emplace_back("scheme", scheme);
    out.emplace_back("estimator", estimator);
    out.emplace_back("grid", std::to_string(grid_n));
    out.emplace_back("bracket", bracket);
    out.emplace_back("search-c", search_c);
    out.emplace_back("search-theta", search_theta);
    out.emplace_back("format", format);
    return out;
}

void RunConfig::validate() const {
    for (double c : c_values()) {
        if (c < 0.0) {
            bad("c must be non-negative");
        }
    }
    for (double t : theta_values()) {
        if (t < 0.0 || t > kPi) {
            bad("theta must lie in [0, pi]");
        }
    }
    gamma_values();
    if (n_steps < 3) {
        bad("N must be at least 3");
    }
    if (!(i0 > 0.0)) {
        bad("I0 must be positive");
    }
    if (format != "csv" && format != "json") {
        bad("format must be csv or json");
    }
    if (scheme != "postselected" && scheme != "polarizer" && scheme != "averaged") {
        bad("scheme must be postselected, polarizer or averaged");
    }
    if (estimator != "sampled" && estimator != "conditional") {
        bad("estimator must be sampled or conditional");
    }
    if (command == "distribution" && realizations < 100) {
        bad("distribution needs at least 100 realizations");
    }
    if (command == "distribution" && bins < 8) {
        bad("distribution needs at least 8 bins");
    }
}

std::string format_real(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_csv(std::ostream &out, const RunConfig &config, const Table &table) {
    out << "# geophase " << GEOPHASE_VERSION << "\n";
    for (const auto &[key, value] : config.echo()) {
        out << "# " << key << "=" << value << "\n";
    }
    for (const auto &note : table.notes) {
        out << "# " << note << "\n";
    }
    for (size_t i = 0; i < table.columns.size(); i++) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    for (const auto &row : table.rows) {
        for (size_t i = 0; i < row.size(); i++) {
            out << (i ? "," : "") << cell_text(row[i]);
        }
        out << "\n";
    }
}

void write_json(std::ostream &out, const RunConfig &config, const Table &table) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["version"] = GEOPHASE_VERSION;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto &[key, value] : config.echo()) {
        cfg[key] = value;
    }
    doc["config"] = cfg;
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (size_t i = 0; i < row.size(); i++) {
            r[table.columns[i]] = cell_json(row[i]);
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["summary"] = table.summary;
    doc["notes"] = table.notes;
    out << doc.dump(2) << "\n";
}

}  // namespace geophase::cli
