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
#include <string>

#include "geophase/error.h"
#include "geophase/parallel.h"
#include "geophase/phase.h"
#include "geophase/protocol.h"
#include "geophase/topology.h"

namespace geophase {

namespace {

struct StripFlux {
    double flux = 0.0;
    double max_abs = 0.0;
};

void check_options(double c, const PlaquetteOptions &options) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw Error(ErrorKind::invalid_argument, "integrated strength c must be finite and non-negative");
    }
    if (options.grid_n < 64) {
        throw Error(ErrorKind::invalid_argument, "plaquette grid needs grid_n >= 64");
    }
}

double row_theta(int j, int grid_n) {
    return j == grid_n ? kPi : kPi * j / grid_n;
}

// |psi_theta(t)> around one loop: the N measured all-plus states, then
// grid_n points on the geodesic from |psi_{N-1}> back to |psi_0>.
std::vector<Spinor> row_states(double c, double theta, const PlaquetteOptions &options) {
    auto protocol = MeasurementProtocol::parallel(c, theta, options.n_steps);
    auto states = all_plus_states(protocol);
    std::vector<Spinor> out;
    out.reserve(states.size() + size_t(options.grid_n));
    for (const auto &s : states) {
        out.push_back(s.spinor());
    }
    BlochPoint from = bloch_coords(states.back());
    BlochPoint to = bloch_coords(states.front());
    for (int g = 1; g <= options.grid_n; g++) {
        out.push_back(geodesic_interpolate(from, to, double(g) / (options.grid_n + 1)).spinor());
    }
    return out;
}

StripFlux strip_flux(const std::vector<Spinor> &a, const std::vector<Spinor> &b, int strip) {
    StripFlux out;
    const size_t n = a.size();
    for (size_t i = 0; i < n; i++) {
        size_t k = (i + 1) % n;
        cplx loop = inner(b[k], b[i]) * inner(b[i], a[i]) * inner(a[i], a[k]) * inner(a[k], b[k]);
        if (std::abs(loop) < 1e-12) {
            throw Error(
                ErrorKind::grid_too_coarse,
                "plaquette " + std::to_string(i) + " of strip " + std::to_string(strip) +
                    " has orthogonal corners; increase grid_n");
        }
        double f = std::arg(loop);
        out.flux += f;
        out.max_abs = std::max(out.max_abs, std::abs(f));
    }
    return out;
}

std::vector<StripFlux> strips_parallel(double c, const PlaquetteOptions &options) {
    check_options(c, options);
    const int g = options.grid_n;
    std::vector<std::vector<Spinor>> rows(static_cast<size_t>(g) + 1);
    parallel_for(g + 1, [&](int64_t j) {
        rows[size_t(j)] = row_states(c, row_theta(int(j), g), options);
    });
    std::vector<StripFlux> out(static_cast<size_t>(g));
    parallel_for(g, [&](int64_t j) {
        out[size_t(j)] = strip_flux(rows[size_t(j)], rows[size_t(j) + 1], int(j));
    });
    return out;
}

std::vector<StripFlux> strips_serial(double c, const PlaquetteOptions &options) {
    check_options(c, options);
    const int g = options.grid_n;
    std::vector<StripFlux> out;
    out.reserve(size_t(g));
    auto lower = row_states(c, row_theta(0, g), options);
    for (int j = 0; j < g; j++) {
        auto upper = row_states(c, row_theta(j + 1, g), options);
        out.push_back(strip_flux(lower, upper, j));
        lower = std::move(upper);
    }
    return out;
}

std::vector<double> flux_only(const std::vector<StripFlux> &strips) {
    std::vector<double> out;
    out.reserve(strips.size());
    for (const auto &s : strips) {
        out.push_back(s.flux);
    }
    return out;
}

}  // namespace

std::vector<double> plaquette_strip_flux(double c, const PlaquetteOptions &options) {
    return flux_only(strips_parallel(c, options));
}

namespace reference {

std::vector<double> plaquette_strip_flux(double c, const PlaquetteOptions &options) {
    return flux_only(strips_serial(c, options));
}

}  // namespace reference

ChernResult chern_via_curvature(double c, const PlaquetteOptions &options) {
    auto strips = strips_parallel(c, options);
    ChernResult out;
    for (const auto &s : strips) {
        out.total_flux += s.flux;
        out.max_plaquette_flux = std::max(out.max_plaquette_flux, s.max_abs);
    }
    if (out.max_plaquette_flux > options.max_flux) {
        throw Error(
            ErrorKind::grid_too_coarse,
            "largest plaquette flux " + std::to_string(out.max_plaquette_flux) + " exceeds " +
                std::to_string(options.max_flux) + "; increase grid_n or n_steps");
    }
    out.raw = out.total_flux / kTwoPi;
    out.chern = int(std::lround(out.raw));
    out.residual = std::abs(out.raw - out.chern);
    out.reliable = out.residual < 0.05;
    return out;
}

}  // namespace geophase
