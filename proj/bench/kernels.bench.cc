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

// Serial reference kernels against their OpenMP counterparts. The parallel
// variants take the thread count from the benchmark argument.

#include <vector>

#include "benchmark/benchmark.h"
#include "geophase/parallel.h"
#include "geophase/topology.h"
#include "geophase/trajectory.h"

using namespace geophase;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; i++) {
        out.push_back(lo + (hi - lo) * i / (n - 1));
    }
    return out;
}

void realizations_serial(benchmark::State &state) {
    auto p = MeasurementProtocol::parallel(1.0, kPi / 4, 500);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::run_realizations(p, 2000, 1, Estimator::sampled_final));
    }
    state.SetItemsProcessed(state.iterations() * 2000);
}

void realizations_parallel(benchmark::State &state) {
    set_thread_count(int(state.range(0)));
    auto p = MeasurementProtocol::parallel(1.0, kPi / 4, 500);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_realizations(p, 2000, 1, Estimator::sampled_final));
    }
    state.SetItemsProcessed(state.iterations() * 2000);
    set_thread_count(0);
}

void strips_serial(benchmark::State &state) {
    PlaquetteOptions o;
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::plaquette_strip_flux(3.0, o));
    }
}

void strips_parallel(benchmark::State &state) {
    set_thread_count(int(state.range(0)));
    PlaquetteOptions o;
    for (auto _ : state) {
        benchmark::DoNotOptimize(plaquette_strip_flux(3.0, o));
    }
    set_thread_count(0);
}

void grid_serial(benchmark::State &state) {
    auto cs = linspace(2.5, 4.5, 41);
    auto ts = linspace(0.5, 1.5, 41);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::visibility_grid(cs, ts, 500));
    }
}

void grid_parallel(benchmark::State &state) {
    set_thread_count(int(state.range(0)));
    auto cs = linspace(2.5, 4.5, 41);
    auto ts = linspace(0.5, 1.5, 41);
    for (auto _ : state) {
        benchmark::DoNotOptimize(visibility_grid(cs, ts, 500));
    }
    set_thread_count(0);
}

}  // namespace

BENCHMARK(realizations_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(realizations_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(strips_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(strips_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(grid_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(grid_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
