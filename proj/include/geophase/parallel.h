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
#include <exception>

namespace geophase {

/// Threads used by the OpenMP kernels. 0 restores the OpenMP default.
void set_thread_count(int threads);
int thread_count();

/// Runs fn(i) for i in [0, n) on the OpenMP team. If any call throws, the
/// exception from the lowest index is rethrown after the loop.
template <typename Fn>
void parallel_for(int64_t n, Fn &&fn) {
    std::exception_ptr first;
    int64_t first_index = n;
#pragma omp parallel for schedule(dynamic)
    for (int64_t i = 0; i < n; i++) {
        try {
            fn(i);
        } catch (...) {
#pragma omp critical(geophase_parallel_for)
            if (i < first_index) {
                first_index = i;
                first = std::current_exception();
            }
        }
    }
    if (first) {
        std::rethrow_exception(first);
    }
}

}  // namespace geophase
