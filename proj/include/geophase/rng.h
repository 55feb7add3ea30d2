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

namespace geophase {

/// Counter-based stream: the k-th draw of stream (seed, index) is a SplitMix64
/// finalizer applied to key(seed, index) + k * golden-gamma. Streams for
/// different realization indices are independent of evaluation order, which
/// is what makes the parallel ensembles reproducible.
class CounterRng {
   public:
    CounterRng(uint64_t master_seed, uint64_t stream_index);

    uint64_t next_u64();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    uint64_t key() const {
        return key_;
    }
    uint64_t counter() const {
        return counter_;
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

/// The SplitMix64 output function.
uint64_t mix64(uint64_t x);

}  // namespace geophase
