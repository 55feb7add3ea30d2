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

#include "geophase/rng.h"

namespace geophase {

namespace {
constexpr uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;
constexpr uint64_t kStreamSalt = 0xd1b54a32d192ed03ULL;
}  // namespace

uint64_t mix64(uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(uint64_t master_seed, uint64_t stream_index)
    : key_(mix64(mix64(master_seed) ^ (stream_index * kStreamSalt + kGoldenGamma))) {
}

uint64_t CounterRng::next_u64() {
    counter_++;
    return mix64(key_ + counter_ * kGoldenGamma);
}

double CounterRng::uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace geophase
