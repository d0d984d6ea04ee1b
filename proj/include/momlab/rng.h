// Copyright 2026 The momlab Authors
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

#ifndef MOMLAB_RNG_H
#define MOMLAB_RNG_H

#include <cstdint>
#include <limits>

namespace momlab {

inline constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream. Output k of stream (seed, index) is
/// mix64(key + (k + 1) * golden) with key = mix64(seed ^ mix64(index + c)),
/// so trajectory i's stream depends only on (seed, i). All derived draws use
/// integer arithmetic only, keeping results identical across platforms.
class RandomStream {
   public:
    using result_type = uint64_t;

    RandomStream(uint64_t base_seed, uint64_t stream_index)
        : key_(mix64(base_seed ^ mix64(stream_index + 0x632BE59BD9B4E019ULL))) {
    }

    /// An independent child stream, e.g. to decouple schedules from outcomes.
    RandomStream substream(uint64_t tag) const {
        return RandomStream(key_, tag + 0xD1B54A32D192ED03ULL);
    }

    static constexpr uint64_t min() {
        return 0;
    }
    static constexpr uint64_t max() {
        return std::numeric_limits<uint64_t>::max();
    }
    uint64_t operator()() {
        return next_u64();
    }

    uint64_t next_u64() {
        counter_++;
        return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool coin() {
        return next_u64() >> 63;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    /// Uniform integer in [0, n), n > 0 (Lemire's multiply-shift method).
    uint64_t below(uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        uint64_t low = static_cast<uint64_t>(m);
        if (low < n) {
            uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                low = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    uint64_t counter() const {
        return counter_;
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace momlab

#endif
