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

#ifndef MOMLAB_BIT_VECTOR_H
#define MOMLAB_BIT_VECTOR_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace momlab {

inline constexpr size_t kWordBits = 64;

constexpr size_t words_for_bits(size_t num_bits) {
    return (num_bits + kWordBits - 1) / kWordBits;
}

/// Fixed-length bit vector packed into 64-bit words. Bits past `size()` in the
/// last word are always zero.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : num_bits_(num_bits), words_(words_for_bits(num_bits), 0) {
    }

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }

    bool get(size_t k) const {
        return (words_[k / kWordBits] >> (k % kWordBits)) & 1;
    }
    void set(size_t k, bool value) {
        uint64_t mask = uint64_t{1} << (k % kWordBits);
        if (value) {
            words_[k / kWordBits] |= mask;
        } else {
            words_[k / kWordBits] &= ~mask;
        }
    }
    void flip(size_t k) {
        words_[k / kWordBits] ^= uint64_t{1} << (k % kWordBits);
    }

    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }

    bool any() const {
        for (uint64_t w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    size_t popcount() const {
        size_t total = 0;
        for (uint64_t w : words_) {
            total += std::popcount(w);
        }
        return total;
    }

    BitVector &operator^=(const BitVector &other) {
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }

    bool operator==(const BitVector &other) const = default;

    /// "0110..." with bit 0 first.
    std::string str() const {
        std::string out(num_bits_, '0');
        for (size_t k = 0; k < num_bits_; k++) {
            if (get(k)) {
                out[k] = '1';
            }
        }
        return out;
    }

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Parity of the AND of two equal-length word spans.
inline bool dot_parity(std::span<const uint64_t> a, std::span<const uint64_t> b) {
    uint64_t acc = 0;
    for (size_t w = 0; w < a.size(); w++) {
        acc ^= a[w] & b[w];
    }
    return std::popcount(acc) & 1;
}

}  // namespace momlab

#endif
