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

#ifndef MOMLAB_BIT_MATRIX_H
#define MOMLAB_BIT_MATRIX_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "momlab/bit_vector.h"

namespace momlab {

/// Dense GF(2) matrix, row-major, each row padded to whole 64-bit words.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), stride_(words_for_bits(cols)), data_(rows * words_for_bits(cols), 0) {
    }

    /// Builds a matrix from text rows like "110". All rows must have equal length.
    static BitMatrix from_rows(const std::vector<std::string> &rows);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    size_t stride() const {
        return stride_;
    }

    std::span<uint64_t> row(size_t r) {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<const uint64_t> row(size_t r) const {
        return {data_.data() + r * stride_, stride_};
    }

    bool get(size_t r, size_t c) const {
        return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1;
    }
    void set(size_t r, size_t c, bool value) {
        uint64_t mask = uint64_t{1} << (c % kWordBits);
        uint64_t &w = data_[r * stride_ + c / kWordBits];
        w = value ? (w | mask) : (w & ~mask);
    }

    void xor_row_into(size_t src, size_t dst) {
        uint64_t *d = data_.data() + dst * stride_;
        const uint64_t *s = data_.data() + src * stride_;
        for (size_t w = 0; w < stride_; w++) {
            d[w] ^= s[w];
        }
    }
    void swap_rows(size_t a, size_t b);

    /// Appends a row given as words; the span must have `stride()` words.
    void push_row(std::span<const uint64_t> words);

    BitVector row_vector(size_t r) const;

    /// Matrix-vector product over GF(2); `v` has `cols()` bits.
    BitVector multiply(const BitVector &v) const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

size_t gf2_rank(BitMatrix m);

/// Basis of {v : m v = 0}; has cols - rank entries.
std::vector<BitVector> gf2_kernel(const BitMatrix &m);

/// Column-ordered row reduction. Entry c of the result is the rank of the
/// submatrix made of columns 0..c.
std::vector<size_t> gf2_prefix_ranks(BitMatrix m);

/// Finds a subset of rows whose XOR equals `target`, returned as a bit mask
/// over rows, or nullopt when `target` is outside the row space.
std::optional<BitVector> gf2_row_combination(const BitMatrix &m, const BitVector &target);

}  // namespace momlab

#endif
