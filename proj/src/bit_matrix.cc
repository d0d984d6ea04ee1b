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

#include "momlab/bit_matrix.h"

#include <stdexcept>
#include <string>

namespace momlab {

BitMatrix BitMatrix::from_rows(const std::vector<std::string> &rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    BitMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("ragged bit matrix rows");
        }
        for (size_t c = 0; c < cols; c++) {
            m.set(r, c, rows[r][c] == '1');
        }
    }
    return m;
}

void BitMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    uint64_t *pa = data_.data() + a * stride_;
    uint64_t *pb = data_.data() + b * stride_;
    for (size_t w = 0; w < stride_; w++) {
        std::swap(pa[w], pb[w]);
    }
}

void BitMatrix::push_row(std::span<const uint64_t> words) {
    data_.insert(data_.end(), words.begin(), words.begin() + stride_);
    rows_++;
}

BitVector BitMatrix::row_vector(size_t r) const {
    BitVector v(cols_);
    auto src = row(r);
    auto dst = v.words();
    for (size_t w = 0; w < stride_; w++) {
        dst[w] = src[w];
    }
    return v;
}

BitVector BitMatrix::multiply(const BitVector &v) const {
    BitVector out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        if (dot_parity(row(r), v.words())) {
            out.set(r, true);
        }
    }
    return out;
}

namespace {

// Reduces `m` in place, visiting columns in order. Returns the pivot column of
// each pivot row (rows 0..rank-1). With `full` the pivot columns are also
// cleared above the pivot, giving reduced row echelon form.
std::vector<size_t> row_reduce(BitMatrix &m, bool full, std::vector<size_t> *prefix = nullptr) {
    std::vector<size_t> pivots;
    size_t rank = 0;
    if (prefix) {
        prefix->assign(m.cols(), 0);
    }
    for (size_t c = 0; c < m.cols() && rank < m.rows(); c++) {
        size_t w = c / kWordBits;
        uint64_t mask = uint64_t{1} << (c % kWordBits);
        size_t found = m.rows();
        for (size_t r = rank; r < m.rows(); r++) {
            if (m.row(r)[w] & mask) {
                found = r;
                break;
            }
        }
        if (found != m.rows()) {
            m.swap_rows(found, rank);
            size_t start = full ? 0 : rank + 1;
            for (size_t r = start; r < m.rows(); r++) {
                if (r != rank && (m.row(r)[w] & mask)) {
                    m.xor_row_into(rank, r);
                }
            }
            pivots.push_back(c);
            rank++;
        }
        if (prefix) {
            (*prefix)[c] = rank;
        }
    }
    if (prefix) {
        for (size_t c = 1; c < m.cols(); c++) {
            (*prefix)[c] = std::max((*prefix)[c], (*prefix)[c - 1]);
        }
    }
    return pivots;
}

}  // namespace

size_t gf2_rank(BitMatrix m) {
    return row_reduce(m, false).size();
}

std::vector<size_t> gf2_prefix_ranks(BitMatrix m) {
    std::vector<size_t> prefix;
    row_reduce(m, false, &prefix);
    return prefix;
}

std::vector<BitVector> gf2_kernel(const BitMatrix &m) {
    BitMatrix reduced = m;
    std::vector<size_t> pivots = row_reduce(reduced, true);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<BitVector> basis;
    for (size_t free_col = 0; free_col < m.cols(); free_col++) {
        if (is_pivot[free_col]) {
            continue;
        }
        BitVector v(m.cols());
        v.set(free_col, true);
        for (size_t k = 0; k < pivots.size(); k++) {
            if (reduced.get(k, free_col)) {
                v.set(pivots[k], true);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<BitVector> gf2_row_combination(const BitMatrix &m, const BitVector &target) {
    // Augment each row with an identity block recording which original rows
    // were combined into it.
    size_t n = m.rows();
    BitMatrix aug(n + 1, m.cols() + n + 1);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            if (m.get(r, c)) {
                aug.set(r, c, true);
            }
        }
        aug.set(r, m.cols() + r, true);
    }
    for (size_t c = 0; c < m.cols(); c++) {
        if (target.get(c)) {
            aug.set(n, c, true);
        }
    }
    aug.set(n, m.cols() + n, true);
    // Eliminate the target row against the reduced rows of m.
    size_t rank = 0;
    for (size_t c = 0; c < m.cols() && rank < n; c++) {
        size_t found = n;
        for (size_t r = rank; r < n; r++) {
            if (aug.get(r, c)) {
                found = r;
                break;
            }
        }
        if (found == n) {
            continue;
        }
        aug.swap_rows(found, rank);
        for (size_t r = 0; r <= n; r++) {
            if (r != rank && aug.get(r, c)) {
                aug.xor_row_into(rank, r);
            }
        }
        rank++;
    }
    for (size_t c = 0; c < m.cols(); c++) {
        if (aug.get(n, c)) {
            return std::nullopt;
        }
    }
    BitVector combo(n);
    for (size_t r = 0; r < n; r++) {
        if (aug.get(n, m.cols() + r)) {
            combo.set(r, true);
        }
    }
    return combo;
}

}  // namespace momlab
