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

#include "momlab/observables.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "momlab/errors.h"

namespace momlab {

BitMatrix restricted_generator_matrix(const StabilizerTableau &state, std::span<const size_t> sites) {
    const PauliRows &rows = state.generator_rows();
    BitMatrix m(rows.size(), 2 * sites.size());
    for (size_t r = 0; r < rows.size(); r++) {
        auto xs = rows.xs(r);
        auto zs = rows.zs(r);
        auto out = m.row(r);
        for (size_t k = 0; k < sites.size(); k++) {
            size_t s = sites[k];
            uint64_t x = (xs[s / kWordBits] >> (s % kWordBits)) & 1;
            uint64_t z = (zs[s / kWordBits] >> (s % kWordBits)) & 1;
            size_t c = 2 * k;
            out[c / kWordBits] |= (x | (z << 1)) << (c % kWordBits);
        }
    }
    return m;
}

size_t restricted_rank(const StabilizerTableau &state, std::span<const size_t> sites) {
    if (sites.empty() || state.num_generators() == 0) {
        return 0;
    }
    return gf2_rank(restricted_generator_matrix(state, sites));
}

static std::vector<size_t> complement_of(std::span<const size_t> region, size_t n) {
    std::vector<uint8_t> in(n, 0);
    for (size_t s : region) {
        if (s >= n) {
            throw DimensionError("site " + std::to_string(s) + " out of range");
        }
        in[s] = 1;
    }
    std::vector<size_t> out;
    for (size_t s = 0; s < n; s++) {
        if (!in[s]) {
            out.push_back(s);
        }
    }
    return out;
}

size_t subsystem_entropy(const StabilizerTableau &state, std::span<const size_t> region) {
    auto rest = complement_of(region, state.n_sites());
    size_t size_a = state.n_sites() - rest.size();
    return size_a + restricted_rank(state, rest) - state.num_generators();
}

std::vector<size_t> nested_entropies(const StabilizerTableau &state, std::span<const size_t> order) {
    size_t n = state.n_sites();
    if (order.size() != n) {
        throw DimensionError("site order must list every site");
    }
    // Prefix ranks along the reversed order give rank(G) on every complement.
    std::vector<size_t> reversed(order.rbegin(), order.rend());
    std::vector<size_t> prefix;
    if (state.num_generators()) {
        prefix = gf2_prefix_ranks(restricted_generator_matrix(state, reversed));
    } else {
        prefix.assign(2 * n, 0);
    }
    size_t g = state.num_generators();
    std::vector<size_t> out(n + 1);
    for (size_t k = 0; k <= n; k++) {
        size_t rest = n - k;
        size_t rank_rest = rest ? prefix[2 * rest - 1] : 0;
        out[k] = k + rank_rest - g;
    }
    return out;
}

std::vector<size_t> interval_sites(size_t start, size_t len, size_t n_sites) {
    std::vector<size_t> out(len);
    for (size_t k = 0; k < len; k++) {
        out[k] = (start + k) % n_sites;
    }
    return out;
}

std::vector<size_t> interval_entropy_profile(const StabilizerTableau &state, size_t start) {
    auto order = interval_sites(start, state.n_sites(), state.n_sites());
    return nested_entropies(state, order);
}

int tripartite_mutual_information(const StabilizerTableau &state, size_t offset) {
    size_t n = state.n_sites();
    if (n % 4) {
        throw GeometryError("I3 needs a system size divisible by 4, got " + std::to_string(n));
    }
    size_t q = n / 4;
    auto s = [&](size_t block, size_t len) {
        auto sites = interval_sites(offset + block * q, len * q, n);
        return static_cast<int>(subsystem_entropy(state, sites));
    };
    std::vector<size_t> ac = interval_sites(offset, q, n);
    auto c_sites = interval_sites(offset + 2 * q, q, n);
    ac.insert(ac.end(), c_sites.begin(), c_sites.end());
    int s_ac = static_cast<int>(subsystem_entropy(state, ac));
    return s(0, 1) + s(1, 1) + s(2, 1) - s(0, 2) - s(1, 2) - s_ac + s(0, 3);
}

size_t ClippedGauge::straddling(size_t cut) const {
    size_t count = 0;
    for (auto [l, r] : endpoints) {
        count += l < cut && cut <= r;
    }
    return count;
}

namespace {

uint8_t site_bits(const PauliRows &rows, size_t r, size_t s) {
    uint64_t x = (rows.xs(r)[s / kWordBits] >> (s % kWordBits)) & 1;
    uint64_t z = (rows.zs(r)[s / kWordBits] >> (s % kWordBits)) & 1;
    return static_cast<uint8_t>(x | (z << 1));
}

size_t left_end(const PauliRows &rows, size_t r) {
    for (size_t w = 0; w < rows.stride(); w++) {
        uint64_t m = rows.xs(r)[w] | rows.zs(r)[w];
        if (m) {
            return w * kWordBits + std::countr_zero(m);
        }
    }
    return std::numeric_limits<size_t>::max();
}

size_t right_end(const PauliRows &rows, size_t r) {
    for (size_t w = rows.stride(); w-- > 0;) {
        uint64_t m = rows.xs(r)[w] | rows.zs(r)[w];
        if (m) {
            return w * kWordBits + (kWordBits - 1 - std::countl_zero(m));
        }
    }
    return std::numeric_limits<size_t>::max();
}

}  // namespace

ClippedGauge clip(const StabilizerTableau &state) {
    if (!state.is_pure()) {
        throw UnsupportedGaugeError("the clipped gauge needs a pure state; this one has " +
                                    std::to_string(state.num_encoded()) + " encoded qubits");
    }
    size_t n = state.n_sites();
    PauliRows rows = state.generator_rows();

    // Pass 1: row echelon form with site-major column order (x_0, z_0, x_1, ...).
    size_t done = 0;
    for (size_t s = 0; s < n && done < n; s++) {
        for (uint8_t bit : {uint8_t{1}, uint8_t{2}}) {
            size_t pivot = n;
            for (size_t r = done; r < n; r++) {
                if (site_bits(rows, r, s) & bit) {
                    pivot = r;
                    break;
                }
            }
            if (pivot == n) {
                continue;
            }
            rows.swap_rows(pivot, done);
            for (size_t r = done + 1; r < n; r++) {
                if (site_bits(rows, r, s) & bit) {
                    rows.multiply_into(done, r);
                }
            }
            done++;
        }
    }

    // Pass 2: from the right, reduce rows sharing a right endpoint using rows
    // whose left endpoint is not smaller, so left endpoints never move.
    std::vector<size_t> left(n);
    std::vector<std::vector<size_t>> by_right(n);
    for (size_t r = 0; r < n; r++) {
        left[r] = left_end(rows, r);
        by_right[right_end(rows, r)].push_back(r);
    }
    for (size_t s = n; s-- > 0;) {
        auto bucket = by_right[s];
        std::stable_sort(bucket.begin(), bucket.end(), [&](size_t a, size_t b) { return left[a] > left[b]; });
        std::vector<std::pair<size_t, uint8_t>> pivots;
        std::vector<size_t> kept;
        for (size_t r : bucket) {
            uint8_t v = site_bits(rows, r, s);
            if (!pivots.empty() && v == pivots[0].second) {
                rows.multiply_into(pivots[0].first, r);
            } else if (pivots.size() == 2) {
                if (v == pivots[1].second) {
                    rows.multiply_into(pivots[1].first, r);
                } else {
                    rows.multiply_into(pivots[0].first, r);
                    rows.multiply_into(pivots[1].first, r);
                }
            } else {
                pivots.push_back({r, v});
                kept.push_back(r);
                continue;
            }
            size_t new_right = right_end(rows, r);
            if (new_right >= s) {
                throw std::logic_error("clipped gauge reduction did not shrink a generator");
            }
            by_right[new_right].push_back(r);
        }
        by_right[s] = kept;
    }

    ClippedGauge out;
    out.length_histogram.assign(n + 1, 0);
    std::vector<int> endpoint_count(n, 0);
    for (size_t r = 0; r < n; r++) {
        size_t l = left_end(rows, r);
        size_t rr = right_end(rows, r);
        if (l != left[r]) {
            throw std::logic_error("clipped gauge moved a left endpoint");
        }
        out.generators.push_back(rows.get(r));
        out.endpoints.push_back({l, rr});
        out.length_histogram[rr - l + 1]++;
        endpoint_count[l]++;
        endpoint_count[rr]++;
    }
    for (size_t s = 0; s < n; s++) {
        if (endpoint_count[s] != 2) {
            throw std::logic_error("clipped gauge postcondition failed at site " + std::to_string(s));
        }
    }
    return out;
}

bool interval_supports_logical(const StabilizerTableau &state, size_t start, size_t len, bool periodic) {
    size_t n = state.n_sites();
    if (!periodic && start + len > n) {
        throw GeometryError("interval runs past the open chain end");
    }
    auto inside = interval_sites(start, len, n);
    auto outside = interval_sites(start + len, n - len, n);
    size_t g = state.num_generators();
    size_t lhs = 2 * len - restricted_rank(state, inside);
    size_t rhs = g - restricted_rank(state, outside);
    return lhs > rhs;
}

CodeDistance contiguous_code_distance(const StabilizerTableau &state, bool periodic) {
    size_t n = state.n_sites();
    CodeDistance out;
    out.per_site.assign(n, 0);
    if (state.is_pure() || n == 0) {
        return out;
    }
    // reach[a] = smallest len such that [a, a+len) supports a logical, or 0
    // if none fits. Supersets of such intervals support one too, so
    // a + reach[a] is nondecreasing in a and a two-pointer sweep suffices.
    std::vector<size_t> reach(n, 0);
    size_t end = 1;  // exclusive end of the current candidate interval
    for (size_t a = 0; a < n; a++) {
        end = std::max(end, a + 1);
        size_t limit = periodic ? a + n : n;
        while (end <= limit && !interval_supports_logical(state, a, end - a, periodic)) {
            end++;
        }
        if (end > limit) {
            // Nothing fits from here on for an open chain.
            break;
        }
        reach[a] = end - a;
    }
    const size_t none = std::numeric_limits<size_t>::max();
    size_t total = 0;
    out.min = none;
    for (size_t x = 0; x < n; x++) {
        size_t best = none;
        // Intervals starting at a (a <= x, or wrapping for periodic chains).
        size_t span = periodic ? n : x + 1;
        for (size_t back = 0; back < span; back++) {
            size_t a = (x + n - back) % n;
            if (!reach[a]) {
                continue;
            }
            size_t len = std::max(reach[a], back + 1);
            if (len <= (periodic ? n : n - a)) {
                best = std::min(best, len);
            }
        }
        if (best == none) {
            throw std::logic_error("no interval supports a logical operator in a mixed state");
        }
        out.per_site[x] = best;
        total += best;
        out.min = std::min(out.min, best);
    }
    out.mean = static_cast<double>(total) / n;
    return out;
}

}  // namespace momlab
