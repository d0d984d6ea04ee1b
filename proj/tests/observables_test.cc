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

#include "gtest/gtest.h"
#include "momlab/errors.h"
#include "test_util.h"

using namespace momlab;
using namespace momlab::testing;

namespace {

StabilizerTableau from(size_t n, std::vector<const char *> gens) {
    std::vector<PauliString> ps;
    for (auto g : gens) {
        ps.push_back(PauliString::from_text(g));
    }
    return StabilizerTableau::from_generators(n, ps);
}

// Logical operators supported on the interval, by enumerating every Pauli
// string there: it must commute with all generators and lie outside the group.
bool brute_force_logical(const StabilizerTableau &t, size_t start, size_t len, bool periodic) {
    size_t n = t.n_sites();
    auto sites = interval_sites(start, len, n);
    (void)periodic;
    uint64_t total = uint64_t{1} << (2 * len);
    for (uint64_t code = 1; code < total; code++) {
        PauliString p(n);
        for (size_t k = 0; k < len; k++) {
            p.set(sites[k], "IXYZ"[(code >> (2 * k)) & 3]);
        }
        bool commutes = true;
        for (size_t i = 0; i < t.num_generators() && commutes; i++) {
            commutes = !symplectic_product(p, t.generator(i));
        }
        if (commutes && t.probability_plus(p) == 0.5) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST(observables, entropy_examples) {
    auto bell = from(2, {"XX", "ZZ"});
    std::vector<size_t> first = {0};
    EXPECT_EQ(subsystem_entropy(bell, first), 1u);
    auto prod = StabilizerTableau::all_z(5);
    for (uint64_t mask = 0; mask < 32; mask++) {
        EXPECT_EQ(subsystem_entropy(prod, sites_of_mask(mask)), 0u);
    }
    auto ghz = from(4, {"XXXX", "ZZII", "IZZI", "IIZZ"});
    std::vector<size_t> half = {0, 1};
    EXPECT_EQ(subsystem_entropy(ghz, half), 1u);
    EXPECT_EQ(tripartite_mutual_information(ghz), 1);
    EXPECT_EQ(tripartite_mutual_information(StabilizerTableau::all_z(8)), 0);
    EXPECT_THROW(tripartite_mutual_information(StabilizerTableau::all_z(6)), GeometryError);
    StabilizerTableau mixed(3);
    EXPECT_EQ(subsystem_entropy(mixed, half), 2u);
}

TEST(observables, entropy_matches_dense_oracle) {
    RandomStream rng(7, 0);
    for (int trial = 0; trial < 20; trial++) {
        size_t n = 8;
        DenseState dense(n);
        auto t = random_pure_state(n, rng, &dense);
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
            auto region = sites_of_mask(mask);
            ASSERT_NEAR(dense.entropy(region), double(subsystem_entropy(t, region)), 1e-8);
        }
    }
}

TEST(observables, pure_state_entropy_is_symmetric) {
    RandomStream rng(8, 0);
    for (int trial = 0; trial < 10; trial++) {
        size_t n = 12;
        auto t = random_pure_state(n, rng);
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask += 7) {
            uint64_t comp = ((uint64_t{1} << n) - 1) ^ mask;
            ASSERT_EQ(subsystem_entropy(t, sites_of_mask(mask)), subsystem_entropy(t, sites_of_mask(comp)));
        }
    }
}

TEST(observables, nested_entropies_match_direct) {
    RandomStream rng(9, 0);
    for (int trial = 0; trial < 10; trial++) {
        size_t n = 20 + trial * 7;
        auto t = trial % 2 ? random_pure_state(n, rng) : random_mixed_state(n, n / 2, rng);
        size_t start = rng.below(n);
        auto profile = interval_entropy_profile(t, start);
        for (size_t len = 0; len <= n; len++) {
            ASSERT_EQ(profile[len], subsystem_entropy(t, interval_sites(start, len, n)));
        }
    }
}

TEST(observables, clip_examples) {
    auto prod = clip(StabilizerTableau::all_z(6));
    EXPECT_EQ(prod.length_histogram[1], 6u);
    auto bells = clip(from(6, {"XXIIII", "ZZIIII", "IIXXII", "IIZZII", "IIIIXX", "IIIIZZ"}));
    EXPECT_EQ(bells.length_histogram[2], 6u);
    EXPECT_THROW(clip(StabilizerTableau(3)), UnsupportedGaugeError);
}

TEST(observables, clipped_gauge_straddling_matches_entropy) {
    RandomStream rng(10, 0);
    for (int trial = 0; trial < 30; trial++) {
        size_t n = 3 + trial * 3;
        auto t = random_pure_state(n, rng);
        auto gauge = clip(t);
        auto check = StabilizerTableau::from_generators(n, gauge.generators);
        // Same group: every original generator is stabilized.
        for (const auto &g : t.generators()) {
            ASSERT_EQ(check.probability_plus(g), 1.0);
        }
        auto profile = interval_entropy_profile(t, 0);
        for (size_t cut = 0; cut <= n; cut++) {
            ASSERT_EQ(gauge.straddling(cut), 2 * profile[cut]) << "n=" << n << " cut=" << cut;
        }
    }
}

TEST(observables, code_distance_examples) {
    auto mixed = contiguous_code_distance(StabilizerTableau(5), true);
    EXPECT_EQ(mixed.mean, 1.0);
    EXPECT_EQ(mixed.min, 1u);
    auto pure = contiguous_code_distance(StabilizerTableau::all_z(5), false);
    EXPECT_EQ(pure.mean, 0.0);
    auto rep = contiguous_code_distance(from(3, {"ZZI", "IZZ"}), false);
    EXPECT_EQ(rep.per_site[0], 1u);
    EXPECT_EQ(rep.per_site[1], 1u);
    EXPECT_EQ(rep.per_site[2], 1u);
    // Encoded qubit of the 3-qubit bit-flip code with X-type checks removed:
    // X logicals need all three sites but Z_1 alone is logical.
    auto xrep = contiguous_code_distance(from(3, {"XXI", "IXX"}), false);
    EXPECT_EQ(xrep.per_site[0], 1u);
}

TEST(observables, code_distance_matches_brute_force) {
    RandomStream rng(12, 0);
    int checked = 0;
    for (int trial = 0; trial < 60; trial++) {
        size_t n = 2 + trial % 5;
        bool periodic = trial % 2;
        auto t = random_mixed_state(n, 1 + rng.below(n), rng);
        if (t.is_pure()) {
            continue;
        }
        checked++;
        for (size_t start = 0; start < n; start++) {
            size_t max_len = periodic ? n : n - start;
            bool prev = false;
            for (size_t len = 1; len <= max_len; len++) {
                bool fast = interval_supports_logical(t, start, len, periodic);
                ASSERT_EQ(fast, brute_force_logical(t, start, len, periodic)) << t.to_text();
                ASSERT_TRUE(fast || !prev) << "monotonicity";
                prev = fast;
            }
        }
        auto cd = contiguous_code_distance(t, periodic);
        for (size_t x = 0; x < n; x++) {
            size_t best = 0;
            for (size_t len = 1; len <= n && !best; len++) {
                for (size_t back = 0; back < len && !best; back++) {
                    if (!periodic && (back > x || x - back + len > n)) {
                        continue;
                    }
                    size_t start = (x + n - back) % n;
                    if (brute_force_logical(t, start, len, periodic)) {
                        best = len;
                    }
                }
            }
            ASSERT_EQ(cd.per_site[x], best) << "x=" << x << "\n" << t.to_text();
        }
    }
    EXPECT_GT(checked, 40);
}
