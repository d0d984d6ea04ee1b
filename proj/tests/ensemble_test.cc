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

#include "momlab/ensemble.h"

#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "momlab/errors.h"
#include "momlab/hybrid_circuit.h"
#include "momlab/observables.h"

using namespace momlab;

namespace {

std::map<std::string, double> as_map(const MeasurementEnsemble &e) {
    std::map<std::string, double> out;
    for (size_t s = 0; s < e.num_species(); s++) {
        out[e.pattern(s).str()] += e.probability(s);
    }
    return out;
}

// Upper tail probability of a chi-squared statistic (Wilson-Hilferty).
double chi2_p_value(double chi2, double dof) {
    double z = (std::cbrt(chi2 / dof) - (1 - 2 / (9 * dof))) / std::sqrt(2 / (9 * dof));
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

}  // namespace

TEST(ensemble, factorizable_examples) {
    auto xx = build_factorizable({2, {0, 1, 0, 0}});
    ASSERT_EQ(xx.num_species(), 1u);
    EXPECT_EQ(xx.pattern(0).str(), "+XX");
    EXPECT_DOUBLE_EQ(xx.probability(0), 1.0);

    auto center = build_factorizable({3, {0, 1.0 / 3, 1.0 / 3, 1.0 / 3}});
    EXPECT_EQ(center.num_species(), 27u);
    for (double p : center.probabilities()) {
        EXPECT_NEAR(p, 1.0 / 27, 1e-15);
    }
    EXPECT_NEAR(*center.delta_q, 0.0, 1e-15);

    auto half = as_map(build_factorizable({2, {0.5, 0.5, 0, 0}}));
    ASSERT_EQ(half.size(), 3u);
    EXPECT_NEAR(half["+XX"], 1.0 / 3, 1e-15);
    EXPECT_NEAR(half["+XI"], 1.0 / 3, 1e-15);
    EXPECT_NEAR(half["+IX"], 1.0 / 3, 1e-15);

    EXPECT_THROW(build_factorizable({2, {1, 0, 0, 0}}), EmptyEnsembleError);
    EXPECT_THROW(build_factorizable({2, {0.5, 0.6, 0, 0}}), ProbabilityError);
}

TEST(ensemble, factorizable_normalized_and_covariant) {
    for (size_t r = 1; r <= 4; r++) {
        std::array<double, 4> q = {0.1, 0.2, 0.3, 0.4};
        auto e = build_factorizable({r, q});
        double total = 0;
        for (double p : e.probabilities()) {
            total += p;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        // Relabel X -> Y -> Z -> X in q and in the patterns.
        auto rotated = as_map(build_factorizable({r, {q[0], q[3], q[1], q[2]}}));
        for (auto [text, p] : as_map(e)) {
            std::string moved = text;
            for (char &c : moved) {
                c = c == 'X' ? 'Y' : c == 'Y' ? 'Z' : c == 'Z' ? 'X' : c;
            }
            EXPECT_NEAR(rotated[moved], p, 1e-15) << text;
        }
    }
}

TEST(ensemble, lbit_examples) {
    auto e = as_map(build_lbit({2, 0, 0}));
    ASSERT_EQ(e.size(), 8u);
    for (const char *s : {"+IXI", "+IYI", "+ZXI", "+IXZ", "+ZYI", "+IYZ", "+ZXZ", "+ZYZ"}) {
        EXPECT_NEAR(e[s], 1.0 / 8, 1e-15) << s;
    }
    auto four = build_lbit({4, 0, 0});
    EXPECT_EQ(four.num_species(), 128u);
    EXPECT_EQ(four.range(), 7u);
    for (size_t n_star = 2; n_star <= 5; n_star++) {
        auto a = as_map(build_lbit({n_star, 0, 0}));
        auto b = build_lbit({n_star - 1, 0.999999999999, 0});
        auto bm = as_map(b);
        ASSERT_EQ(a.size(), bm.size());
        for (auto [text, p] : a) {
            EXPECT_NEAR(bm[text], p, 1e-9) << text;
        }
    }
    auto frac = build_lbit({3, 0.25, 0});
    EXPECT_EQ(frac.range(), 7u);
    auto m = as_map(frac);
    double norm = 1.25 * 1.25 * 32;
    EXPECT_NEAR(m["+IIIXIII"], 1 / norm, 1e-15);
    EXPECT_NEAR(m["+ZIIXIII"], 0.25 / norm, 1e-15);
    EXPECT_NEAR(m["+ZIIXIIZ"], 0.0625 / norm, 1e-15);
    auto with_z = as_map(build_lbit({2, 0, 0.2}));
    EXPECT_NEAR(with_z["+IZI"], 0.2, 1e-15);
    EXPECT_NEAR(with_z["+ZYZ"], 0.1, 1e-15);
}

TEST(ensemble, bipartite_and_custom) {
    auto e = build_bipartite({PauliString::from_text("X"), PauliString::from_text("ZZ"), 0});
    EXPECT_EQ(e.num_species(), 2u);
    EXPECT_DOUBLE_EQ(e.probability(0), 0.5);
    auto only_x = build_bipartite({PauliString::from_text("X"), PauliString::from_text("ZZ"), 1});
    EXPECT_EQ(only_x.num_species(), 1u);
    EXPECT_THROW(build_bipartite({PauliString::from_text("XZ"), PauliString::from_text("ZZ"), 0}),
                 NotBipartiteError);

    auto c = parse_custom("XZ 1\nZX 1");
    EXPECT_EQ(c.num_species(), 2u);
    EXPECT_DOUBLE_EQ(c.probability(1), 0.5);
    auto padded = parse_custom("# comment\n\nX 3  # tail\nZZZ 1\n");
    EXPECT_EQ(padded.range(), 3u);
    EXPECT_EQ(padded.pattern(0).str(), "+XII");
    EXPECT_DOUBLE_EQ(padded.probability(0), 0.75);
    try {
        parse_custom("XZ 1\nZQ 1\n");
        FAIL();
    } catch (const ParseError &err) {
        EXPECT_EQ(err.line, 2u);
    }
    EXPECT_THROW(parse_custom("XZ\n"), ParseError);
    EXPECT_THROW(parse_custom("XZ abc\n"), ParseError);
    EXPECT_THROW(parse_custom("II 1\n"), ParseError);
    EXPECT_THROW(parse_custom("# nothing\n"), EmptyEnsembleError);
}

TEST(ensemble, sampling_geometry) {
    auto single = parse_custom("ZZZ 1", Boundary::kOpen);
    RandomStream rng(1, 0);
    for (int k = 0; k < 100; k++) {
        auto p = single.sample(3, rng);
        EXPECT_EQ(p.species, 0u);
        EXPECT_EQ(p.position, 0u);
    }
    EXPECT_THROW(single.sample(2, rng), GeometryError);
    EXPECT_EQ(single.num_positions(10), 8u);
    single.set_boundary(Boundary::kPeriodic);
    EXPECT_EQ(single.num_positions(10), 10u);
    EXPECT_EQ(single.placed(0, 9, 10).str(), "+ZZIIIIIIIZ");
    PauliString scratch(10);
    single.place_into(scratch, 0, 9, 10);
    EXPECT_EQ(scratch.str(), "+ZZIIIIIIIZ");
}

TEST(ensemble, species_frequencies_chi_squared) {
    auto e = build_factorizable({2, {0.1, 0.5, 0.15, 0.25}});
    RandomStream rng(99, 0);
    std::vector<double> counts(e.num_species(), 0);
    const size_t draws = 1000000;
    for (size_t k = 0; k < draws; k++) {
        counts[e.sample(16, rng).species]++;
    }
    double chi2 = 0;
    for (size_t s = 0; s < counts.size(); s++) {
        double expect = draws * e.probability(s);
        chi2 += (counts[s] - expect) * (counts[s] - expect) / expect;
    }
    EXPECT_GT(chi2_p_value(chi2, counts.size() - 1), 0.01) << chi2;
}

TEST(hybrid, only_z_measurements_give_product_state) {
    StabilizerTableau t = StabilizerTableau::all_z(16);
    RandomStream rng(3, 0);
    // Scramble first with X-only dynamics.
    for (int k = 0; k < 10; k++) {
        hybrid_lbit_step(t, {4, 0.3, 0}, rng);
    }
    EXPECT_GT(subsystem_entropy(t, interval_sites(0, 8, 16)), 0u);
    for (int k = 0; k < 200; k++) {
        hybrid_lbit_step(t, {4, 0, 0.5}, rng);
    }
    for (size_t i = 0; i < 16; i++) {
        PauliString z(16);
        z.set(i, 'Z');
        EXPECT_NE(t.probability_plus(z), 0.5);
    }
    EXPECT_THROW(hybrid_lbit_step(t, {4, 0.6, 0.5}, rng), ProbabilityError);
}

TEST(hybrid, conjugated_x_is_an_lbit_species) {
    // X_i conjugated by a layer of the l-bit unitary is X_i (or Y_i) times Z
    // tails inside the l-bit range, i.e. a species of build_lbit.
    RandomStream rng(4, 0);
    for (double n : {2.0, 3.0, 4.0, 3.5}) {
        size_t n_star = static_cast<size_t>(n);
        double eps = n - n_star;
        auto species = as_map(build_lbit({n_star, eps, 0}));
        size_t width = eps > 0 ? 2 * n_star + 1 : 2 * n_star - 1;
        size_t t = width / 2;
        size_t L = 24;
        size_t site = 11;
        for (int trial = 0; trial < 200; trial++) {
            PauliString x(L);
            x.set(site, 'X');
            auto tab = StabilizerTableau::from_generators(L, {x}, Tracking::kGeneratorsOnly);
            for (const auto &g : sample_lbit_layer(L, n, Boundary::kOpen, rng)) {
                tab.apply(g);
            }
            PauliString conj = tab.generator(0);
            PauliString window(width);
            for (size_t k = 0; k < L; k++) {
                if (conj.at(k) != 'I') {
                    ASSERT_LE(std::max(k, site) - std::min(k, site), t);
                }
            }
            for (size_t k = 0; k < width; k++) {
                window.set(k, conj.at(site - t + k));
            }
            ASSERT_TRUE(species.count(window.str())) << window;
        }
    }
}
