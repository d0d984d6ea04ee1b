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

#include "momlab/stabilizer_tableau.h"

#include "gtest/gtest.h"
#include "momlab/errors.h"

using namespace momlab;

namespace {

PauliString P(const char *text) {
    return PauliString::from_text(text);
}

PauliString random_op(size_t n, RandomStream &rng, size_t max_len) {
    size_t len = 1 + rng.below(std::min(n, max_len));
    size_t start = rng.below(n - len + 1);
    PauliString p(n);
    do {
        for (size_t k = start; k < start + len; k++) {
            p.set(k, "IXYZ"[rng.below(4)]);
        }
    } while (p.is_identity());
    p.set_negative(rng.coin());
    return p;
}

}  // namespace

TEST(stabilizer_tableau, deterministic_z_on_product_state) {
    for (auto tracking : {Tracking::kFull, Tracking::kGeneratorsOnly}) {
        auto t = StabilizerTableau::all_z(2, tracking);
        RandomStream rng(1, 0);
        auto before = t.to_text();
        auto r = t.measure(P("ZI"), rng);
        EXPECT_EQ(r.outcome, +1);
        EXPECT_EQ(r.kind, MeasurementCase::kDependent);
        EXPECT_EQ(t.to_text(), before);
        EXPECT_EQ(t.measure(P("-ZZ"), rng).outcome, -1);
    }
}

TEST(stabilizer_tableau, mixed_state_gains_generator) {
    for (auto tracking : {Tracking::kFull, Tracking::kGeneratorsOnly}) {
        StabilizerTableau t(3, tracking);
        RandomStream rng(2, 0);
        EXPECT_EQ(t.entropy(), 3u);
        auto r = t.measure(P("XII"), rng);
        EXPECT_EQ(r.kind, MeasurementCase::kIndependent);
        EXPECT_EQ(t.num_generators(), 1u);
        EXPECT_EQ(t.entropy(), 2u);
        auto r2 = t.measure(P("XII"), rng);
        EXPECT_EQ(r2.kind, MeasurementCase::kDependent);
        EXPECT_EQ(r2.outcome, r.outcome);
        EXPECT_EQ(t.invariant_violation(), "");
    }
}

TEST(stabilizer_tableau, bell_pair_from_xx) {
    for (auto tracking : {Tracking::kFull, Tracking::kGeneratorsOnly}) {
        auto t = StabilizerTableau::all_z(2, tracking);
        RandomStream rng(3, 0);
        auto r = t.measure(P("XX"), rng);
        EXPECT_EQ(r.kind, MeasurementCase::kAnticommutesMany);
        auto gens = t.generators();
        ASSERT_EQ(gens.size(), 2u);
        EXPECT_EQ(t.probability_plus(P("ZZ")), 1.0);
        EXPECT_EQ(t.probability_plus(P("XX")), r.outcome > 0 ? 1.0 : 0.0);
        EXPECT_EQ(t.probability_plus(P("ZI")), 0.5);
        EXPECT_EQ(t.invariant_violation(), "");
    }
}

TEST(stabilizer_tableau, rejects_bad_operators) {
    auto t = StabilizerTableau::all_z(2);
    RandomStream rng(0, 0);
    EXPECT_THROW(t.measure(P("II"), rng), InvalidMeasurementError);
    EXPECT_THROW(t.measure(P("III"), rng), DimensionError);
    EXPECT_THROW(t.measure_forced(P("ZI"), -1), ImpossibleOutcomeError);
    EXPECT_EQ(t.measure_forced(P("XI"), -1).probability, 0.5);
    EXPECT_EQ(t.generator(0).str(), "-XI");
}

TEST(stabilizer_tableau, clifford_conjugation) {
    auto one = [](const char *gen, CliffordGate g) {
        auto t = StabilizerTableau::from_generators(2, {P(gen)});
        t.apply(g);
        return t.generator(0).str();
    };
    EXPECT_EQ(one("XI", CliffordGate::cz(0, 1)), "+XZ");
    EXPECT_EQ(one("XX", CliffordGate::cz(0, 1)), "+YY");
    EXPECT_EQ(one("XY", CliffordGate::cz(0, 1)), "-YX");
    EXPECT_EQ(one("XI", CliffordGate::p(0)), "+YI");
    EXPECT_EQ(one("YI", CliffordGate::p(0)), "-XI");
    EXPECT_EQ(one("ZI", CliffordGate::h(0)), "+XI");
    EXPECT_EQ(one("YI", CliffordGate::h(0)), "-YI");
}

TEST(stabilizer_tableau, from_generators_validates) {
    EXPECT_THROW(StabilizerTableau::from_generators(2, {P("XI"), P("ZI")}), std::invalid_argument);
    EXPECT_THROW(StabilizerTableau::from_generators(2, {P("ZZ"), P("ZI"), P("IZ")}), std::invalid_argument);
    EXPECT_THROW(StabilizerTableau::from_generators(2, {P("ZZ"), P("-ZZ")}), std::invalid_argument);
    auto t = StabilizerTableau::from_generators(4, {P("XXXX"), P("ZZII"), P("-IZZI"), P("IIZZ")});
    EXPECT_TRUE(t.is_pure());
    EXPECT_EQ(t.invariant_violation(), "");
    auto round = StabilizerTableau::from_text("# ghz\n" + t.to_text(), 4);
    EXPECT_EQ(round.to_text(), t.to_text());
}

TEST(stabilizer_tableau, random_sequences_keep_invariants_and_modes_agree) {
    for (uint64_t seed = 0; seed < 40; seed++) {
        size_t n = 1 + seed % 70;
        RandomStream ops(seed, 1);
        bool start_pure = seed & 1;
        auto full = start_pure ? StabilizerTableau::all_z(n, Tracking::kFull) : StabilizerTableau(n, Tracking::kFull);
        auto plain = start_pure ? StabilizerTableau::all_z(n, Tracking::kGeneratorsOnly)
                                : StabilizerTableau(n, Tracking::kGeneratorsOnly);
        for (int step = 0; step < 300; step++) {
            if (step % 17 == 3) {
                size_t a = ops.below(n);
                size_t b = ops.below(n);
                CliffordGate g = a == b ? CliffordGate::p(a) : CliffordGate::cz(a, b);
                if (step % 34 == 3) {
                    g = CliffordGate::h(a);
                }
                full.apply(g);
                plain.apply(g);
                continue;
            }
            auto op = random_op(n, ops, 6);
            int forced = ops.coin() ? 1 : -1;
            double p_full = full.probability_plus(op);
            ASSERT_EQ(p_full, plain.probability_plus(op));
            if (p_full == 0.0 || p_full == 1.0) {
                forced = p_full == 1.0 ? 1 : -1;
            }
            auto a = full.measure_forced(op, forced);
            auto b = plain.measure_forced(op, forced);
            ASSERT_EQ(a.kind, b.kind);
            ASSERT_EQ(a.outcome, b.outcome);
            ASSERT_EQ(full.num_generators(), plain.num_generators());
            // Both must now stabilize outcome * op.
            PauliString signed_op = op;
            signed_op.set_negative(op.negative() != (a.outcome < 0));
            ASSERT_EQ(full.probability_plus(signed_op), 1.0);
            ASSERT_EQ(plain.probability_plus(signed_op), 1.0);
            // Idempotence.
            auto snapshot = full.to_text();
            auto again = full.measure_forced(op, a.outcome);
            ASSERT_TRUE(again.deterministic());
            ASSERT_EQ(full.to_text(), snapshot);
        }
        ASSERT_EQ(full.invariant_violation(), "") << seed;
        ASSERT_EQ(plain.invariant_violation(), "") << seed;
    }
}
