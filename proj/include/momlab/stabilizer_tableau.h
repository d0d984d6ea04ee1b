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

#ifndef MOMLAB_STABILIZER_TABLEAU_H
#define MOMLAB_STABILIZER_TABLEAU_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "momlab/pauli_string.h"
#include "momlab/rng.h"

namespace momlab {

/// A list of Pauli rows in a flat word layout. Row r occupies x[r*stride ..]
/// and z[r*stride ..].
class PauliRows {
   public:
    PauliRows() = default;
    explicit PauliRows(size_t n_sites) : n_sites_(n_sites), stride_(words_for_bits(n_sites)) {
    }

    size_t n_sites() const {
        return n_sites_;
    }
    size_t stride() const {
        return stride_;
    }
    size_t size() const {
        return negative_.size();
    }

    std::span<uint64_t> xs(size_t r) {
        return {x_.data() + r * stride_, stride_};
    }
    std::span<uint64_t> zs(size_t r) {
        return {z_.data() + r * stride_, stride_};
    }
    std::span<const uint64_t> xs(size_t r) const {
        return {x_.data() + r * stride_, stride_};
    }
    std::span<const uint64_t> zs(size_t r) const {
        return {z_.data() + r * stride_, stride_};
    }
    bool negative(size_t r) const {
        return negative_[r];
    }
    void set_negative(size_t r, bool v) {
        negative_[r] = v;
    }

    void push_back(const PauliString &p);
    void pop_back();
    void swap_rows(size_t a, size_t b);
    void copy_row(size_t src, size_t dst);
    PauliString get(size_t r) const;

    /// Symplectic product of row r with (ox, oz), looking only at words
    /// [w_lo, w_hi).
    bool anticommutes(size_t r, std::span<const uint64_t> ox, std::span<const uint64_t> oz, size_t w_lo,
                      size_t w_hi) const {
        const uint64_t *rx = x_.data() + r * stride_;
        const uint64_t *rz = z_.data() + r * stride_;
        uint64_t acc = 0;
        for (size_t w = w_lo; w < w_hi; w++) {
            acc ^= (rx[w] & oz[w]) ^ (rz[w] & ox[w]);
        }
        return std::popcount(acc) & 1;
    }

    /// Row dst <- row dst * row src, with the sign tracked. The rows must commute.
    void multiply_into(size_t src, size_t dst);
    /// Row dst <- row dst * row src on the bits only; the sign is left alone.
    void xor_into(size_t src, size_t dst);

    void apply_h(size_t q);
    void apply_s(size_t q);
    void apply_cz(size_t a, size_t b);

   private:
    size_t n_sites_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;
    std::vector<uint8_t> negative_;
};

/// Clifford gates acting by conjugation g -> U g U^dagger.
/// P is the phase gate diag(1, i), so X -> Y.
struct CliffordGate {
    enum class Kind : uint8_t { kH, kP, kCZ };
    Kind kind;
    size_t a;
    size_t b = 0;

    static CliffordGate h(size_t q) {
        return {Kind::kH, q, 0};
    }
    static CliffordGate p(size_t q) {
        return {Kind::kP, q, 0};
    }
    static CliffordGate cz(size_t a, size_t b) {
        return {Kind::kCZ, a, b};
    }
};

/// The four update cases of a projective Pauli measurement.
enum class MeasurementCase : uint8_t {
    kAnticommutesOne,   // one generator anticommutes; it is replaced
    kAnticommutesMany,  // several anticommute; gauge fixed, then replaced
    kIndependent,       // commutes with all, outside the group: new generator
    kDependent,         // in the stabilizer group up to sign: deterministic
};

/// "1", "2", "3A" or "3B".
const char *case_name(MeasurementCase c);

struct MeasurementResult {
    /// +1 or -1; 0 for a deterministic result whose sign was not requested.
    int outcome;
    MeasurementCase kind;
    /// Probability of the returned outcome: 1 for deterministic, else 1/2.
    double probability;

    bool deterministic() const {
        return kind == MeasurementCase::kDependent;
    }
};

/// Whether the tableau keeps a full symplectic basis (destabilizers paired
/// with generators plus logical pairs) next to the generators.
enum class Tracking : uint8_t { kGeneratorsOnly, kFull };

/// A (possibly mixed) stabilizer state on n qubits given by g <= n
/// independent commuting signed generators.
///
/// With Tracking::kFull the tableau also carries destabilizers d_i
/// (d_i anticommutes with g_j iff i == j) and k = n - g logical pairs, which
/// makes the case 3A/3B decision and deterministic sign recovery O(n) row
/// scans. With Tracking::kGeneratorsOnly those use GF(2) elimination.
class StabilizerTableau {
   public:
    /// The maximally mixed state (no generators).
    explicit StabilizerTableau(size_t n_sites, Tracking tracking = Tracking::kFull);

    /// The +1 eigenstate of every Z_i.
    static StabilizerTableau all_z(size_t n_sites, Tracking tracking = Tracking::kFull);

    /// Throws std::invalid_argument if the generators do not commute or are
    /// dependent, DimensionError on length mismatch.
    static StabilizerTableau from_generators(size_t n_sites, const std::vector<PauliString> &generators,
                                             Tracking tracking = Tracking::kFull);

    /// One signed Pauli string per line; blank lines and '#' comments ignored.
    static StabilizerTableau from_text(std::string_view text, size_t n_sites, Tracking tracking = Tracking::kFull);
    std::string to_text() const;

    size_t n_sites() const {
        return n_sites_;
    }
    size_t num_generators() const {
        return gens_.size();
    }
    size_t num_encoded() const {
        return n_sites_ - gens_.size();
    }
    bool is_pure() const {
        return gens_.size() == n_sites_;
    }
    /// Von Neumann entropy of the whole state in bits.
    size_t entropy() const {
        return n_sites_ - gens_.size();
    }
    Tracking tracking() const {
        return tracking_;
    }

    PauliString generator(size_t i) const {
        return gens_.get(i);
    }
    std::vector<PauliString> generators() const;
    const PauliRows &generator_rows() const {
        return gens_;
    }

    /// Measures `op`, drawing random outcomes from `rng`. With
    /// `want_sign == false` a deterministic outcome is reported as 0, which
    /// skips the sign reconstruction.
    MeasurementResult measure(const PauliString &op, RandomStream &rng, bool want_sign = true);

    /// Projects onto eigenvalue `outcome` of `op`. Throws
    /// ImpossibleOutcomeError if that outcome has probability zero.
    MeasurementResult measure_forced(const PauliString &op, int outcome);

    /// Outcome probabilities without changing the state: returns the
    /// probability of +1 (0, 1/2 or 1).
    double probability_plus(const PauliString &op) const;

    void apply(const CliffordGate &gate);
    void apply_h(size_t q);
    void apply_p(size_t q);
    void apply_cz(size_t a, size_t b);

    /// Checks commutation, independence and (when tracked) the symplectic
    /// pairing relations. Returns an empty string when all hold.
    std::string invariant_violation() const;

   private:
    MeasurementResult measure_impl(const PauliString &op, std::optional<int> forced, RandomStream *rng,
                                   bool want_sign);
    void check_op(const PauliString &op) const;
    /// Sign (+1/-1) with which the Pauli part of `op` lies in the stabilizer
    /// group, or 0 if it is outside the group. `anti_destab` lists the rows
    /// whose destabilizer anticommutes with op (tracked mode only).
    int group_sign(const PauliString &op, const std::vector<size_t> *anti_destab) const;

    size_t n_sites_;
    Tracking tracking_;
    PauliRows gens_;
    PauliRows destabs_;
    PauliRows logical_x_;
    PauliRows logical_z_;
};

}  // namespace momlab

#endif
