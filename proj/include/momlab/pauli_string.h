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

#ifndef MOMLAB_PAULI_STRING_H
#define MOMLAB_PAULI_STRING_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "momlab/bit_vector.h"

namespace momlab {

/// A Hermitian Pauli string with a +1/-1 sign, stored as binary symplectic
/// vectors. Site k carries I/X/Z/Y for (x_k, z_k) = (0,0)/(1,0)/(0,1)/(1,1).
class PauliString {
   public:
    PauliString() = default;
    /// The identity on `n_sites` qubits.
    explicit PauliString(size_t n_sites);

    /// Parses text like "XZI", "+XZI", "-XZI". The Unicode minus sign is
    /// also accepted. Throws std::invalid_argument on unknown characters.
    static PauliString from_text(std::string_view text);

    /// Places `pattern` so that its site 0 lands on `start`. With `periodic`
    /// the pattern wraps around the end of the chain; otherwise it must fit.
    static PauliString placed(const PauliString &pattern, size_t start, size_t n_sites, bool periodic);

    size_t n_sites() const {
        return xs_.size();
    }
    const BitVector &xs() const {
        return xs_;
    }
    const BitVector &zs() const {
        return zs_;
    }
    BitVector &xs() {
        return xs_;
    }
    BitVector &zs() {
        return zs_;
    }

    bool negative() const {
        return negative_;
    }
    int sign() const {
        return negative_ ? -1 : +1;
    }
    void set_negative(bool negative) {
        negative_ = negative;
    }

    /// One of 'I', 'X', 'Y', 'Z'.
    char at(size_t site) const;
    void set(size_t site, char pauli);

    bool is_identity() const {
        return !xs_.any() && !zs_.any();
    }
    size_t weight() const;

    /// Smallest and largest non-identity sites, or nullopt for the identity.
    std::optional<std::pair<size_t, size_t>> support_bounds() const;

    /// Sign character followed by one letter per site, e.g. "-XZI".
    std::string str() const;

    bool operator==(const PauliString &other) const = default;

   private:
    BitVector xs_;
    BitVector zs_;
    bool negative_ = false;
};

std::ostream &operator<<(std::ostream &out, const PauliString &p);

/// 0 when `a` and `b` commute, 1 when they anticommute.
/// Throws DimensionError on a length mismatch.
bool symplectic_product(const PauliString &a, const PauliString &b);

/// The product a*b of two commuting strings. Throws DimensionError on length
/// mismatch and std::invalid_argument when the inputs anticommute (the product
/// would carry a factor of +-i).
PauliString multiply(const PauliString &a, const PauliString &b);

/// a*b = i^log_i * pauli, with pauli carrying sign +1. Works for any pair.
struct PhasedPauli {
    PauliString pauli;
    uint8_t log_i;
};
PhasedPauli multiply_with_phase(const PauliString &a, const PauliString &b);

/// Overwrites (x1, z1) with the Pauli part of P1*P2 and returns the exponent
/// e in {0,1,2,3} with P1*P2 = i^e * P3 for unsigned P1, P2, P3.
uint8_t mul_log_i_inplace(
    std::span<uint64_t> x1, std::span<uint64_t> z1, std::span<const uint64_t> x2, std::span<const uint64_t> z2);

}  // namespace momlab

#endif
