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

#ifndef MOMLAB_ENSEMBLE_H
#define MOMLAB_ENSEMBLE_H

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "momlab/pauli_string.h"
#include "momlab/rng.h"

namespace momlab {

enum class Boundary : uint8_t { kOpen, kPeriodic };

const char *boundary_name(Boundary b);
Boundary parse_boundary(std::string_view text);

struct Placement {
    size_t species;
    size_t position;
};

/// A list of species (local Pauli patterns padded to a common range r) with
/// probabilities. All patterns share the same origin: site 0 of a pattern is
/// placed at the sampled position.
class MeasurementEnsemble {
   public:
    MeasurementEnsemble() = default;
    /// Weights are normalized. Patterns shorter than the longest one are
    /// padded with identities. Zero-weight species are dropped.
    MeasurementEnsemble(std::vector<PauliString> patterns, std::vector<double> weights, Boundary boundary);

    size_t range() const {
        return range_;
    }
    size_t num_species() const {
        return patterns_.size();
    }
    const PauliString &pattern(size_t s) const {
        return patterns_[s];
    }
    const std::vector<PauliString> &patterns() const {
        return patterns_;
    }
    double probability(size_t s) const {
        return probs_[s];
    }
    const std::vector<double> &probabilities() const {
        return probs_;
    }
    Boundary boundary() const {
        return boundary_;
    }
    void set_boundary(Boundary b) {
        boundary_ = b;
    }

    /// Distance of the single-site distribution from (1/3, 1/3, 1/3) for
    /// factorizable ensembles.
    std::optional<double> delta_q;
    /// Human-readable description, e.g. "factorizable r=3 q=(0,0.3,0.3,0.4)".
    std::string description;

    /// Number of valid placements on L sites. Throws GeometryError if L < r.
    size_t num_positions(size_t n_sites) const;

    Placement sample(size_t n_sites, RandomStream &rng) const;

    /// The species placed at `position` on `n_sites` sites.
    PauliString placed(size_t species, size_t position, size_t n_sites) const;
    /// Same, reusing `out` to avoid allocation. Periodic placements wrap at
    /// `n_sites`, which may be smaller than out.n_sites() (e.g. when extra
    /// ancilla qubits follow the chain).
    void place_into(PauliString &out, size_t species, size_t position, size_t n_sites) const;

    /// "PATTERN weight" lines.
    std::string to_text() const;

   private:
    size_t range_ = 0;
    std::vector<PauliString> patterns_;
    std::vector<double> probs_;
    std::vector<double> cumulative_;
    Boundary boundary_ = Boundary::kPeriodic;
};

struct FactorizableSpec {
    size_t r;
    /// Probabilities of I, X, Y, Z on each site.
    std::array<double, 4> q;
};
MeasurementEnsemble build_factorizable(const FactorizableSpec &spec, Boundary boundary = Boundary::kPeriodic);

struct LBitSpec {
    size_t n_star;
    double epsilon = 0;
    /// Probability that a measurement is a single-site Z instead of an
    /// l-bit string.
    double p_z = 0;
};
/// Species X_0 times Z tails on -n*..n*. With epsilon = 0 the outermost
/// tail sites are identity; otherwise they carry weight epsilon each.
MeasurementEnsemble build_lbit(const LBitSpec &spec, Boundary boundary = Boundary::kPeriodic);

struct BipartiteSpec {
    PauliString a;
    PauliString b;
    /// P_A = (1 + delta) / 2.
    double delta;
};
/// Throws NotBipartiteError if translates of one species fail to commute.
MeasurementEnsemble build_bipartite(const BipartiteSpec &spec, Boundary boundary = Boundary::kPeriodic);

/// Lines "PATTERN weight"; '#' starts a comment. Throws ParseError.
MeasurementEnsemble parse_custom(std::string_view text, Boundary boundary = Boundary::kPeriodic);

/// True if `p` commutes with all its translates (on an infinite chain).
bool commutes_with_translates(const PauliString &p);

}  // namespace momlab

#endif
