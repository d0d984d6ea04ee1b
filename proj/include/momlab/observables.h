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

#ifndef MOMLAB_OBSERVABLES_H
#define MOMLAB_OBSERVABLES_H

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "momlab/bit_matrix.h"
#include "momlab/stabilizer_tableau.h"

namespace momlab {

/// Generator matrix restricted to `sites`: one row per generator, columns
/// (x, z) for each listed site in order.
BitMatrix restricted_generator_matrix(const StabilizerTableau &state, std::span<const size_t> sites);

/// rank(G restricted to `sites`).
size_t restricted_rank(const StabilizerTableau &state, std::span<const size_t> sites);

/// Von Neumann entropy (bits) of the reduced state on `region`:
/// |A| - g + rank(G restricted to the complement).
size_t subsystem_entropy(const StabilizerTableau &state, std::span<const size_t> region);

/// Entropies of the nested regions made of the first k sites of `order`,
/// for k = 0..order.size(), using a single elimination. `order` must be a
/// permutation of all sites.
std::vector<size_t> nested_entropies(const StabilizerTableau &state, std::span<const size_t> order);

/// S of the intervals [start, start + l) (wrapping around) for l = 0..n.
std::vector<size_t> interval_entropy_profile(const StabilizerTableau &state, size_t start = 0);

/// Sites start, start+1, ..., start+len-1 modulo n.
std::vector<size_t> interval_sites(size_t start, size_t len, size_t n_sites);

/// I3 of three consecutive quarters A, B, C starting at `offset`:
/// S_A + S_B + S_C - S_AB - S_BC - S_AC + S_ABC. Needs n divisible by 4.
int tripartite_mutual_information(const StabilizerTableau &state, size_t offset = 0);

struct ClippedGauge {
    std::vector<PauliString> generators;
    /// Leftmost and rightmost non-identity site of each generator.
    std::vector<std::pair<size_t, size_t>> endpoints;
    /// histogram[l] = number of generators of length l (index 0 unused).
    std::vector<size_t> length_histogram;

    /// Number of generators with left < cut <= right, i.e. straddling the
    /// bond between sites cut-1 and cut.
    size_t straddling(size_t cut) const;
};

/// Canonical generator basis of a pure state in which every site hosts
/// exactly two endpoints. Throws UnsupportedGaugeError on mixed states.
ClippedGauge clip(const StabilizerTableau &state);

struct CodeDistance {
    /// Per-site contiguous distance; all zero for a pure state.
    std::vector<size_t> per_site;
    double mean = 0;
    size_t min = 0;
};

/// True when the interval `sites` supports a logical operator:
/// 2|A| - rank(G_A) > g - rank(G_complement).
bool interval_supports_logical(const StabilizerTableau &state, size_t start, size_t len, bool periodic);

/// Smallest contiguous interval around each site that supports a logical
/// operator. Intervals wrap around for periodic chains.
CodeDistance contiguous_code_distance(const StabilizerTableau &state, bool periodic);

}  // namespace momlab

#endif
