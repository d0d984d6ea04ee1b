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

#ifndef MOMLAB_FRUSTRATION_H
#define MOMLAB_FRUSTRATION_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "momlab/ensemble.h"
#include "momlab/rng.h"

namespace momlab {

/// Anticommutation bits of an ensemble. gamma(a, b, l) is 1 when species a
/// placed at position i anticommutes with species b placed at i - l.
class FrustrationTensor {
   public:
    FrustrationTensor() = default;
    explicit FrustrationTensor(const MeasurementEnsemble &ens);

    size_t num_species() const {
        return num_species_;
    }
    size_t range() const {
        return range_;
    }
    bool gamma(size_t a, size_t b, long l) const {
        long r = static_cast<long>(range_);
        if (l <= -r || l >= r) {
            return false;
        }
        return bits_[(a * num_species_ + b) * (2 * range_ - 1) + static_cast<size_t>(l + r - 1)];
    }

   private:
    size_t num_species_ = 0;
    size_t range_ = 0;
    std::vector<uint8_t> bits_;
};

/// Frustration graph on a finite chain. Vertex v = species * positions + i
/// stands for the species placed at position i.
struct FrustrationGraph {
    size_t num_species = 0;
    size_t positions = 0;
    size_t n_sites = 0;
    Boundary boundary = Boundary::kPeriodic;
    std::vector<std::vector<uint32_t>> adjacency;

    size_t num_vertices() const {
        return adjacency.size();
    }
    size_t vertex(size_t species, size_t i) const {
        return species * positions + i;
    }
    size_t species_of(size_t v) const {
        return v / positions;
    }
    size_t position_of(size_t v) const {
        return v % positions;
    }
    size_t num_edges() const;
    /// One "a,i b,j" line per edge with a < b or (a == b and i < j).
    std::string edge_list() const;
};

FrustrationGraph build_graph(const FrustrationTensor &tensor, size_t n_sites, Boundary boundary);

struct BipartiteVerdict {
    bool bipartite = false;
    /// 0/1 color per vertex when bipartite.
    std::vector<uint8_t> coloring;
    /// Vertices of an odd cycle when not bipartite (closed implicitly).
    std::vector<uint32_t> odd_cycle;
};

BipartiteVerdict is_bipartite(const FrustrationGraph &g);

/// Window used for ensemble-level graph checks: max(4r, 24) rounded up to a
/// multiple of 24, so colorings and components with small periods close up.
size_t analysis_window(size_t range);

struct EnsembleBipartiteVerdict {
    BipartiteVerdict ring;
    FrustrationGraph ring_graph;
    bool open_window_bipartite = false;
    bool bipartite() const {
        return ring.bipartite && open_window_bipartite;
    }
};
/// Checks the periodic ring of analysis_window(r) sites and the open chain
/// of the same size.
EnsembleBipartiteVerdict check_bipartite(const MeasurementEnsemble &ens);

/// Vertex lists of the connected components, ordered by smallest vertex.
std::vector<std::vector<uint32_t>> connected_components(const FrustrationGraph &g);

/// A translation-invariant quasi-1D graph: vertex (s, m) for species class s
/// and cell m; relation (a, b, d) joins (a, m) and (b, m + d) for all m.
struct PeriodicGraph {
    size_t num_classes = 0;
    struct Relation {
        uint32_t a;
        uint32_t b;
        long d;
        auto operator<=>(const Relation &) const = default;
    };
    /// Sorted, closed under (a, b, d) -> (b, a, -d).
    std::vector<Relation> relations;
    /// Labels of the classes, e.g. "X@0".
    std::vector<std::string> labels;

    /// The same graph with a q-times larger unit cell.
    PeriodicGraph supercell(size_t q) const;
};

PeriodicGraph periodic_graph(const MeasurementEnsemble &ens);

/// Components of the infinite frustration graph, each rewritten as a
/// periodic graph over its own translation period.
std::vector<PeriodicGraph> periodic_components(const MeasurementEnsemble &ens);

struct IsomorphismWitness {
    /// Class map, cell offset per class, and whether space is reflected.
    std::vector<uint32_t> class_map;
    std::vector<long> offsets;
    bool reflected = false;
    size_t supercell_a = 1;
    size_t supercell_b = 1;
};

/// Searches class bijections combined with per-class shifts and an optional
/// reflection, over unit cells enlarged by up to `max_supercell`.
std::optional<IsomorphismWitness> graph_isomorphic_1d(const PeriodicGraph &a, const PeriodicGraph &b,
                                                      size_t max_supercell = 2);

/// GF(2) basis of global Pauli strings on n_sites commuting with every
/// placed species.
std::vector<PauliString> find_symmetries(const MeasurementEnsemble &ens, size_t n_sites, Boundary boundary);

struct AveragedFrustration {
    /// mean[l] for l = 0..r-1 (the average is symmetric in l).
    std::vector<double> mean;
    /// Zero when computed exactly.
    std::vector<double> standard_error;
    bool exact = true;
};

/// Sum over species pairs of P_a P_b gamma(a, b, l); exact up to 2^22
/// pairs, otherwise Monte Carlo with `samples` draws per displacement.
AveragedFrustration averaged_frustration(const MeasurementEnsemble &ens, RandomStream *rng = nullptr,
                                         size_t samples = 1000000);

/// 1/2 - 1/2 (2 dq^2 - 1/3)^(r - l) with dq^2 = sum_a (q_a - 1/3)^2.
double closed_form_factorizable(const std::array<double, 4> &q, size_t r, size_t l);

/// Purification of the maximally mixed state simulated with GF(2) vectors
/// over placed ensemble operators only. Assumes the placed operators are
/// algebraically independent. Returns k at t = 0, 1, ..., T (time units of
/// n_sites measurements).
std::vector<size_t> graph_purification(const MeasurementEnsemble &ens, size_t n_sites, size_t time_units,
                                       RandomStream &schedule_rng);

}  // namespace momlab

#endif
