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

#include "momlab/frustration.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "momlab/bit_matrix.h"
#include "momlab/errors.h"

namespace momlab {

namespace {

struct PackedPattern {
    uint64_t x = 0;
    uint64_t z = 0;
};

std::vector<PackedPattern> pack(const MeasurementEnsemble &ens) {
    if (ens.range() > 32) {
        throw RangeError("ensemble range above 32 is not supported by the frustration tools");
    }
    std::vector<PackedPattern> out;
    for (const auto &p : ens.patterns()) {
        PackedPattern q;
        for (size_t k = 0; k < p.n_sites(); k++) {
            q.x |= uint64_t{p.xs().get(k)} << k;
            q.z |= uint64_t{p.zs().get(k)} << k;
        }
        out.push_back(q);
    }
    return out;
}

// a placed at l, b placed at 0.
bool packed_gamma(const PackedPattern &a, const PackedPattern &b, long l) {
    uint64_t ax = a.x, az = a.z, bx = b.x, bz = b.z;
    if (l >= 0) {
        ax <<= l;
        az <<= l;
    } else {
        bx <<= -l;
        bz <<= -l;
    }
    return std::popcount((ax & bz) ^ (az & bx)) & 1;
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        q--;
    }
    return q;
}

}  // namespace

FrustrationTensor::FrustrationTensor(const MeasurementEnsemble &ens)
    : num_species_(ens.num_species()), range_(ens.range()) {
    auto packed = pack(ens);
    size_t width = 2 * range_ - 1;
    bits_.assign(num_species_ * num_species_ * width, 0);
    long r = static_cast<long>(range_);
    for (size_t a = 0; a < num_species_; a++) {
        for (size_t b = 0; b < num_species_; b++) {
            for (long l = -r + 1; l < r; l++) {
                bits_[(a * num_species_ + b) * width + static_cast<size_t>(l + r - 1)] =
                    packed_gamma(packed[a], packed[b], l);
            }
        }
    }
}

size_t FrustrationGraph::num_edges() const {
    size_t total = 0;
    for (const auto &nbrs : adjacency) {
        total += nbrs.size();
    }
    return total / 2;
}

std::string FrustrationGraph::edge_list() const {
    std::ostringstream out;
    for (size_t u = 0; u < adjacency.size(); u++) {
        for (uint32_t v : adjacency[u]) {
            if (u < v) {
                out << species_of(u) << "," << position_of(u) << " " << species_of(v) << "," << position_of(v)
                    << "\n";
            }
        }
    }
    return out.str();
}

FrustrationGraph build_graph(const FrustrationTensor &tensor, size_t n_sites, Boundary boundary) {
    if (n_sites < tensor.range()) {
        throw GeometryError("chain of " + std::to_string(n_sites) + " sites is shorter than the range");
    }
    FrustrationGraph g;
    g.num_species = tensor.num_species();
    g.positions = boundary == Boundary::kOpen ? n_sites - tensor.range() + 1 : n_sites;
    g.n_sites = n_sites;
    g.boundary = boundary;
    g.adjacency.assign(g.num_species * g.positions, {});
    long r = static_cast<long>(tensor.range());
    long L = static_cast<long>(n_sites);
    for (size_t a = 0; a < g.num_species; a++) {
        for (size_t i = 0; i < g.positions; i++) {
            for (size_t b = 0; b < g.num_species; b++) {
                if (boundary == Boundary::kOpen) {
                    long lo = std::max<long>(0, static_cast<long>(i) - r + 1);
                    long hi = std::min<long>(static_cast<long>(g.positions) - 1, static_cast<long>(i) + r - 1);
                    for (long j = lo; j <= hi; j++) {
                        if ((a != b || j != static_cast<long>(i)) && tensor.gamma(a, b, static_cast<long>(i) - j)) {
                            g.adjacency[g.vertex(a, i)].push_back(static_cast<uint32_t>(g.vertex(b, j)));
                        }
                    }
                    continue;
                }
                // Periodic: anticommutation is the XOR over all images.
                std::vector<uint8_t> parity(n_sites, 0);
                for (long l = -r + 1; l < r; l++) {
                    if (tensor.gamma(a, b, l)) {
                        long j = ((static_cast<long>(i) - l) % L + L) % L;
                        parity[j] ^= 1;
                    }
                }
                for (size_t j = 0; j < n_sites; j++) {
                    if (parity[j] && (a != b || j != i)) {
                        g.adjacency[g.vertex(a, i)].push_back(static_cast<uint32_t>(g.vertex(b, j)));
                    }
                }
            }
        }
    }
    for (auto &nbrs : g.adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
    }
    return g;
}

BipartiteVerdict is_bipartite(const FrustrationGraph &g) {
    size_t n = g.num_vertices();
    BipartiteVerdict out;
    std::vector<int8_t> color(n, -1);
    std::vector<uint32_t> parent(n, 0);
    std::vector<uint32_t> depth(n, 0);
    for (size_t root = 0; root < n; root++) {
        if (color[root] >= 0) {
            continue;
        }
        color[root] = 0;
        parent[root] = static_cast<uint32_t>(root);
        std::deque<uint32_t> queue = {static_cast<uint32_t>(root)};
        while (!queue.empty()) {
            uint32_t u = queue.front();
            queue.pop_front();
            for (uint32_t v : g.adjacency[u]) {
                if (color[v] < 0) {
                    color[v] = static_cast<int8_t>(1 - color[u]);
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if (color[v] == color[u]) {
                    // Both tree paths to the common ancestor plus edge (u, v).
                    std::vector<uint32_t> left = {u}, right = {v};
                    uint32_t a = u, b = v;
                    while (a != b) {
                        if (depth[a] >= depth[b]) {
                            a = parent[a];
                            left.push_back(a);
                        } else {
                            b = parent[b];
                            right.push_back(b);
                        }
                    }
                    right.pop_back();
                    out.odd_cycle = left;
                    out.odd_cycle.insert(out.odd_cycle.end(), right.rbegin(), right.rend());
                    // Rotate so the cycle reads u ... ancestor ... v.
                    out.bipartite = false;
                    return out;
                }
            }
        }
    }
    out.bipartite = true;
    out.coloring.assign(color.begin(), color.end());
    return out;
}

size_t analysis_window(size_t range) {
    size_t w = std::max<size_t>(4 * range, 24);
    return (w + 23) / 24 * 24;
}

EnsembleBipartiteVerdict check_bipartite(const MeasurementEnsemble &ens) {
    FrustrationTensor tensor(ens);
    size_t window = analysis_window(ens.range());
    EnsembleBipartiteVerdict out;
    out.ring_graph = build_graph(tensor, window, Boundary::kPeriodic);
    out.ring = is_bipartite(out.ring_graph);
    out.open_window_bipartite = is_bipartite(build_graph(tensor, window, Boundary::kOpen)).bipartite;
    return out;
}

std::vector<std::vector<uint32_t>> connected_components(const FrustrationGraph &g) {
    std::vector<int> comp(g.num_vertices(), -1);
    std::vector<std::vector<uint32_t>> out;
    for (size_t root = 0; root < g.num_vertices(); root++) {
        if (comp[root] >= 0) {
            continue;
        }
        std::vector<uint32_t> members;
        std::vector<uint32_t> stack = {static_cast<uint32_t>(root)};
        comp[root] = static_cast<int>(out.size());
        while (!stack.empty()) {
            uint32_t u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (uint32_t v : g.adjacency[u]) {
                if (comp[v] < 0) {
                    comp[v] = static_cast<int>(out.size());
                    stack.push_back(v);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

PeriodicGraph PeriodicGraph::supercell(size_t q) const {
    PeriodicGraph out;
    out.num_classes = num_classes * q;
    for (size_t a = 0; a < num_classes; a++) {
        for (size_t s = 0; s < q; s++) {
            out.labels.push_back((a < labels.size() ? labels[a] : std::to_string(a)) + "+" + std::to_string(s));
        }
    }
    long Q = static_cast<long>(q);
    for (const auto &rel : relations) {
        for (long s = 0; s < Q; s++) {
            long target = s + rel.d;
            long cell = floor_div(target, Q);
            long sub = target - cell * Q;
            out.relations.push_back({static_cast<uint32_t>(rel.a * q + s), static_cast<uint32_t>(rel.b * q + sub), cell});
        }
    }
    std::sort(out.relations.begin(), out.relations.end());
    return out;
}

PeriodicGraph periodic_graph(const MeasurementEnsemble &ens) {
    FrustrationTensor tensor(ens);
    PeriodicGraph out;
    out.num_classes = ens.num_species();
    long r = static_cast<long>(ens.range());
    for (size_t a = 0; a < out.num_classes; a++) {
        out.labels.push_back(ens.pattern(a).str().substr(1));
        for (size_t b = 0; b < out.num_classes; b++) {
            for (long l = -r + 1; l < r; l++) {
                // (a, i) ~ (b, i - l)
                if (tensor.gamma(a, b, l)) {
                    out.relations.push_back({static_cast<uint32_t>(a), static_cast<uint32_t>(b), -l});
                }
            }
        }
    }
    std::sort(out.relations.begin(), out.relations.end());
    return out;
}

std::vector<PeriodicGraph> periodic_components(const MeasurementEnsemble &ens) {
    MeasurementEnsemble ring_ens = ens;
    ring_ens.set_boundary(Boundary::kPeriodic);
    FrustrationTensor tensor(ring_ens);
    size_t L = analysis_window(ens.range());
    auto g = build_graph(tensor, L, Boundary::kPeriodic);
    auto comps = connected_components(g);
    std::vector<int> comp_of(g.num_vertices());
    for (size_t c = 0; c < comps.size(); c++) {
        for (uint32_t v : comps[c]) {
            comp_of[v] = static_cast<int>(c);
        }
    }
    std::vector<PeriodicGraph> out;
    for (size_t c = 0; c < comps.size(); c++) {
        // Translation period of this component.
        size_t period = L;
        for (size_t t = 1; t < L; t++) {
            if (L % t) {
                continue;
            }
            bool ok = true;
            for (uint32_t v : comps[c]) {
                size_t w = g.vertex(g.species_of(v), (g.position_of(v) + t) % L);
                if (comp_of[w] != static_cast<int>(c)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                period = t;
                break;
            }
        }
        // Classes (species, residue) in this component.
        std::vector<std::pair<size_t, size_t>> classes;
        std::vector<std::vector<int>> class_index(g.num_species, std::vector<int>(period, -1));
        for (size_t a = 0; a < g.num_species; a++) {
            for (size_t rho = 0; rho < period; rho++) {
                if (comp_of[g.vertex(a, rho)] == static_cast<int>(c)) {
                    class_index[a][rho] = static_cast<int>(classes.size());
                    classes.push_back({a, rho});
                }
            }
        }
        PeriodicGraph pg;
        pg.num_classes = classes.size();
        long P = static_cast<long>(period);
        long half = static_cast<long>(L) / 2;
        for (auto [a, rho] : classes) {
            pg.labels.push_back(ens.pattern(a).str().substr(1) + "@" + std::to_string(rho));
            uint32_t src = static_cast<uint32_t>(class_index[a][rho]);
            for (uint32_t w : g.adjacency[g.vertex(a, rho)]) {
                long d = static_cast<long>(g.position_of(w)) - static_cast<long>(rho);
                if (d > half) {
                    d -= static_cast<long>(L);
                }
                if (d <= -half) {
                    d += static_cast<long>(L);
                }
                long j = static_cast<long>(rho) + d;
                long cell = floor_div(j, P);
                size_t rho2 = static_cast<size_t>(j - cell * P);
                int dst = class_index[g.species_of(w)][rho2];
                if (dst < 0) {
                    throw std::logic_error("component closure failed");
                }
                pg.relations.push_back({src, static_cast<uint32_t>(dst), cell});
            }
        }
        std::sort(pg.relations.begin(), pg.relations.end());
        pg.relations.erase(std::unique(pg.relations.begin(), pg.relations.end()), pg.relations.end());
        out.push_back(std::move(pg));
    }
    return out;
}

namespace {

std::optional<IsomorphismWitness> match_same_size(const PeriodicGraph &a, const PeriodicGraph &b, bool reflect) {
    size_t n = a.num_classes;
    if (n != b.num_classes || a.relations.size() != b.relations.size()) {
        return std::nullopt;
    }
    long sigma = reflect ? -1 : 1;
    std::set<std::tuple<uint32_t, uint32_t, long>> rb;
    std::vector<std::vector<std::vector<long>>> b_ds(n, std::vector<std::vector<long>>(n));
    std::vector<size_t> deg_a(n, 0), deg_b(n, 0);
    for (const auto &rel : b.relations) {
        rb.insert({rel.a, rel.b, rel.d});
        b_ds[rel.a][rel.b].push_back(rel.d);
        deg_b[rel.a]++;
    }
    std::vector<std::vector<std::pair<uint32_t, long>>> a_adj(n);
    for (const auto &rel : a.relations) {
        a_adj[rel.a].push_back({rel.b, rel.d});
        deg_a[rel.a]++;
    }
    // Visit classes of `a` in BFS order of the class graph.
    std::vector<uint32_t> order;
    std::vector<bool> placed(n, false);
    for (uint32_t s = 0; s < n; s++) {
        if (placed[s]) {
            continue;
        }
        std::deque<uint32_t> queue = {s};
        placed[s] = true;
        while (!queue.empty()) {
            uint32_t u = queue.front();
            queue.pop_front();
            order.push_back(u);
            for (auto [v, d] : a_adj[u]) {
                if (!placed[v]) {
                    placed[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    std::vector<int> pi(n, -1);
    std::vector<bool> used(n, false);
    std::vector<long> off(n, 0);
    std::vector<bool> assigned(n, false);

    auto consistent = [&](uint32_t u) {
        for (auto [v, d] : a_adj[u]) {
            if (!assigned[v]) {
                continue;
            }
            long mapped = sigma * d + off[v] - off[u];
            if (!rb.count({static_cast<uint32_t>(pi[u]), static_cast<uint32_t>(pi[v]), mapped})) {
                return false;
            }
        }
        return true;
    };

    std::function<bool(size_t)> search = [&](size_t k) -> bool {
        if (k == n) {
            return true;
        }
        uint32_t u = order[k];
        // An already assigned neighbor pins the offset candidates.
        int anchor = -1;
        long anchor_d = 0;
        for (auto [v, d] : a_adj[u]) {
            if (assigned[v]) {
                anchor = static_cast<int>(v);
                anchor_d = d;  // relation (u, v, d)
                break;
            }
        }
        for (uint32_t target = 0; target < n; target++) {
            if (used[target] || deg_a[u] != deg_b[target]) {
                continue;
            }
            std::vector<long> candidates;
            if (anchor < 0) {
                candidates = {0};
            } else {
                // (pi u, pi v, sigma d + off v - off u) must be a relation of b.
                for (long dd : b_ds[target][pi[anchor]]) {
                    candidates.push_back(sigma * anchor_d + off[anchor] - dd);
                }
            }
            for (long o : candidates) {
                pi[u] = static_cast<int>(target);
                off[u] = o;
                assigned[u] = true;
                used[target] = true;
                if (consistent(u) && search(k + 1)) {
                    return true;
                }
                assigned[u] = false;
                used[target] = false;
                pi[u] = -1;
            }
        }
        return false;
    };
    if (!search(0)) {
        return std::nullopt;
    }
    IsomorphismWitness w;
    w.class_map.assign(pi.begin(), pi.end());
    w.offsets = off;
    w.reflected = reflect;
    return w;
}

}  // namespace

std::optional<IsomorphismWitness> graph_isomorphic_1d(const PeriodicGraph &a, const PeriodicGraph &b,
                                                      size_t max_supercell) {
    for (size_t qa = 1; qa <= max_supercell; qa++) {
        for (size_t qb = 1; qb <= max_supercell; qb++) {
            if (a.num_classes * qa != b.num_classes * qb) {
                continue;
            }
            auto sa = qa == 1 ? a : a.supercell(qa);
            auto sb = qb == 1 ? b : b.supercell(qb);
            for (bool reflect : {false, true}) {
                if (auto w = match_same_size(sa, sb, reflect)) {
                    w->supercell_a = qa;
                    w->supercell_b = qb;
                    return w;
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<PauliString> find_symmetries(const MeasurementEnsemble &ens, size_t n_sites, Boundary boundary) {
    MeasurementEnsemble e = ens;
    e.set_boundary(boundary);
    size_t positions = e.num_positions(n_sites);
    // Row for operator O acts on v = (x | z) as the symplectic product.
    BitMatrix m(e.num_species() * positions, 2 * n_sites);
    size_t row = 0;
    for (size_t s = 0; s < e.num_species(); s++) {
        for (size_t i = 0; i < positions; i++, row++) {
            auto p = e.placed(s, i, n_sites);
            for (size_t k = 0; k < n_sites; k++) {
                if (p.zs().get(k)) {
                    m.set(row, k, true);
                }
                if (p.xs().get(k)) {
                    m.set(row, n_sites + k, true);
                }
            }
        }
    }
    std::vector<PauliString> out;
    for (const auto &v : gf2_kernel(m)) {
        PauliString p(n_sites);
        for (size_t k = 0; k < n_sites; k++) {
            p.xs().set(k, v.get(k));
            p.zs().set(k, v.get(n_sites + k));
        }
        out.push_back(std::move(p));
    }
    return out;
}

AveragedFrustration averaged_frustration(const MeasurementEnsemble &ens, RandomStream *rng, size_t samples) {
    auto packed = pack(ens);
    size_t A = ens.num_species();
    size_t r = ens.range();
    AveragedFrustration out;
    out.mean.assign(r, 0);
    out.standard_error.assign(r, 0);
    if (A * A <= (size_t{1} << 22)) {
        for (size_t l = 0; l < r; l++) {
            double total = 0;
            for (size_t a = 0; a < A; a++) {
                double row = 0;
                for (size_t b = 0; b < A; b++) {
                    if (packed_gamma(packed[a], packed[b], static_cast<long>(l))) {
                        row += ens.probability(b);
                    }
                }
                total += ens.probability(a) * row;
            }
            out.mean[l] = total;
        }
        return out;
    }
    if (!rng) {
        throw std::invalid_argument("Monte Carlo averaged frustration needs a random stream");
    }
    out.exact = false;
    for (size_t l = 0; l < r; l++) {
        size_t hits = 0;
        for (size_t k = 0; k < samples; k++) {
            size_t a = ens.sample(r, *rng).species;
            size_t b = ens.sample(r, *rng).species;
            hits += packed_gamma(packed[a], packed[b], static_cast<long>(l));
        }
        double p = static_cast<double>(hits) / samples;
        out.mean[l] = p;
        out.standard_error[l] = std::sqrt(p * (1 - p) / samples);
    }
    return out;
}

double closed_form_factorizable(const std::array<double, 4> &q, size_t r, size_t l) {
    if (l >= r) {
        return 0;
    }
    double dq2 = 0;
    for (int a = 1; a < 4; a++) {
        dq2 += (q[a] - 1.0 / 3) * (q[a] - 1.0 / 3);
    }
    return 0.5 - 0.5 * std::pow(2 * dq2 - 1.0 / 3, static_cast<double>(r - l));
}

std::vector<size_t> graph_purification(const MeasurementEnsemble &ens, size_t n_sites, size_t time_units,
                                       RandomStream &schedule_rng) {
    FrustrationTensor tensor(ens);
    auto g = build_graph(tensor, n_sites, ens.boundary());
    size_t N = g.num_vertices();
    std::vector<BitVector> adjacency(N, BitVector(N));
    for (size_t u = 0; u < N; u++) {
        for (uint32_t v : g.adjacency[u]) {
            adjacency[u].set(v, true);
        }
    }
    // Generator i is the product of placed operators in v[i]; s[i] marks
    // the placed operators it anticommutes with.
    std::vector<BitVector> v;
    std::vector<BitVector> s;
    std::vector<size_t> k_of_t = {n_sites};
    for (size_t t = 0; t < time_units; t++) {
        for (size_t step = 0; step < n_sites; step++) {
            auto place = ens.sample(n_sites, schedule_rng);
            size_t u = g.vertex(place.species, place.position);
            size_t first = v.size();
            for (size_t i = 0; i < v.size(); i++) {
                if (s[i].get(u)) {
                    if (first == v.size()) {
                        first = i;
                    } else {
                        v[i] ^= v[first];
                        s[i] ^= s[first];
                    }
                }
            }
            BitVector e(N);
            e.set(u, true);
            if (first != v.size()) {
                v[first] = e;
                s[first] = adjacency[u];
                continue;
            }
            if (!v.empty()) {
                BitMatrix m(0, N);
                for (const auto &row : v) {
                    m.push_row(row.words());
                }
                if (gf2_row_combination(m, e)) {
                    continue;
                }
            }
            v.push_back(e);
            s.push_back(adjacency[u]);
        }
        k_of_t.push_back(n_sites - std::min(n_sites, v.size()));
    }
    return k_of_t;
}

}  // namespace momlab
