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

#include "momlab/hybrid_circuit.h"

#include <cmath>

#include "momlab/errors.h"

namespace momlab {

std::vector<CliffordGate> sample_lbit_layer(size_t n_sites, double n, Boundary boundary, RandomStream &rng) {
    if (!(n >= 1)) {
        throw std::invalid_argument("l-bit range must be at least 1");
    }
    size_t n_star = static_cast<size_t>(std::floor(n));
    double epsilon = n - n_star;
    if (boundary == Boundary::kPeriodic && 2 * n_star >= n_sites) {
        throw GeometryError("periodic l-bit layer needs n* < L/2");
    }
    std::vector<CliffordGate> gates;
    for (size_t i = 0; i < n_sites; i++) {
        if (rng.coin()) {
            gates.push_back(CliffordGate::p(i));
        }
    }
    for (size_t i = 0; i < n_sites; i++) {
        for (size_t d = 1; d <= n_star; d++) {
            size_t j = i + d;
            if (j >= n_sites) {
                if (boundary == Boundary::kOpen) {
                    continue;
                }
                j -= n_sites;
            }
            double p = d < n_star ? 0.5 : 0.5 * epsilon;
            if (p > 0 && rng.bernoulli(p)) {
                gates.push_back(CliffordGate::cz(i, j));
            }
        }
    }
    return gates;
}

void hybrid_lbit_step(StabilizerTableau &state, const HybridParams &params, RandomStream &rng) {
    if (params.p_x < 0 || params.p_z < 0 || params.p_x + params.p_z > 1 + 1e-12) {
        throw ProbabilityError("need p_x, p_z >= 0 and p_x + p_z <= 1");
    }
    size_t n = state.n_sites();
    for (const auto &g : sample_lbit_layer(n, params.n, params.boundary, rng)) {
        state.apply(g);
    }
    PauliString op(n);
    for (size_t i = 0; i < n; i++) {
        double u = rng.uniform();
        char kind = u < params.p_x ? 'X' : u < params.p_x + params.p_z ? 'Z' : 'I';
        if (kind == 'I') {
            continue;
        }
        op.set(i, kind);
        state.measure(op, rng, false);
        op.set(i, 'I');
    }
}

}  // namespace momlab
