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

#ifndef MOMLAB_HYBRID_CIRCUIT_H
#define MOMLAB_HYBRID_CIRCUIT_H

#include <vector>

#include "momlab/ensemble.h"
#include "momlab/rng.h"
#include "momlab/stabilizer_tableau.h"

namespace momlab {

struct HybridParams {
    /// Fractional range n = n* + epsilon.
    double n;
    double p_x;
    double p_z;
    Boundary boundary = Boundary::kOpen;
};

/// Samples one layer of the diagonal l-bit unitary: P_i with probability
/// 1/2, CZ_ij with probability 1/2 for |i-j| < n*, epsilon/2 for |i-j| = n*.
std::vector<CliffordGate> sample_lbit_layer(size_t n_sites, double n, Boundary boundary, RandomStream &rng);

/// One time step: a sampled l-bit layer followed by, on every site, an X
/// measurement with probability p_x or a Z measurement with probability p_z.
/// Throws ProbabilityError when p_x + p_z > 1.
void hybrid_lbit_step(StabilizerTableau &state, const HybridParams &params, RandomStream &rng);

}  // namespace momlab

#endif
