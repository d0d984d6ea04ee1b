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

#ifndef MOMLAB_DENSE_STATE_H
#define MOMLAB_DENSE_STATE_H

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "momlab/pauli_string.h"
#include "momlab/rng.h"

namespace momlab {

class StabilizerTableau;

/// Brute-force state vector on at most 10 qubits. Basis index bit k holds
/// the computational-basis value of site k.
class DenseState {
   public:
    static constexpr size_t kMaxSites = 10;

    /// |0...0>.
    explicit DenseState(size_t n_sites);

    /// The unique state stabilized by a pure tableau, built by projecting.
    static DenseState from_stabilizers(const StabilizerTableau &state);

    size_t n_sites() const {
        return n_sites_;
    }
    const Eigen::VectorXcd &amplitudes() const {
        return amp_;
    }

    /// op |psi> for op = sign * i^{popcount(x & z)} X^x Z^z.
    Eigen::VectorXcd apply_pauli(const PauliString &op) const;
    double expectation(const PauliString &op) const;

    struct Outcome {
        int outcome;
        double probability;
    };
    /// Born-rule measurement: Prob(s) = (1 + s <op>) / 2.
    Outcome measure(const PauliString &op, RandomStream &rng);
    /// Projects onto outcome s; throws ImpossibleOutcomeError when its
    /// probability is below 1e-10.
    Outcome measure_forced(const PauliString &op, int s);

    void apply_h(size_t q);
    /// diag(1, i).
    void apply_p(size_t q);
    void apply_cz(size_t a, size_t b);

    /// Von Neumann entropy in bits of the reduced state on `region`.
    double entropy(std::span<const size_t> region) const;

   private:
    void check_op(const PauliString &op) const;
    void project(const PauliString &op, int s);

    size_t n_sites_;
    Eigen::VectorXcd amp_;
};

}  // namespace momlab

#endif
