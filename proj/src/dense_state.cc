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

#include "momlab/dense_state.h"

#include <cmath>

#include "momlab/errors.h"
#include "momlab/stabilizer_tableau.h"

namespace momlab {

DenseState::DenseState(size_t n_sites) : n_sites_(n_sites) {
    if (n_sites > kMaxSites) {
        throw DimensionError("dense states are limited to " + std::to_string(kMaxSites) + " qubits");
    }
    amp_ = Eigen::VectorXcd::Zero(size_t{1} << n_sites);
    amp_[0] = 1;
}

DenseState DenseState::from_stabilizers(const StabilizerTableau &state) {
    if (!state.is_pure()) {
        throw UnsupportedGaugeError("dense conversion needs a pure stabilizer state");
    }
    DenseState out(state.n_sites());
    // Project a generic vector; it has overlap with every stabilizer state.
    size_t dim = out.amp_.size();
    for (size_t i = 0; i < dim; i++) {
        out.amp_[i] = std::complex<double>(1.0 + 0.37 * i, 0.11 * i * i - 0.5);
    }
    out.amp_.normalize();
    for (const auto &g : state.generators()) {
        out.amp_ = 0.5 * (out.amp_ + out.apply_pauli(g));
        out.amp_.normalize();
    }
    return out;
}

void DenseState::check_op(const PauliString &op) const {
    if (op.n_sites() != n_sites_) {
        throw DimensionError("operator size does not match the dense state");
    }
    if (op.is_identity()) {
        throw InvalidMeasurementError("cannot measure the identity");
    }
}

Eigen::VectorXcd DenseState::apply_pauli(const PauliString &op) const {
    uint64_t xmask = 0;
    uint64_t zmask = 0;
    for (size_t k = 0; k < n_sites_; k++) {
        xmask |= uint64_t{op.xs().get(k)} << k;
        zmask |= uint64_t{op.zs().get(k)} << k;
    }
    static const std::complex<double> kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    int log_i = std::popcount(xmask & zmask) + (op.negative() ? 2 : 0);
    std::complex<double> phase = kPhase[log_i & 3];
    Eigen::VectorXcd out(amp_.size());
    for (uint64_t b = 0; b < static_cast<uint64_t>(amp_.size()); b++) {
        double zsign = (std::popcount(b & zmask) & 1) ? -1.0 : 1.0;
        out[b ^ xmask] = phase * zsign * amp_[b];
    }
    return out;
}

double DenseState::expectation(const PauliString &op) const {
    return amp_.dot(apply_pauli(op)).real();
}

void DenseState::project(const PauliString &op, int s) {
    amp_ = 0.5 * (amp_ + static_cast<double>(s) * apply_pauli(op));
    amp_.normalize();
}

DenseState::Outcome DenseState::measure(const PauliString &op, RandomStream &rng) {
    check_op(op);
    double p_plus = (1 + expectation(op)) / 2;
    int s = rng.uniform() < p_plus ? +1 : -1;
    double p = s > 0 ? p_plus : 1 - p_plus;
    project(op, s);
    return {s, p};
}

DenseState::Outcome DenseState::measure_forced(const PauliString &op, int s) {
    check_op(op);
    double p = (1 + s * expectation(op)) / 2;
    if (p < 1e-10) {
        throw ImpossibleOutcomeError("forced outcome has probability " + std::to_string(p));
    }
    project(op, s);
    return {s, p};
}

void DenseState::apply_h(size_t q) {
    const double r = 1 / std::sqrt(2.0);
    uint64_t m = uint64_t{1} << q;
    for (uint64_t b = 0; b < static_cast<uint64_t>(amp_.size()); b++) {
        if (!(b & m)) {
            auto a0 = amp_[b];
            auto a1 = amp_[b | m];
            amp_[b] = r * (a0 + a1);
            amp_[b | m] = r * (a0 - a1);
        }
    }
}

void DenseState::apply_p(size_t q) {
    uint64_t m = uint64_t{1} << q;
    for (uint64_t b = 0; b < static_cast<uint64_t>(amp_.size()); b++) {
        if (b & m) {
            amp_[b] *= std::complex<double>(0, 1);
        }
    }
}

void DenseState::apply_cz(size_t a, size_t b) {
    uint64_t m = (uint64_t{1} << a) | (uint64_t{1} << b);
    for (uint64_t k = 0; k < static_cast<uint64_t>(amp_.size()); k++) {
        if ((k & m) == m) {
            amp_[k] = -amp_[k];
        }
    }
}

double DenseState::entropy(std::span<const size_t> region) const {
    uint64_t amask = 0;
    for (size_t s : region) {
        amask |= uint64_t{1} << s;
    }
    size_t na = std::popcount(amask);
    if (na == 0 || na == n_sites_) {
        return 0;
    }
    // M[a][b] = amplitude with region bits a and complement bits b.
    size_t da = size_t{1} << na;
    size_t db = size_t{1} << (n_sites_ - na);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(da, db);
    for (uint64_t k = 0; k < static_cast<uint64_t>(amp_.size()); k++) {
        size_t ia = 0, ib = 0, ca = 0, cb = 0;
        for (size_t s = 0; s < n_sites_; s++) {
            uint64_t bit = (k >> s) & 1;
            if ((amask >> s) & 1) {
                ia |= bit << ca++;
            } else {
                ib |= bit << cb++;
            }
        }
        m(ia, ib) = amp_[k];
    }
    Eigen::MatrixXcd rho = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double total = 0;
    for (double lambda : solver.eigenvalues()) {
        if (lambda > 1e-14) {
            total -= lambda * std::log2(lambda);
        }
    }
    return total;
}

}  // namespace momlab
