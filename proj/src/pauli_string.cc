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

#include "momlab/pauli_string.h"

#include <ostream>
#include <stdexcept>

#include "momlab/errors.h"

namespace momlab {

PauliString::PauliString(size_t n_sites) : xs_(n_sites), zs_(n_sites) {
}

PauliString PauliString::from_text(std::string_view text) {
    bool negative = false;
    if (text.starts_with("+")) {
        text.remove_prefix(1);
    } else if (text.starts_with("-")) {
        negative = true;
        text.remove_prefix(1);
    } else if (text.starts_with("−")) {
        negative = true;
        text.remove_prefix(std::string_view("−").size());
    }
    PauliString result(text.size());
    for (size_t k = 0; k < text.size(); k++) {
        char c = text[k];
        if (c == '_') {
            c = 'I';
        }
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("unknown Pauli character '" + std::string(1, c) + "' in \"" +
                                        std::string(text) + "\"");
        }
        result.set(k, c);
    }
    result.negative_ = negative;
    return result;
}

PauliString PauliString::placed(const PauliString &pattern, size_t start, size_t n_sites, bool periodic) {
    if (!periodic && start + pattern.n_sites() > n_sites) {
        throw GeometryError("pattern of length " + std::to_string(pattern.n_sites()) + " at " +
                            std::to_string(start) + " does not fit in " + std::to_string(n_sites) + " sites");
    }
    if (pattern.n_sites() > n_sites) {
        throw GeometryError("pattern longer than the chain");
    }
    PauliString result(n_sites);
    for (size_t k = 0; k < pattern.n_sites(); k++) {
        size_t site = (start + k) % n_sites;
        if (pattern.xs_.get(k)) {
            result.xs_.set(site, true);
        }
        if (pattern.zs_.get(k)) {
            result.zs_.set(site, true);
        }
    }
    result.negative_ = pattern.negative_;
    return result;
}

char PauliString::at(size_t site) const {
    static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
    return kLetters[xs_.get(site) | (zs_.get(site) << 1)];
}

void PauliString::set(size_t site, char pauli) {
    switch (pauli) {
        case 'I':
            xs_.set(site, false);
            zs_.set(site, false);
            break;
        case 'X':
            xs_.set(site, true);
            zs_.set(site, false);
            break;
        case 'Y':
            xs_.set(site, true);
            zs_.set(site, true);
            break;
        case 'Z':
            xs_.set(site, false);
            zs_.set(site, true);
            break;
        default:
            throw std::invalid_argument("unknown Pauli character");
    }
}

size_t PauliString::weight() const {
    size_t total = 0;
    auto xw = xs_.words();
    auto zw = zs_.words();
    for (size_t w = 0; w < xw.size(); w++) {
        total += std::popcount(xw[w] | zw[w]);
    }
    return total;
}

std::optional<std::pair<size_t, size_t>> PauliString::support_bounds() const {
    auto xw = xs_.words();
    auto zw = zs_.words();
    std::optional<size_t> lo;
    size_t hi = 0;
    for (size_t w = 0; w < xw.size(); w++) {
        uint64_t m = xw[w] | zw[w];
        if (!m) {
            continue;
        }
        if (!lo) {
            lo = w * kWordBits + std::countr_zero(m);
        }
        hi = w * kWordBits + (kWordBits - 1 - std::countl_zero(m));
    }
    if (!lo) {
        return std::nullopt;
    }
    return std::make_pair(*lo, hi);
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(n_sites() + 1);
    out.push_back(negative_ ? '-' : '+');
    for (size_t k = 0; k < n_sites(); k++) {
        out.push_back(at(k));
    }
    return out;
}

std::ostream &operator<<(std::ostream &out, const PauliString &p) {
    return out << p.str();
}

static void check_same_length(const PauliString &a, const PauliString &b) {
    if (a.n_sites() != b.n_sites()) {
        throw DimensionError("Pauli strings have different lengths: " + std::to_string(a.n_sites()) + " vs " +
                             std::to_string(b.n_sites()));
    }
}

bool symplectic_product(const PauliString &a, const PauliString &b) {
    check_same_length(a, b);
    auto ax = a.xs().words();
    auto az = a.zs().words();
    auto bx = b.xs().words();
    auto bz = b.zs().words();
    uint64_t acc = 0;
    for (size_t w = 0; w < ax.size(); w++) {
        acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
    }
    return std::popcount(acc) & 1;
}

uint8_t mul_log_i_inplace(
    std::span<uint64_t> x1, std::span<uint64_t> z1, std::span<const uint64_t> x2, std::span<const uint64_t> z2) {
    // Per bit position, (cnt2, cnt1) is a 2-bit counter of the i-exponents
    // contributed by anticommuting sites (+1 for XY, YZ, ZX and +3 otherwise).
    uint64_t cnt1 = 0;
    uint64_t cnt2 = 0;
    for (size_t w = 0; w < x1.size(); w++) {
        uint64_t old_x1 = x1[w];
        uint64_t old_z1 = z1[w];
        uint64_t new_x = old_x1 ^ x2[w];
        uint64_t new_z = old_z1 ^ z2[w];
        x1[w] = new_x;
        z1[w] = new_z;
        uint64_t x1z2 = old_x1 & z2[w];
        uint64_t anti = (x2[w] & old_z1) ^ x1z2;
        cnt2 ^= (cnt1 ^ new_x ^ new_z ^ x1z2) & anti;
        cnt1 ^= anti;
    }
    return static_cast<uint8_t>((std::popcount(cnt1) + 2 * std::popcount(cnt2)) & 3);
}

PhasedPauli multiply_with_phase(const PauliString &a, const PauliString &b) {
    check_same_length(a, b);
    PauliString out = a;
    uint8_t log_i = mul_log_i_inplace(out.xs().words(), out.zs().words(), b.xs().words(), b.zs().words());
    log_i = static_cast<uint8_t>((log_i + 2 * (a.negative() ^ b.negative())) & 3);
    out.set_negative(false);
    return {std::move(out), log_i};
}

PauliString multiply(const PauliString &a, const PauliString &b) {
    auto [product, log_i] = multiply_with_phase(a, b);
    if (log_i & 1) {
        throw std::invalid_argument("product of anticommuting Pauli strings " + a.str() + " and " + b.str() +
                                    " is not Hermitian");
    }
    product.set_negative(log_i == 2);
    return product;
}

}  // namespace momlab
