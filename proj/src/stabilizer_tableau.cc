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

#include "momlab/stabilizer_tableau.h"

#include <sstream>
#include <stdexcept>

#include "momlab/bit_matrix.h"
#include "momlab/errors.h"

namespace momlab {

void PauliRows::push_back(const PauliString &p) {
    auto xw = p.xs().words();
    auto zw = p.zs().words();
    x_.insert(x_.end(), xw.begin(), xw.end());
    z_.insert(z_.end(), zw.begin(), zw.end());
    negative_.push_back(p.negative());
}

void PauliRows::pop_back() {
    x_.resize(x_.size() - stride_);
    z_.resize(z_.size() - stride_);
    negative_.pop_back();
}

void PauliRows::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    for (size_t w = 0; w < stride_; w++) {
        std::swap(x_[a * stride_ + w], x_[b * stride_ + w]);
        std::swap(z_[a * stride_ + w], z_[b * stride_ + w]);
    }
    std::swap(negative_[a], negative_[b]);
}

void PauliRows::copy_row(size_t src, size_t dst) {
    for (size_t w = 0; w < stride_; w++) {
        x_[dst * stride_ + w] = x_[src * stride_ + w];
        z_[dst * stride_ + w] = z_[src * stride_ + w];
    }
    negative_[dst] = negative_[src];
}

PauliString PauliRows::get(size_t r) const {
    PauliString p(n_sites_);
    auto xw = p.xs().words();
    auto zw = p.zs().words();
    for (size_t w = 0; w < stride_; w++) {
        xw[w] = x_[r * stride_ + w];
        zw[w] = z_[r * stride_ + w];
    }
    p.set_negative(negative_[r]);
    return p;
}

void PauliRows::multiply_into(size_t src, size_t dst) {
    uint8_t log_i = mul_log_i_inplace(xs(dst), zs(dst), xs(src), zs(src));
    log_i = static_cast<uint8_t>((log_i + 2 * (negative_[dst] ^ negative_[src])) & 3);
    negative_[dst] = log_i == 2;
}

void PauliRows::xor_into(size_t src, size_t dst) {
    for (size_t w = 0; w < stride_; w++) {
        x_[dst * stride_ + w] ^= x_[src * stride_ + w];
        z_[dst * stride_ + w] ^= z_[src * stride_ + w];
    }
}

void PauliRows::apply_h(size_t q) {
    size_t w = q / kWordBits;
    uint64_t m = uint64_t{1} << (q % kWordBits);
    for (size_t r = 0; r < size(); r++) {
        uint64_t &x = x_[r * stride_ + w];
        uint64_t &z = z_[r * stride_ + w];
        bool bx = x & m;
        bool bz = z & m;
        negative_[r] ^= bx & bz;
        if (bx != bz) {
            x ^= m;
            z ^= m;
        }
    }
}

void PauliRows::apply_s(size_t q) {
    size_t w = q / kWordBits;
    uint64_t m = uint64_t{1} << (q % kWordBits);
    for (size_t r = 0; r < size(); r++) {
        uint64_t x = x_[r * stride_ + w];
        uint64_t &z = z_[r * stride_ + w];
        negative_[r] ^= (x & z & m) != 0;
        z ^= x & m;
    }
}

void PauliRows::apply_cz(size_t a, size_t b) {
    size_t wa = a / kWordBits;
    size_t wb = b / kWordBits;
    uint64_t ma = uint64_t{1} << (a % kWordBits);
    uint64_t mb = uint64_t{1} << (b % kWordBits);
    for (size_t r = 0; r < size(); r++) {
        bool xa = x_[r * stride_ + wa] & ma;
        bool xb = x_[r * stride_ + wb] & mb;
        bool za = z_[r * stride_ + wa] & ma;
        bool zb = z_[r * stride_ + wb] & mb;
        negative_[r] ^= xa & xb & (za ^ zb);
        if (xb) {
            z_[r * stride_ + wa] ^= ma;
        }
        if (xa) {
            z_[r * stride_ + wb] ^= mb;
        }
    }
}

namespace {

// dst[d] <- dst[d] * src[s] on the bits only.
void xor_row_from(PauliRows &dst, size_t d, const PauliRows &src, size_t s) {
    auto dx = dst.xs(d);
    auto dz = dst.zs(d);
    auto sx = src.xs(s);
    auto sz = src.zs(s);
    for (size_t w = 0; w < dx.size(); w++) {
        dx[w] ^= sx[w];
        dz[w] ^= sz[w];
    }
}

void copy_row_from(PauliRows &dst, size_t d, const PauliRows &src, size_t s) {
    auto dx = dst.xs(d);
    auto dz = dst.zs(d);
    auto sx = src.xs(s);
    auto sz = src.zs(s);
    for (size_t w = 0; w < dx.size(); w++) {
        dx[w] = sx[w];
        dz[w] = sz[w];
    }
    dst.set_negative(d, src.negative(s));
}

bool rows_anticommute(const PauliRows &a, size_t i, const PauliRows &b, size_t j) {
    return a.anticommutes(i, b.xs(j), b.zs(j), 0, a.stride());
}

}  // namespace

const char *case_name(MeasurementCase c) {
    switch (c) {
        case MeasurementCase::kAnticommutesOne:
            return "1";
        case MeasurementCase::kAnticommutesMany:
            return "2";
        case MeasurementCase::kIndependent:
            return "3A";
        case MeasurementCase::kDependent:
            return "3B";
    }
    return "?";
}

StabilizerTableau::StabilizerTableau(size_t n_sites, Tracking tracking)
    : n_sites_(n_sites),
      tracking_(tracking),
      gens_(n_sites),
      destabs_(n_sites),
      logical_x_(n_sites),
      logical_z_(n_sites) {
    if (tracking_ == Tracking::kFull) {
        for (size_t q = 0; q < n_sites; q++) {
            PauliString x(n_sites);
            x.set(q, 'X');
            PauliString z(n_sites);
            z.set(q, 'Z');
            logical_x_.push_back(x);
            logical_z_.push_back(z);
        }
    }
}

StabilizerTableau StabilizerTableau::all_z(size_t n_sites, Tracking tracking) {
    StabilizerTableau t(n_sites, Tracking::kGeneratorsOnly);
    t.tracking_ = tracking;
    for (size_t q = 0; q < n_sites; q++) {
        PauliString z(n_sites);
        z.set(q, 'Z');
        t.gens_.push_back(z);
        if (tracking == Tracking::kFull) {
            PauliString x(n_sites);
            x.set(q, 'X');
            t.destabs_.push_back(x);
        }
    }
    return t;
}

StabilizerTableau StabilizerTableau::from_generators(size_t n_sites, const std::vector<PauliString> &generators,
                                                     Tracking tracking) {
    StabilizerTableau t(n_sites, tracking);
    for (const auto &g : generators) {
        if (g.n_sites() != n_sites) {
            throw DimensionError("generator " + g.str() + " does not have " + std::to_string(n_sites) + " sites");
        }
        if (g.is_identity()) {
            throw std::invalid_argument("identity generator");
        }
        for (size_t i = 0; i < t.gens_.size(); i++) {
            if (t.gens_.anticommutes(i, g.xs().words(), g.zs().words(), 0, t.gens_.stride())) {
                throw std::invalid_argument("generator " + g.str() + " anticommutes with " + t.gens_.get(i).str());
            }
        }
        MeasurementResult r;
        try {
            r = t.measure_forced(g, +1);
        } catch (const ImpossibleOutcomeError &) {
            throw std::invalid_argument("generator " + g.str() + " is dependent on earlier generators");
        }
        if (r.kind != MeasurementCase::kIndependent) {
            throw std::invalid_argument("generator " + g.str() + " is dependent on earlier generators");
        }
    }
    return t;
}

StabilizerTableau StabilizerTableau::from_text(std::string_view text, size_t n_sites, Tracking tracking) {
    std::vector<PauliString> gens;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) {
            continue;
        }
        size_t b = line.find_last_not_of(" \t\r");
        gens.push_back(PauliString::from_text(std::string_view(line).substr(a, b - a + 1)));
    }
    return from_generators(n_sites, gens, tracking);
}

std::string StabilizerTableau::to_text() const {
    std::string out;
    for (size_t i = 0; i < gens_.size(); i++) {
        out += gens_.get(i).str();
        out += '\n';
    }
    return out;
}

std::vector<PauliString> StabilizerTableau::generators() const {
    std::vector<PauliString> out;
    for (size_t i = 0; i < gens_.size(); i++) {
        out.push_back(gens_.get(i));
    }
    return out;
}

void StabilizerTableau::check_op(const PauliString &op) const {
    if (op.n_sites() != n_sites_) {
        throw DimensionError("operator " + op.str() + " does not act on " + std::to_string(n_sites_) + " sites");
    }
    if (op.is_identity()) {
        throw InvalidMeasurementError("cannot measure the identity");
    }
}

int StabilizerTableau::group_sign(const PauliString &op, const std::vector<size_t> *anti_destab) const {
    std::vector<size_t> members;
    if (anti_destab) {
        members = *anti_destab;
    } else {
        size_t stride = gens_.stride();
        BitMatrix m(gens_.size(), 2 * stride * kWordBits);
        for (size_t i = 0; i < gens_.size(); i++) {
            auto row = m.row(i);
            auto gx = gens_.xs(i);
            auto gz = gens_.zs(i);
            for (size_t w = 0; w < stride; w++) {
                row[w] = gx[w];
                row[stride + w] = gz[w];
            }
        }
        BitVector target(m.cols());
        auto tw = target.words();
        for (size_t w = 0; w < stride; w++) {
            tw[w] = op.xs().words()[w];
            tw[stride + w] = op.zs().words()[w];
        }
        auto combo = gf2_row_combination(m, target);
        if (!combo) {
            return 0;
        }
        for (size_t i = 0; i < gens_.size(); i++) {
            if (combo->get(i)) {
                members.push_back(i);
            }
        }
    }
    PauliString acc(n_sites_);
    unsigned log_i = 0;
    for (size_t i : members) {
        log_i += mul_log_i_inplace(acc.xs().words(), acc.zs().words(), gens_.xs(i), gens_.zs(i));
        log_i += 2 * gens_.negative(i);
    }
    if (acc.xs() != op.xs() || acc.zs() != op.zs()) {
        throw std::logic_error("stabilizer group decomposition failed for " + op.str());
    }
    return (log_i & 3) == 0 ? +1 : -1;
}

MeasurementResult StabilizerTableau::measure(const PauliString &op, RandomStream &rng, bool want_sign) {
    return measure_impl(op, std::nullopt, &rng, want_sign);
}

MeasurementResult StabilizerTableau::measure_forced(const PauliString &op, int outcome) {
    if (outcome != 1 && outcome != -1) {
        throw std::invalid_argument("forced outcome must be +1 or -1");
    }
    return measure_impl(op, outcome, nullptr, true);
}

MeasurementResult StabilizerTableau::measure_impl(const PauliString &op, std::optional<int> forced,
                                                  RandomStream *rng, bool want_sign) {
    check_op(op);
    auto ox = op.xs().words();
    auto oz = op.zs().words();
    size_t w_lo = 0;
    size_t w_hi = ox.size();
    while (w_lo < w_hi && !(ox[w_lo] | oz[w_lo])) {
        w_lo++;
    }
    while (w_hi > w_lo && !(ox[w_hi - 1] | oz[w_hi - 1])) {
        w_hi--;
    }

    auto draw = [&]() -> int {
        if (forced) {
            return *forced;
        }
        return rng->coin() ? -1 : +1;
    };
    // Stores outcome * op in row r of gens_.
    auto store_op = [&](size_t r, int outcome) {
        auto gx = gens_.xs(r);
        auto gz = gens_.zs(r);
        for (size_t w = 0; w < gx.size(); w++) {
            gx[w] = ox[w];
            gz[w] = oz[w];
        }
        gens_.set_negative(r, (outcome < 0) != op.negative());
    };

    size_t first = gens_.size();
    size_t num_anti = 0;
    for (size_t i = 0; i < gens_.size(); i++) {
        if (gens_.anticommutes(i, ox, oz, w_lo, w_hi)) {
            if (first == gens_.size()) {
                first = i;
            } else {
                gens_.multiply_into(first, i);
            }
            num_anti++;
        }
    }

    if (num_anti) {
        size_t p = first;
        if (tracking_ == Tracking::kFull) {
            for (size_t i = 0; i < destabs_.size(); i++) {
                if (i != p && destabs_.anticommutes(i, ox, oz, w_lo, w_hi)) {
                    xor_row_from(destabs_, i, gens_, p);
                }
            }
            for (size_t j = 0; j < logical_x_.size(); j++) {
                if (logical_x_.anticommutes(j, ox, oz, w_lo, w_hi)) {
                    xor_row_from(logical_x_, j, gens_, p);
                }
                if (logical_z_.anticommutes(j, ox, oz, w_lo, w_hi)) {
                    xor_row_from(logical_z_, j, gens_, p);
                }
            }
            copy_row_from(destabs_, p, gens_, p);
            destabs_.set_negative(p, false);
        }
        int outcome = draw();
        store_op(p, outcome);
        return {outcome, num_anti == 1 ? MeasurementCase::kAnticommutesOne : MeasurementCase::kAnticommutesMany, 0.5};
    }

    auto finish_deterministic = [&](int sign) -> MeasurementResult {
        int outcome = sign * op.sign();
        if (forced && *forced != outcome) {
            throw ImpossibleOutcomeError("outcome " + std::to_string(*forced) + " of " + op.str() +
                                         " has probability zero");
        }
        return {outcome, MeasurementCase::kDependent, 1.0};
    };

    if (tracking_ == Tracking::kFull) {
        size_t pair = logical_x_.size();
        bool use_x = false;
        for (size_t j = 0; j < logical_x_.size(); j++) {
            bool ax = logical_x_.anticommutes(j, ox, oz, w_lo, w_hi);
            bool az = logical_z_.anticommutes(j, ox, oz, w_lo, w_hi);
            if (ax || az) {
                pair = j;
                use_x = ax;
                break;
            }
        }
        if (pair == logical_x_.size()) {
            if (!want_sign && !forced) {
                return {0, MeasurementCase::kDependent, 1.0};
            }
            std::vector<size_t> anti;
            for (size_t i = 0; i < destabs_.size(); i++) {
                if (destabs_.anticommutes(i, ox, oz, w_lo, w_hi)) {
                    anti.push_back(i);
                }
            }
            return finish_deterministic(group_sign(op, &anti));
        }
        // The chosen logical P becomes the destabilizer of the new generator;
        // its partner is dropped. Everything else anticommuting with op gets
        // multiplied by P.
        PauliRows &own = use_x ? logical_x_ : logical_z_;
        PauliRows &partner = use_x ? logical_z_ : logical_x_;
        for (size_t i = 0; i < destabs_.size(); i++) {
            if (destabs_.anticommutes(i, ox, oz, w_lo, w_hi)) {
                xor_row_from(destabs_, i, own, pair);
            }
        }
        for (size_t j = 0; j < logical_x_.size(); j++) {
            if (j == pair) {
                continue;
            }
            if (logical_x_.anticommutes(j, ox, oz, w_lo, w_hi)) {
                xor_row_from(logical_x_, j, own, pair);
            }
            if (logical_z_.anticommutes(j, ox, oz, w_lo, w_hi)) {
                xor_row_from(logical_z_, j, own, pair);
            }
        }
        destabs_.push_back(own.get(pair));
        size_t last = logical_x_.size() - 1;
        own.swap_rows(pair, last);
        partner.swap_rows(pair, last);
        logical_x_.pop_back();
        logical_z_.pop_back();
        int outcome = draw();
        gens_.push_back(op);
        store_op(gens_.size() - 1, outcome);
        return {outcome, MeasurementCase::kIndependent, 0.5};
    }

    if (is_pure() && !want_sign && !forced) {
        return {0, MeasurementCase::kDependent, 1.0};
    }
    int sign = group_sign(op, nullptr);
    if (sign) {
        return finish_deterministic(sign);
    }
    int outcome = draw();
    gens_.push_back(op);
    store_op(gens_.size() - 1, outcome);
    return {outcome, MeasurementCase::kIndependent, 0.5};
}

double StabilizerTableau::probability_plus(const PauliString &op) const {
    check_op(op);
    auto ox = op.xs().words();
    auto oz = op.zs().words();
    size_t stride = gens_.stride();
    for (size_t i = 0; i < gens_.size(); i++) {
        if (gens_.anticommutes(i, ox, oz, 0, stride)) {
            return 0.5;
        }
    }
    int sign;
    if (tracking_ == Tracking::kFull) {
        for (size_t j = 0; j < logical_x_.size(); j++) {
            if (logical_x_.anticommutes(j, ox, oz, 0, stride) || logical_z_.anticommutes(j, ox, oz, 0, stride)) {
                return 0.5;
            }
        }
        std::vector<size_t> anti;
        for (size_t i = 0; i < destabs_.size(); i++) {
            if (destabs_.anticommutes(i, ox, oz, 0, stride)) {
                anti.push_back(i);
            }
        }
        sign = group_sign(op, &anti);
    } else {
        sign = group_sign(op, nullptr);
        if (!sign) {
            return 0.5;
        }
    }
    return sign * op.sign() > 0 ? 1.0 : 0.0;
}

void StabilizerTableau::apply(const CliffordGate &gate) {
    switch (gate.kind) {
        case CliffordGate::Kind::kH:
            apply_h(gate.a);
            break;
        case CliffordGate::Kind::kP:
            apply_p(gate.a);
            break;
        case CliffordGate::Kind::kCZ:
            apply_cz(gate.a, gate.b);
            break;
    }
}

static void check_site(size_t q, size_t n) {
    if (q >= n) {
        throw DimensionError("site " + std::to_string(q) + " out of range for " + std::to_string(n) + " sites");
    }
}

void StabilizerTableau::apply_h(size_t q) {
    check_site(q, n_sites_);
    for (PauliRows *rows : {&gens_, &destabs_, &logical_x_, &logical_z_}) {
        rows->apply_h(q);
    }
}

void StabilizerTableau::apply_p(size_t q) {
    check_site(q, n_sites_);
    for (PauliRows *rows : {&gens_, &destabs_, &logical_x_, &logical_z_}) {
        rows->apply_s(q);
    }
}

void StabilizerTableau::apply_cz(size_t a, size_t b) {
    check_site(a, n_sites_);
    check_site(b, n_sites_);
    if (a == b) {
        throw std::invalid_argument("CZ needs two distinct sites");
    }
    for (PauliRows *rows : {&gens_, &destabs_, &logical_x_, &logical_z_}) {
        rows->apply_cz(a, b);
    }
}

std::string StabilizerTableau::invariant_violation() const {
    for (size_t i = 0; i < gens_.size(); i++) {
        for (size_t j = i + 1; j < gens_.size(); j++) {
            if (rows_anticommute(gens_, i, gens_, j)) {
                return "generators " + std::to_string(i) + " and " + std::to_string(j) + " anticommute";
            }
        }
    }
    size_t stride = gens_.stride();
    BitMatrix m(gens_.size(), 2 * stride * kWordBits);
    for (size_t i = 0; i < gens_.size(); i++) {
        for (size_t w = 0; w < stride; w++) {
            m.row(i)[w] = gens_.xs(i)[w];
            m.row(i)[stride + w] = gens_.zs(i)[w];
        }
    }
    if (gf2_rank(m) != gens_.size()) {
        return "generators are dependent";
    }
    if (tracking_ != Tracking::kFull) {
        return "";
    }
    if (destabs_.size() != gens_.size() || logical_x_.size() != n_sites_ - gens_.size() ||
        logical_z_.size() != logical_x_.size()) {
        return "tracked row counts are inconsistent";
    }
    // Collect all 2n rows with their intended partner and check the pairing.
    std::vector<std::pair<const PauliRows *, size_t>> rows;
    std::vector<size_t> partner;
    size_t g = gens_.size();
    size_t k = logical_x_.size();
    for (size_t i = 0; i < g; i++) {
        rows.push_back({&gens_, i});
        partner.push_back(g + i);
    }
    for (size_t i = 0; i < g; i++) {
        rows.push_back({&destabs_, i});
        partner.push_back(i);
    }
    for (size_t j = 0; j < k; j++) {
        rows.push_back({&logical_x_, j});
        partner.push_back(2 * g + k + j);
    }
    for (size_t j = 0; j < k; j++) {
        rows.push_back({&logical_z_, j});
        partner.push_back(2 * g + j);
    }
    for (size_t a = 0; a < rows.size(); a++) {
        for (size_t b = a + 1; b < rows.size(); b++) {
            bool anti = rows_anticommute(*rows[a].first, rows[a].second, *rows[b].first, rows[b].second);
            if (anti != (partner[a] == b)) {
                return "symplectic pairing violated between tracked rows " + std::to_string(a) + " and " +
                       std::to_string(b);
            }
        }
    }
    return "";
}

}  // namespace momlab
