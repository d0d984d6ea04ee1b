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

#include "momlab/ensemble.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "momlab/errors.h"

namespace momlab {

const char *boundary_name(Boundary b) {
    return b == Boundary::kOpen ? "open" : "periodic";
}

Boundary parse_boundary(std::string_view text) {
    if (text == "open") {
        return Boundary::kOpen;
    }
    if (text == "periodic") {
        return Boundary::kPeriodic;
    }
    throw std::invalid_argument("unknown boundary '" + std::string(text) + "' (expected open or periodic)");
}

MeasurementEnsemble::MeasurementEnsemble(std::vector<PauliString> patterns, std::vector<double> weights,
                                         Boundary boundary)
    : boundary_(boundary) {
    if (patterns.size() != weights.size()) {
        throw std::invalid_argument("pattern and weight counts differ");
    }
    double total = 0;
    for (size_t s = 0; s < patterns.size(); s++) {
        if (!(weights[s] >= 0) || !std::isfinite(weights[s])) {
            throw ProbabilityError("species weights must be finite and nonnegative");
        }
        if (patterns[s].is_identity()) {
            throw std::invalid_argument("the identity cannot be an ensemble species");
        }
        range_ = std::max(range_, patterns[s].n_sites());
        total += weights[s];
    }
    if (total <= 0) {
        throw EmptyEnsembleError("ensemble has no species with positive weight");
    }
    double acc = 0;
    for (size_t s = 0; s < patterns.size(); s++) {
        if (weights[s] == 0) {
            continue;
        }
        PauliString p = patterns[s];
        p.set_negative(false);
        patterns_.push_back(PauliString::placed(p, 0, range_, false));
        probs_.push_back(weights[s] / total);
        acc += weights[s] / total;
        cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
}

size_t MeasurementEnsemble::num_positions(size_t n_sites) const {
    if (n_sites < range_) {
        throw GeometryError("system of " + std::to_string(n_sites) + " sites is shorter than the ensemble range " +
                            std::to_string(range_));
    }
    return boundary_ == Boundary::kOpen ? n_sites - range_ + 1 : n_sites;
}

Placement MeasurementEnsemble::sample(size_t n_sites, RandomStream &rng) const {
    size_t positions = num_positions(n_sites);
    size_t species = 0;
    if (patterns_.size() > 1) {
        double u = rng.uniform();
        species = std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin();
        species = std::min(species, patterns_.size() - 1);
    }
    return {species, static_cast<size_t>(rng.below(positions))};
}

PauliString MeasurementEnsemble::placed(size_t species, size_t position, size_t n_sites) const {
    return PauliString::placed(patterns_[species], position, n_sites, boundary_ == Boundary::kPeriodic);
}

void MeasurementEnsemble::place_into(PauliString &out, size_t species, size_t position, size_t n) const {
    auto xw = out.xs().words();
    auto zw = out.zs().words();
    std::fill(xw.begin(), xw.end(), 0);
    std::fill(zw.begin(), zw.end(), 0);
    const PauliString &p = patterns_[species];
    for (size_t k = 0; k < range_; k++) {
        size_t site = position + k;
        if (site >= n) {
            site -= n;
        }
        if (p.xs().get(k)) {
            out.xs().set(site, true);
        }
        if (p.zs().get(k)) {
            out.zs().set(site, true);
        }
    }
    out.set_negative(false);
}

std::string MeasurementEnsemble::to_text() const {
    std::ostringstream out;
    out.precision(17);
    for (size_t s = 0; s < patterns_.size(); s++) {
        out << patterns_[s].str().substr(1) << " " << probs_[s] << "\n";
    }
    return out.str();
}

MeasurementEnsemble build_factorizable(const FactorizableSpec &spec, Boundary boundary) {
    if (spec.r == 0 || spec.r > 12) {
        throw std::invalid_argument("factorizable range must be between 1 and 12");
    }
    double sum = 0;
    for (double v : spec.q) {
        if (!(v >= 0)) {
            throw ProbabilityError("q entries must be nonnegative");
        }
        sum += v;
    }
    if (std::abs(sum - 1) > 1e-9) {
        throw ProbabilityError("q entries must sum to 1");
    }
    std::vector<PauliString> patterns;
    std::vector<double> weights;
    size_t total = size_t{1} << (2 * spec.r);
    for (size_t code = 1; code < total; code++) {
        double w = 1;
        PauliString p(spec.r);
        for (size_t k = 0; k < spec.r && w > 0; k++) {
            size_t letter = (code >> (2 * k)) & 3;
            w *= spec.q[letter];
            p.set(k, "IXYZ"[letter]);
        }
        if (w > 0) {
            patterns.push_back(std::move(p));
            weights.push_back(w);
        }
    }
    if (patterns.empty()) {
        throw EmptyEnsembleError("q puts all weight on the identity");
    }
    MeasurementEnsemble ens(std::move(patterns), std::move(weights), boundary);
    double d2 = 0;
    for (int a = 1; a < 4; a++) {
        d2 += (spec.q[a] - 1.0 / 3) * (spec.q[a] - 1.0 / 3);
    }
    ens.delta_q = std::sqrt(d2);
    std::ostringstream desc;
    desc << "factorizable r=" << spec.r << " q=(" << spec.q[0] << "," << spec.q[1] << "," << spec.q[2] << ","
         << spec.q[3] << ")";
    ens.description = desc.str();
    return ens;
}

MeasurementEnsemble build_lbit(const LBitSpec &spec, Boundary boundary) {
    if (spec.n_star < 1) {
        throw std::invalid_argument("l-bit n* must be at least 1");
    }
    if (!(spec.epsilon >= 0 && spec.epsilon < 1)) {
        throw ProbabilityError("l-bit epsilon must lie in [0, 1)");
    }
    if (!(spec.p_z >= 0 && spec.p_z <= 1)) {
        throw ProbabilityError("p_z must lie in [0, 1]");
    }
    // Tail sites -t..t around the center, t = n* - 1 when epsilon is zero.
    size_t t = spec.epsilon > 0 ? spec.n_star : spec.n_star - 1;
    size_t width = 2 * t + 1;
    if (width > 25) {
        throw std::invalid_argument("l-bit range too large");
    }
    std::vector<PauliString> patterns;
    std::vector<double> weights;
    size_t tails = 2 * t + 1;
    for (size_t code = 0; code < (size_t{1} << tails); code++) {
        PauliString p(width);
        p.set(t, 'X');
        for (size_t k = 0; k < width; k++) {
            if ((code >> k) & 1) {
                p.set(k, p.at(k) == 'X' ? 'Y' : 'Z');
            }
        }
        double w = 1 - spec.p_z;
        if (spec.epsilon > 0) {
            w *= std::pow(spec.epsilon, double((code & 1) + ((code >> (width - 1)) & 1)));
        }
        patterns.push_back(std::move(p));
        weights.push_back(w);
    }
    if (spec.p_z > 0) {
        // Normalize the string weights to 1 - p_z first.
        double sum = 0;
        for (double w : weights) {
            sum += w;
        }
        for (double &w : weights) {
            w *= (1 - spec.p_z) / sum;
        }
        PauliString z(width);
        z.set(t, 'Z');
        patterns.push_back(std::move(z));
        weights.push_back(spec.p_z);
    }
    MeasurementEnsemble ens(std::move(patterns), std::move(weights), boundary);
    std::ostringstream desc;
    desc << "lbit n=" << spec.n_star + spec.epsilon << " p_z=" << spec.p_z;
    ens.description = desc.str();
    return ens;
}

bool commutes_with_translates(const PauliString &p) {
    size_t n = p.n_sites();
    PauliString wide = PauliString::placed(p, 0, 2 * n, false);
    for (size_t d = 1; d < n; d++) {
        if (symplectic_product(wide, PauliString::placed(p, d, 2 * n, false))) {
            return false;
        }
    }
    return true;
}

MeasurementEnsemble build_bipartite(const BipartiteSpec &spec, Boundary boundary) {
    if (!(spec.delta >= -1 && spec.delta <= 1)) {
        throw ProbabilityError("bias must lie in [-1, 1]");
    }
    for (const PauliString *p : {&spec.a, &spec.b}) {
        if (!commutes_with_translates(*p)) {
            throw NotBipartiteError("species " + p->str() + " does not commute with its own translates");
        }
    }
    MeasurementEnsemble ens({spec.a, spec.b}, {(1 + spec.delta) / 2, (1 - spec.delta) / 2}, boundary);
    std::ostringstream desc;
    desc << "bipartite {" << spec.a.str().substr(1) << "," << spec.b.str().substr(1) << "} delta=" << spec.delta;
    ens.description = desc.str();
    return ens;
}

MeasurementEnsemble parse_custom(std::string_view text, Boundary boundary) {
    std::vector<PauliString> patterns;
    std::vector<double> weights;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        line_number++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        std::string pattern, weight_text, extra;
        if (!(fields >> pattern)) {
            continue;
        }
        if (!(fields >> weight_text)) {
            throw ParseError("expected 'PATTERN weight'", line_number);
        }
        if (fields >> extra) {
            throw ParseError("unexpected text after the weight: '" + extra + "'", line_number);
        }
        PauliString p;
        try {
            p = PauliString::from_text(pattern);
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what(), line_number);
        }
        if (p.is_identity()) {
            throw ParseError("species must not be the identity", line_number);
        }
        double w;
        size_t used = 0;
        try {
            w = std::stod(weight_text, &used);
        } catch (const std::exception &) {
            throw ParseError("bad weight '" + weight_text + "'", line_number);
        }
        if (used != weight_text.size() || !(w >= 0) || !std::isfinite(w)) {
            throw ParseError("bad weight '" + weight_text + "'", line_number);
        }
        patterns.push_back(p);
        weights.push_back(w);
    }
    if (patterns.empty()) {
        throw EmptyEnsembleError("ensemble text has no species");
    }
    MeasurementEnsemble ens(std::move(patterns), std::move(weights), boundary);
    ens.description = "custom";
    return ens;
}

}  // namespace momlab
