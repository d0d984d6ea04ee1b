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

#include "momlab/runner.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "momlab/errors.h"
#include "momlab/trajectory_io.h"

namespace momlab {

std::array<double, 4> resolve_q(const std::array<double, 4> &q_in) {
    std::array<double, 4> q = q_in;
    int rest = -1;
    double total = 0;
    for (int k = 0; k < 4; k++) {
        if (q[k] < 0) {
            if (rest >= 0) {
                throw ProbabilityError("at most one factorizable probability may be left free");
            }
            rest = k;
        } else {
            total += q[k];
        }
    }
    if (rest >= 0) {
        if (total > 1 + 1e-12) {
            throw ProbabilityError("factorizable probabilities exceed 1");
        }
        q[rest] = std::max(0.0, 1 - total);
    }
    return q;
}

MeasurementEnsemble build_ensemble(const EnsembleConfig &config) {
    if (config.kind == "factorizable") {
        auto q = resolve_q(config.q);
        return build_factorizable({config.r, q}, config.boundary);
    }
    if (config.kind == "lbit") {
        double whole = std::floor(config.n + 1e-9);
        double eps = config.n - whole;
        if (eps < 1e-9) {
            eps = 0;
        }
        if (whole < 1) {
            throw std::invalid_argument("l-bit range n must be at least 1");
        }
        return build_lbit({static_cast<size_t>(whole), eps, config.p_z}, config.boundary);
    }
    if (config.kind == "bipartite") {
        return build_bipartite(
            {PauliString::from_text(config.a), PauliString::from_text(config.b), config.delta}, config.boundary);
    }
    if (config.kind == "custom") {
        return parse_custom(config.custom, config.boundary);
    }
    throw std::invalid_argument("unknown ensemble kind \"" + config.kind + "\"");
}

static const std::set<std::string> kProtocols = {"pure", "purification", "reference", "hybrid"};
static const std::set<std::string> kParameters = {"q_i", "q_x", "q_y", "q_z", "n", "p_z", "delta", "p_x"};

static const std::set<std::string> &observables_for(const std::string &protocol) {
    static const std::set<std::string> pure = {"S_half", "S_profile", "I3", "P"};
    static const std::set<std::string> purification = {"k", "ell"};
    static const std::set<std::string> reference = {"f"};
    if (protocol == "purification") {
        return purification;
    }
    if (protocol == "reference") {
        return reference;
    }
    return pure;
}

static bool wants(const RunSpec &spec, const std::string &name) {
    return std::find(spec.observables.begin(), spec.observables.end(), name) != spec.observables.end();
}

size_t RunSpec::num_points() const {
    return parameter.empty() ? 1 : values.size();
}

size_t RunSpec::num_jobs() const {
    return num_points() * sizes.size() * seeds;
}

double RunSpec::run_length(size_t L) const {
    double length = T > 0 ? T : t_factor * static_cast<double>(L);
    if (protocol == "hybrid") {
        length = std::round(length);
    }
    return length;
}

void RunSpec::validate() const {
    if (!kProtocols.count(protocol)) {
        throw std::invalid_argument("unknown protocol \"" + protocol + "\"");
    }
    if (sizes.empty()) {
        throw std::invalid_argument("no system sizes given");
    }
    if (seeds == 0) {
        throw std::invalid_argument("seed count must be positive");
    }
    if (!(T > 0) && !(t_factor > 0)) {
        throw std::invalid_argument("run length must be positive");
    }
    if (probes == 0) {
        throw std::invalid_argument("probe count must be positive");
    }
    if (parameter.empty() != values.empty()) {
        throw std::invalid_argument("a sweep needs both a parameter and its values");
    }
    if (!parameter.empty() && !kParameters.count(parameter)) {
        throw std::invalid_argument("unknown sweep parameter \"" + parameter + "\"");
    }
    if (observables.empty()) {
        throw std::invalid_argument("no observables requested");
    }
    const auto &allowed = observables_for(protocol);
    for (const auto &name : observables) {
        if (!allowed.count(name)) {
            throw std::invalid_argument("observable \"" + name + "\" is not available for protocol " + protocol);
        }
    }
    for (size_t L : sizes) {
        if (wants(*this, "I3") && L % 4) {
            throw GeometryError("I3 needs L divisible by 4, got " + std::to_string(L));
        }
        if (protocol == "reference" && L % 2 == 0) {
            throw GeometryError("the reference protocol needs odd L, got " + std::to_string(L));
        }
    }
    for (size_t point = 0; point < num_points(); point++) {
        RunSpec at = spec_at_point(*this, point);
        if (protocol == "hybrid") {
            if (!(at.p_x >= 0 && at.ensemble.p_z >= 0 && at.p_x + at.ensemble.p_z <= 1)) {
                throw ProbabilityError("hybrid needs p_x, p_z >= 0 and p_x + p_z <= 1");
            }
            continue;
        }
        auto ens = build_ensemble(at.ensemble);
        for (size_t L : sizes) {
            ens.num_positions(L);
        }
    }
}

static nlohmann::json ensemble_json(const EnsembleConfig &c) {
    return {{"kind", c.kind}, {"r", c.r},         {"q", c.q},           {"n", c.n},
            {"p_z", c.p_z},   {"a", c.a},         {"b", c.b},           {"delta", c.delta},
            {"custom", c.custom}, {"boundary", boundary_name(c.boundary)}};
}

nlohmann::json to_json(const RunSpec &spec) {
    return {{"protocol", spec.protocol},
            {"ensemble", ensemble_json(spec.ensemble)},
            {"p_x", spec.p_x},
            {"sizes", spec.sizes},
            {"t_factor", spec.t_factor},
            {"T", spec.T},
            {"seeds", spec.seeds},
            {"base_seed", spec.base_seed},
            {"parameter", spec.parameter},
            {"values", spec.values},
            {"observables", spec.observables},
            {"probes", spec.probes},
            {"distance_probes", spec.distance_probes},
            {"x_points", spec.x_points}};
}

template <typename T>
static void read_key(const nlohmann::json &j, const char *key, T &out) {
    if (j.contains(key)) {
        j.at(key).get_to(out);
    }
}

static void reject_unknown(const nlohmann::json &j, const std::set<std::string> &known, const std::string &where) {
    for (const auto &[key, value] : j.items()) {
        if (!known.count(key)) {
            throw std::invalid_argument("unknown key \"" + key + "\" in " + where);
        }
    }
}

RunSpec run_spec_from_json(const nlohmann::json &j) {
    RunSpec spec;
    reject_unknown(j,
                   {"protocol", "ensemble", "p_x", "sizes", "t_factor", "T", "seeds", "base_seed", "parameter",
                    "values", "observables", "probes", "distance_probes", "x_points"},
                   "run spec");
    read_key(j, "protocol", spec.protocol);
    read_key(j, "p_x", spec.p_x);
    read_key(j, "sizes", spec.sizes);
    read_key(j, "t_factor", spec.t_factor);
    read_key(j, "T", spec.T);
    read_key(j, "seeds", spec.seeds);
    read_key(j, "base_seed", spec.base_seed);
    read_key(j, "parameter", spec.parameter);
    read_key(j, "values", spec.values);
    read_key(j, "observables", spec.observables);
    read_key(j, "probes", spec.probes);
    read_key(j, "distance_probes", spec.distance_probes);
    read_key(j, "x_points", spec.x_points);
    if (j.contains("ensemble")) {
        const auto &e = j.at("ensemble");
        reject_unknown(e, {"kind", "r", "q", "n", "p_z", "a", "b", "delta", "custom", "boundary"}, "ensemble");
        auto &c = spec.ensemble;
        read_key(e, "kind", c.kind);
        read_key(e, "r", c.r);
        read_key(e, "q", c.q);
        read_key(e, "n", c.n);
        read_key(e, "p_z", c.p_z);
        read_key(e, "a", c.a);
        read_key(e, "b", c.b);
        read_key(e, "delta", c.delta);
        read_key(e, "custom", c.custom);
        if (e.contains("boundary")) {
            c.boundary = parse_boundary(e.at("boundary").get<std::string>());
        }
    }
    return spec;
}

std::vector<Job> expand_jobs(const RunSpec &spec) {
    std::vector<Job> jobs;
    jobs.reserve(spec.num_jobs());
    for (size_t point = 0; point < spec.num_points(); point++) {
        for (size_t L : spec.sizes) {
            for (size_t seed = 0; seed < spec.seeds; seed++) {
                jobs.push_back({point, L, seed});
            }
        }
    }
    return jobs;
}

RunSpec spec_at_point(const RunSpec &spec, size_t point) {
    RunSpec at = spec;
    if (spec.parameter.empty()) {
        return at;
    }
    double v = spec.values.at(point);
    const std::string &p = spec.parameter;
    if (p == "q_i") {
        at.ensemble.q[0] = v;
    } else if (p == "q_x") {
        at.ensemble.q[1] = v;
    } else if (p == "q_y") {
        at.ensemble.q[2] = v;
    } else if (p == "q_z") {
        at.ensemble.q[3] = v;
    } else if (p == "n") {
        at.ensemble.n = v;
    } else if (p == "p_z") {
        at.ensemble.p_z = v;
    } else if (p == "delta") {
        at.ensemble.delta = v;
    } else if (p == "p_x") {
        at.p_x = v;
    }
    return at;
}

RandomStream job_stream(const RunSpec &spec, const Job &job) {
    return RandomStream(spec.base_seed, job.seed).substream((uint64_t{job.point} << 32) | job.L);
}

/// Resolved ensemble parameters, so every record names its model point.
static void record_config(TrajectoryRecord &out, const EnsembleConfig &c) {
    if (c.kind == "factorizable") {
        auto q = resolve_q(c.q);
        out.set_param("r", std::to_string(c.r));
        out.set_param("q_i", format_number(q[0]));
        out.set_param("q_x", format_number(q[1]));
        out.set_param("q_y", format_number(q[2]));
        out.set_param("q_z", format_number(q[3]));
    } else if (c.kind == "lbit") {
        out.set_param("n", format_number(c.n));
        out.set_param("p_z", format_number(c.p_z));
    } else if (c.kind == "bipartite") {
        out.set_param("a", c.a);
        out.set_param("b", c.b);
        out.set_param("delta", format_number(c.delta));
    }
}

TrajectoryRecord run_job(const RunSpec &spec, const Job &job) {
    RunSpec at = spec_at_point(spec, job.point);
    RandomStream rng = job_stream(spec, job);
    size_t L = job.L;
    double T = at.run_length(L);
    TrajectoryRecord rec;
    if (at.protocol == "pure" || at.protocol == "hybrid") {
        PureProbes probes;
        probes.times = steady_state_times(T, at.probes);
        probes.half_entropy = wants(at, "S_half");
        probes.entropy_profile = wants(at, "S_profile");
        probes.tripartite = wants(at, "I3");
        probes.length_distribution = wants(at, "P");
        if (at.protocol == "pure") {
            rec = run_pure(build_ensemble(at.ensemble), L, T, rng, probes);
        } else {
            for (double &t : probes.times) {
                t = std::round(t);
            }
            HybridParams params{at.ensemble.n, at.p_x, at.ensemble.p_z, at.ensemble.boundary};
            rec = run_hybrid(params, L, static_cast<size_t>(T), rng, probes);
        }
    } else if (at.protocol == "purification") {
        PurificationProbes probes;
        probes.times = linear_times(T, at.probes);
        if (wants(at, "ell")) {
            probes.code_distance_times = linear_times(T, at.distance_probes);
        }
        rec = run_purification(build_ensemble(at.ensemble), L, T, rng, probes);
    } else {
        ReferenceProbes probes;
        probes.times = linear_times(T, at.probes);
        probes.xs = reference_x_grid(L, at.x_points);
        rec = run_reference(build_ensemble(at.ensemble), L, T, rng, probes);
    }
    TrajectoryRecord out;
    out.seed = job.seed;
    out.rows = std::move(rec.rows);
    out.set_param("protocol", at.protocol);
    for (auto &[k, v] : rec.params) {
        out.set_param(k, v);
    }
    if (at.protocol != "hybrid") {
        record_config(out, at.ensemble);
    }
    out.set_param("L", std::to_string(L));
    out.set_param("T", format_number(T));
    out.set_param("base_seed", std::to_string(at.base_seed));
    return out;
}

size_t resolve_workers(size_t requested) {
    if (const char *env = std::getenv("MOMLAB_WORKERS")) {
        char *end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) {
            return static_cast<size_t>(n);
        }
        throw std::invalid_argument("MOMLAB_WORKERS must be a positive integer");
    }
    if (requested > 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TrajectoryRecord> run_all(const RunSpec &spec, size_t workers) {
    spec.validate();
    auto jobs = expand_jobs(spec);
    std::vector<TrajectoryRecord> records(jobs.size());
    std::atomic<size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto work = [&] {
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= jobs.size()) {
                return;
            }
            try {
                records[k] = run_job(spec, jobs[k]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = jobs.size();
            }
        }
    };
    workers = std::max<size_t>(1, std::min(workers, jobs.size()));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return records;
}

}  // namespace momlab
