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

#ifndef MOMLAB_RUNNER_H
#define MOMLAB_RUNNER_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "momlab/ensemble.h"
#include "momlab/protocols.h"

namespace momlab {

inline constexpr const char *kVersion = "momlab 0.1.0";

/// Which measurement ensemble to build and with what parameters. Only the
/// fields relevant to `kind` are used.
struct EnsembleConfig {
    /// "factorizable", "lbit", "bipartite" or "custom".
    std::string kind = "factorizable";
    size_t r = 3;
    /// Probabilities of I, X, Y, Z. At most one entry may be negative,
    /// meaning "whatever makes the total 1".
    std::array<double, 4> q = {0, 1.0 / 3, 1.0 / 3, 1.0 / 3};
    /// l-bit range; fractional values n* + epsilon are allowed.
    double n = 4;
    double p_z = 0;
    std::string a = "X";
    std::string b = "ZZ";
    double delta = 0;
    /// Ensemble file contents for kind "custom".
    std::string custom;
    Boundary boundary = Boundary::kPeriodic;
};

/// Replaces the single negative entry (if any) by 1 minus the others.
std::array<double, 4> resolve_q(const std::array<double, 4> &q);

MeasurementEnsemble build_ensemble(const EnsembleConfig &config);

/// Everything needed to reproduce a run or sweep.
struct RunSpec {
    /// "pure", "purification", "reference" or "hybrid".
    std::string protocol = "pure";
    EnsembleConfig ensemble;
    /// Hybrid circuit parameters (protocol "hybrid"); n and p_z are shared
    /// with the ensemble fields above.
    double p_x = 0.3;

    std::vector<size_t> sizes = {64};
    /// Run length T = t_factor * L, unless `T` is positive.
    double t_factor = 4;
    double T = 0;
    size_t seeds = 10;
    uint64_t base_seed = 1;

    /// Optional sweep: parameter name and values. Names: q_i, q_x, q_y,
    /// q_z, n, p_z, delta, p_x.
    std::string parameter;
    std::vector<double> values;

    /// Observables to probe. pure/hybrid: S_half, S_profile, I3, P.
    /// purification: k, ell. reference: f.
    std::vector<std::string> observables = {"S_half"};
    /// Number of probe times (steady-state window for pure and hybrid,
    /// [0, T] otherwise).
    size_t probes = 16;
    /// Code-distance probes for purification with "ell".
    size_t distance_probes = 8;
    /// Number of half-widths for the reference protocol.
    size_t x_points = 32;

    /// Throws std::invalid_argument (or an Error subclass) describing the
    /// first problem found.
    void validate() const;
    double run_length(size_t L) const;
    size_t num_points() const;
    size_t num_jobs() const;
};

nlohmann::json to_json(const RunSpec &spec);
/// Missing keys take their defaults; unknown keys are rejected.
RunSpec run_spec_from_json(const nlohmann::json &j);

/// One (parameter value, size, seed) unit of work.
struct Job {
    size_t point;
    size_t L;
    size_t seed;
};

/// Jobs in merge order: parameter values outermost, then sizes, then seeds.
std::vector<Job> expand_jobs(const RunSpec &spec);

/// The ensemble config with the sweep parameter of `point` applied.
RunSpec spec_at_point(const RunSpec &spec, size_t point);

/// The random stream of a job: RandomStream(base_seed, seed) followed by
/// substream((point << 32) | L). Depends only on these values, so adding
/// seeds or points leaves existing trajectories unchanged.
RandomStream job_stream(const RunSpec &spec, const Job &job);

TrajectoryRecord run_job(const RunSpec &spec, const Job &job);

/// Number of workers: MOMLAB_WORKERS if set, else `requested` if nonzero,
/// else the hardware concurrency.
size_t resolve_workers(size_t requested);

/// Runs all jobs on a pool of `workers` threads and returns the records in
/// job order.
std::vector<TrajectoryRecord> run_all(const RunSpec &spec, size_t workers);

}  // namespace momlab

#endif
