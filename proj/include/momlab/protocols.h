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

#ifndef MOMLAB_PROTOCOLS_H
#define MOMLAB_PROTOCOLS_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "momlab/ensemble.h"
#include "momlab/hybrid_circuit.h"
#include "momlab/rng.h"
#include "momlab/stabilizer_tableau.h"

namespace momlab {

/// One probe event. Indexed observables use "name:index", e.g. "S:12" for
/// the entropy of the first 12 sites or "f:3" for f(x = 3).
struct ObservableRow {
    double t;
    std::string observable;
    double value;
};

struct TrajectoryRecord {
    /// Stream index of the trajectory; together with the "base_seed"
    /// parameter it reproduces every row.
    uint64_t seed = 0;
    /// Flattened run parameters in insertion order.
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<ObservableRow> rows;

    void add(double t, std::string observable, double value);
    void set_param(const std::string &key, std::string value);
    /// Empty string if absent.
    std::string param(const std::string &key) const;

    /// (t, value) pairs of one observable in recorded order.
    std::vector<std::pair<double, double>> series(const std::string &observable) const;
    /// Mean of an observable over probes with t_min <= t <= t_max.
    /// Throws ProtocolError if no probe falls in the window.
    double time_average(const std::string &observable, double t_min, double t_max) const;
};

/// `count` probe times spread evenly over [T/2, T]. For T = 4L this is the
/// 2L..4L steady-state window.
std::vector<double> steady_state_times(double T, size_t count = 16);

struct PureProbes {
    /// Probe times in units of L measurements.
    std::vector<double> times;
    /// "S_half": S of sites [0, L/2).
    bool half_entropy = true;
    /// "S:l" for l = 1..L/2: S of sites [0, l).
    bool entropy_profile = false;
    /// "I3": quarters starting at site 0. Requires L divisible by 4.
    bool tripartite = false;
    /// "P:l": number of clipped-gauge generators of length l.
    bool length_distribution = false;
};

/// Measurement-only dynamics from the all-Z product state: T*L sampled
/// measurements from `ens`. Placements come from rng.substream(1) and
/// outcomes from rng.substream(2).
TrajectoryRecord run_pure(const MeasurementEnsemble &ens, size_t L, double T, const RandomStream &rng,
                          const PureProbes &probes);

/// The hybrid l-bit circuit from the all-Z state; one step per time unit,
/// so probe times are rounded to whole steps.
TrajectoryRecord run_hybrid(const HybridParams &params, size_t L, size_t T, const RandomStream &rng,
                            const PureProbes &probes);

struct PurificationProbes {
    /// Times at which "k" is recorded (k is also recorded at t = 0).
    std::vector<double> times;
    /// Times at which "ell_mean" and "ell_min" (contiguous code distance)
    /// are recorded. These are expensive.
    std::vector<double> code_distance_times;
};

/// Integer times 0..T.
std::vector<double> integer_times(size_t T);

/// Dynamics from the maximally mixed state. Uses the same placement stream
/// as run_pure, so k(t) can be compared with graph_purification run on
/// rng.substream(1). Once the state is pure the remaining probes are filled
/// with k = 0 and zero code distance without further simulation.
TrajectoryRecord run_purification(const MeasurementEnsemble &ens, size_t L, double T, const RandomStream &rng,
                                  const PurificationProbes &probes);

struct ReferenceProbes {
    std::vector<double> times;
    /// Half-widths x of the regions [c - x, c + x], 0 <= x <= (L - 1) / 2.
    std::vector<size_t> xs;
};

/// About `count` half-widths: every x up to 8, then logarithmic spacing up
/// to and including (L - 1) / 2.
std::vector<size_t> reference_x_grid(size_t L, size_t count = 32);

/// `count` evenly spaced times in [0, T], including both ends.
std::vector<double> linear_times(double T, size_t count);

/// Reference-qubit protocol: the center qubit c = (L - 1) / 2 starts in a
/// Bell pair with an extra qubit R, the rest in the all-Z state. Records
/// "S_R", "f:x" = S_R + S_[c-x,c+x] - S_R∪[c-x,c+x] and "ftilde:x" =
/// f / (2 S_R) whenever S_R > 0. Throws GeometryError for even L.
TrajectoryRecord run_reference(const MeasurementEnsemble &ens, size_t L, double T, const RandomStream &rng,
                               const ReferenceProbes &probes);

}  // namespace momlab

#endif
