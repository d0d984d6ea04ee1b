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

#include "momlab/protocols.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "momlab/errors.h"
#include "momlab/observables.h"

namespace momlab {

void TrajectoryRecord::add(double t, std::string observable, double value) {
    if (!std::isfinite(value)) {
        throw ProtocolError("non-finite value for observable " + observable);
    }
    if (!rows.empty() && t < rows.back().t) {
        throw ProtocolError("probe times must be nondecreasing");
    }
    rows.push_back({t, std::move(observable), value});
}

void TrajectoryRecord::set_param(const std::string &key, std::string value) {
    for (auto &[k, v] : params) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    params.emplace_back(key, std::move(value));
}

std::string TrajectoryRecord::param(const std::string &key) const {
    for (const auto &[k, v] : params) {
        if (k == key) {
            return v;
        }
    }
    return "";
}

std::vector<std::pair<double, double>> TrajectoryRecord::series(const std::string &observable) const {
    std::vector<std::pair<double, double>> out;
    for (const auto &row : rows) {
        if (row.observable == observable) {
            out.emplace_back(row.t, row.value);
        }
    }
    return out;
}

double TrajectoryRecord::time_average(const std::string &observable, double t_min, double t_max) const {
    double total = 0;
    size_t count = 0;
    for (const auto &row : rows) {
        if (row.observable == observable && row.t >= t_min && row.t <= t_max) {
            total += row.value;
            count++;
        }
    }
    if (count == 0) {
        throw ProtocolError("no probe of " + observable + " in the averaging window");
    }
    return total / static_cast<double>(count);
}

std::vector<double> steady_state_times(double T, size_t count) {
    std::vector<double> out;
    if (count == 1) {
        return {T};
    }
    for (size_t k = 0; k < count; k++) {
        out.push_back(T / 2 + (T / 2) * static_cast<double>(k) / static_cast<double>(count - 1));
    }
    return out;
}

std::vector<double> integer_times(size_t T) {
    std::vector<double> out(T + 1);
    std::iota(out.begin(), out.end(), 0.0);
    return out;
}

std::vector<double> linear_times(double T, size_t count) {
    if (count < 2) {
        return {T};
    }
    std::vector<double> out;
    for (size_t k = 0; k < count; k++) {
        out.push_back(T * static_cast<double>(k) / static_cast<double>(count - 1));
    }
    return out;
}

std::vector<size_t> reference_x_grid(size_t L, size_t count) {
    size_t half = (L - 1) / 2;
    std::vector<size_t> out;
    for (size_t x = 0; x <= std::min<size_t>(8, half); x++) {
        out.push_back(x);
    }
    if (half > 8 && count > out.size()) {
        size_t remaining = count - out.size();
        double ratio = std::log(static_cast<double>(half) / 8.0);
        for (size_t k = 1; k <= remaining; k++) {
            auto x = static_cast<size_t>(std::lround(8.0 * std::exp(ratio * k / remaining)));
            if (x > out.back()) {
                out.push_back(x);
            }
        }
        if (out.back() != half) {
            out.push_back(half);
        }
    }
    return out;
}

namespace {

void record_ensemble(TrajectoryRecord &rec, const MeasurementEnsemble &ens) {
    rec.set_param("ensemble", ens.description);
    rec.set_param("boundary", boundary_name(ens.boundary()));
}

/// Converts probe times to measurement counts, checking they are sorted and
/// within the run.
std::vector<size_t> probe_steps(const std::vector<double> &times, size_t per_unit, size_t total) {
    std::vector<size_t> steps;
    for (double t : times) {
        if (t < 0) {
            throw ProtocolError("negative probe time");
        }
        auto m = static_cast<size_t>(std::llround(t * static_cast<double>(per_unit)));
        if (m > total) {
            throw ProtocolError("probe time beyond the end of the run");
        }
        if (!steps.empty() && m < steps.back()) {
            throw ProtocolError("probe times must be nondecreasing");
        }
        steps.push_back(m);
    }
    return steps;
}

void probe_pure_state(const StabilizerTableau &state, double t, const PureProbes &probes, TrajectoryRecord &rec) {
    size_t L = state.n_sites();
    if (probes.half_entropy || probes.entropy_profile) {
        auto profile = interval_entropy_profile(state, 0);
        if (probes.half_entropy) {
            rec.add(t, "S_half", static_cast<double>(profile[L / 2]));
        }
        if (probes.entropy_profile) {
            for (size_t l = 1; l <= L / 2; l++) {
                rec.add(t, "S:" + std::to_string(l), static_cast<double>(profile[l]));
            }
        }
    }
    if (probes.tripartite) {
        rec.add(t, "I3", tripartite_mutual_information(state, 0));
    }
    if (probes.length_distribution) {
        if (!state.is_pure()) {
            throw ProtocolError("length distribution requested on a mixed state");
        }
        auto gauge = clip(state);
        for (size_t l = 1; l < gauge.length_histogram.size(); l++) {
            if (gauge.length_histogram[l]) {
                rec.add(t, "P:" + std::to_string(l), static_cast<double>(gauge.length_histogram[l]));
            }
        }
    }
}

/// Runs `total` sampled measurements, calling probe(t) at each probe step.
/// `stop` lets the caller end the simulation early; remaining probes are
/// then delivered without further measurements.
void measurement_loop(const MeasurementEnsemble &ens, StabilizerTableau &state, size_t chain_length,
                      const std::vector<double> &times, size_t total, const RandomStream &rng,
                      const std::function<void(double)> &probe, const std::function<bool()> &stop = {}) {
    auto steps = probe_steps(times, chain_length, total);
    RandomStream schedule = rng.substream(1);
    RandomStream outcomes = rng.substream(2);
    PauliString op(state.n_sites());
    size_t next = 0;
    for (size_t m = 0;; m++) {
        while (next < steps.size() && steps[next] == m) {
            probe(times[next++]);
        }
        if (m == total || next == steps.size()) {
            break;
        }
        if (stop && stop()) {
            while (next < steps.size()) {
                probe(times[next++]);
            }
            break;
        }
        auto place = ens.sample(chain_length, schedule);
        ens.place_into(op, place.species, place.position, chain_length);
        state.measure(op, outcomes, false);
    }
}

}  // namespace

TrajectoryRecord run_pure(const MeasurementEnsemble &ens, size_t L, double T, const RandomStream &rng,
                          const PureProbes &probes) {
    if (probes.tripartite && L % 4) {
        throw GeometryError("I3 needs L divisible by 4");
    }
    ens.num_positions(L);
    TrajectoryRecord rec;
    auto state = StabilizerTableau::all_z(L, Tracking::kGeneratorsOnly);
    auto total = static_cast<size_t>(std::llround(T * static_cast<double>(L)));
    measurement_loop(ens, state, L, probes.times, total, rng,
                     [&](double t) { probe_pure_state(state, t, probes, rec); });
    record_ensemble(rec, ens);
    return rec;
}

TrajectoryRecord run_hybrid(const HybridParams &params, size_t L, size_t T, const RandomStream &rng,
                            const PureProbes &probes) {
    if (probes.tripartite && L % 4) {
        throw GeometryError("I3 needs L divisible by 4");
    }
    TrajectoryRecord rec;
    auto state = StabilizerTableau::all_z(L, Tracking::kGeneratorsOnly);
    auto steps = probe_steps(probes.times, 1, T);
    RandomStream stream = rng.substream(3);
    size_t next = 0;
    for (size_t step = 0;; step++) {
        while (next < steps.size() && steps[next] == step) {
            probe_pure_state(state, probes.times[next++], probes, rec);
        }
        if (step == T || next == steps.size()) {
            break;
        }
        hybrid_lbit_step(state, params, stream);
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", params.n);
    rec.set_param("n", buf);
    std::snprintf(buf, sizeof(buf), "%g", params.p_x);
    rec.set_param("p_x", buf);
    std::snprintf(buf, sizeof(buf), "%g", params.p_z);
    rec.set_param("p_z", buf);
    rec.set_param("boundary", boundary_name(params.boundary));
    return rec;
}

TrajectoryRecord run_purification(const MeasurementEnsemble &ens, size_t L, double T, const RandomStream &rng,
                                  const PurificationProbes &probes) {
    ens.num_positions(L);
    bool periodic = ens.boundary() == Boundary::kPeriodic;
    // Merge both schedules; each event says which probes fire.
    std::vector<std::pair<double, int>> events;
    for (double t : probes.times) {
        events.emplace_back(t, 1);
    }
    for (double t : probes.code_distance_times) {
        events.emplace_back(t, 2);
    }
    std::stable_sort(events.begin(), events.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    std::vector<double> times;
    std::vector<int> masks;
    for (const auto &[t, mask] : events) {
        if (!times.empty() && times.back() == t) {
            masks.back() |= mask;
        } else {
            times.push_back(t);
            masks.push_back(mask);
        }
    }
    TrajectoryRecord rec;
    StabilizerTableau state(L, Tracking::kFull);
    auto total = static_cast<size_t>(std::llround(T * static_cast<double>(L)));
    size_t event = 0;
    measurement_loop(
        ens, state, L, times, total, rng,
        [&](double t) {
            int mask = masks[event++];
            if (mask & 1) {
                rec.add(t, "k", static_cast<double>(state.num_encoded()));
            }
            if (mask & 2) {
                if (state.is_pure()) {
                    rec.add(t, "ell_mean", 0);
                    rec.add(t, "ell_min", 0);
                } else {
                    auto d = contiguous_code_distance(state, periodic);
                    rec.add(t, "ell_mean", d.mean);
                    rec.add(t, "ell_min", static_cast<double>(d.min));
                }
            }
        },
        [&] { return state.is_pure(); });
    record_ensemble(rec, ens);
    return rec;
}

TrajectoryRecord run_reference(const MeasurementEnsemble &ens, size_t L, double T, const RandomStream &rng,
                               const ReferenceProbes &probes) {
    if (L % 2 == 0) {
        throw GeometryError("the reference protocol needs odd L, got " + std::to_string(L));
    }
    ens.num_positions(L);
    size_t center = (L - 1) / 2;
    for (size_t x : probes.xs) {
        if (x > center) {
            throw GeometryError("half-width " + std::to_string(x) + " exceeds (L-1)/2");
        }
    }
    size_t R = L;
    auto state = StabilizerTableau::all_z(L + 1, Tracking::kGeneratorsOnly);
    PauliString bell(L + 1);
    bell.set(center, 'X');
    bell.set(R, 'X');
    state.measure_forced(bell, +1);

    // Sites ordered by distance from the center, so that the first 2x+1
    // entries form [c-x, c+x]; a second order puts R in front.
    std::vector<size_t> outward = {center};
    for (size_t d = 1; d <= center; d++) {
        outward.push_back(center - d);
        outward.push_back(center + d);
    }
    std::vector<size_t> order_a = outward;
    order_a.push_back(R);
    std::vector<size_t> order_b = {R};
    order_b.insert(order_b.end(), outward.begin(), outward.end());

    TrajectoryRecord rec;
    auto total = static_cast<size_t>(std::llround(T * static_cast<double>(L)));
    measurement_loop(ens, state, L, probes.times, total, rng, [&](double t) {
        std::array<size_t, 1> r_site = {R};
        auto s_r = static_cast<double>(subsystem_entropy(state, r_site));
        rec.add(t, "S_R", s_r);
        auto without = nested_entropies(state, order_a);
        auto with = nested_entropies(state, order_b);
        for (size_t x : probes.xs) {
            double f = s_r + static_cast<double>(without[2 * x + 1]) - static_cast<double>(with[2 * x + 2]);
            rec.add(t, "f:" + std::to_string(x), f);
            if (s_r > 0) {
                rec.add(t, "ftilde:" + std::to_string(x), f / (2 * s_r));
            }
        }
    });
    record_ensemble(rec, ens);
    return rec;
}

}  // namespace momlab
