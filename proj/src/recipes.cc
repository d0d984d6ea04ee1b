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

#include "momlab/recipes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "momlab/errors.h"
#include "momlab/trajectory_io.h"

namespace momlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Scale {
    std::vector<size_t> sizes;
    size_t seeds;
};

Scale pick(Budget b, Scale small, Scale medium, Scale paper) {
    switch (b) {
        case Budget::kSmall:
            return small;
        case Budget::kMedium:
            return medium;
        case Budget::kPaper:
            return paper;
    }
    return small;
}

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> out;
    size_t n = static_cast<size_t>(std::llround((hi - lo) / step));
    for (size_t k = 0; k <= n; k++) {
        out.push_back(std::round((lo + step * static_cast<double>(k)) * 1e9) / 1e9);
    }
    return out;
}

RunSpec base_spec(const std::string &protocol, const Scale &scale, std::vector<std::string> observables) {
    RunSpec spec;
    spec.protocol = protocol;
    spec.sizes = scale.sizes;
    spec.seeds = scale.seeds;
    spec.observables = std::move(observables);
    return spec;
}

std::vector<TrajectoryRecord> with_run(const std::vector<TrajectoryRecord> &records, const std::string &run) {
    std::vector<TrajectoryRecord> out;
    for (const auto &r : records) {
        if (r.param("run") == run) {
            out.push_back(r);
        }
    }
    return out;
}

double final_value(const TrajectoryRecord &rec, const std::string &observable) {
    auto s = rec.series(observable);
    if (s.empty()) {
        throw ProtocolError("no probe of " + observable);
    }
    return s.back().second;
}

/// Per-L mean curves as {"L": [[x, mean, stderr], ...]}.
nlohmann::json curves_json(const SweepTable &table) {
    nlohmann::json out = nlohmann::json::object();
    for (size_t L : table.sizes()) {
        auto &rows = out[std::to_string(L)] = nlohmann::json::array();
        for (const auto &p : table.curve(L)) {
            rows.push_back({p.x, p.mean, p.standard_error});
        }
    }
    return out;
}

/// Runs `fit` and stores its report, or the error message when it throws.
template <typename F>
nlohmann::json try_fit(F &&fit) {
    try {
        return fit_report_json(fit());
    } catch (const std::exception &e) {
        return {{"error", e.what()}};
    }
}

/// Means of f / 2 S_R on the (t, x) probe grid.
struct LightCone {
    std::vector<double> ts;
    std::vector<size_t> xs;
    /// f[t][x] and ftilde[t][x], averaged over trajectories.
    std::vector<std::vector<double>> f;
    std::vector<std::vector<double>> ftilde;
};

LightCone light_cone(const std::vector<TrajectoryRecord> &records, const std::vector<size_t> &xs) {
    LightCone cone;
    cone.xs = xs;
    if (records.empty()) {
        return cone;
    }
    for (const auto &[t, v] : records.front().series("S_R")) {
        cone.ts.push_back(t);
    }
    size_t nt = cone.ts.size();
    cone.f.assign(nt, std::vector<double>(xs.size(), 0));
    std::vector<double> sr(nt, 0);
    for (const auto &rec : records) {
        auto s = rec.series("S_R");
        for (size_t i = 0; i < nt && i < s.size(); i++) {
            sr[i] += s[i].second;
        }
        for (size_t j = 0; j < xs.size(); j++) {
            auto fs = rec.series("f:" + std::to_string(xs[j]));
            for (size_t i = 0; i < nt && i < fs.size(); i++) {
                cone.f[i][j] += fs[i].second;
            }
        }
    }
    double n = static_cast<double>(records.size());
    cone.ftilde = cone.f;
    for (size_t i = 0; i < nt; i++) {
        for (size_t j = 0; j < xs.size(); j++) {
            cone.f[i][j] /= n;
            cone.ftilde[i][j] = sr[i] > 0 ? cone.f[i][j] / (2 * sr[i] / n) : 0;
        }
    }
    return cone;
}

}  // namespace

Budget parse_budget(std::string_view text) {
    if (text == "small") {
        return Budget::kSmall;
    }
    if (text == "medium") {
        return Budget::kMedium;
    }
    if (text == "paper") {
        return Budget::kPaper;
    }
    throw std::invalid_argument("unknown budget \"" + std::string(text) + "\" (small, medium, paper)");
}

const char *budget_name(Budget b) {
    switch (b) {
        case Budget::kSmall:
            return "small";
        case Budget::kMedium:
            return "medium";
        case Budget::kPaper:
            return "paper";
    }
    return "small";
}

const std::vector<std::string> &recipe_names() {
    static const std::vector<std::string> names = {"fig2", "fig3", "fig4", "fig5c", "fig8", "fig9", "fig10", "fig11"};
    return names;
}

nlohmann::json fit_report_json(const FitReport &report) {
    nlohmann::json j = {{"estimate", report.estimate},
                        {"stderr", report.standard_error},
                        {"window", {report.window.first, report.window.second}},
                        {"n_boot", report.n_boot}};
    for (const auto &[k, v] : report.extras) {
        j[k] = v;
    }
    return j;
}

Recipe make_recipe(const std::string &figure, Budget budget) {
    Recipe recipe;
    recipe.figure = figure;
    recipe.budget = budget;
    if (figure == "fig2") {
        // Hybrid l-bit circuit, n = 4, p_z = 0, along p_x.
        auto spec = base_spec("hybrid", pick(budget, {{32, 64}, 10}, {{64, 128}, 40}, {{128, 256, 512}, 100}),
                              {"S_half"});
        spec.ensemble.n = 4;
        spec.ensemble.p_z = 0;
        spec.ensemble.boundary = Boundary::kOpen;
        spec.parameter = "p_x";
        spec.values = grid(0.1, 0.9, 0.1);
        recipe.runs.emplace_back("px_line", spec);
    } else if (figure == "fig3") {
        // Factorizable r = 2 and r = 3 over the q_I = 0 triangle.
        double step = budget == Budget::kSmall ? 0.125 : 0.0625;
        Scale scale = pick(budget, {{32}, 4}, {{64}, 20}, {{128}, 100});
        for (size_t r : {2, 3}) {
            for (double qx : grid(0, 1, step)) {
                auto spec = base_spec("pure", scale, {"S_half"});
                spec.ensemble.r = r;
                spec.ensemble.q = {0, qx, 0, -1};
                spec.parameter = "q_y";
                spec.values = grid(0, 1 - qx, step);
                recipe.runs.emplace_back("r" + std::to_string(r) + ":q_x=" + format_number(qx), spec);
            }
        }
    } else if (figure == "fig4") {
        // r = 3, q_Z = 0: I3 crossing and collapse along q_X, open chain.
        auto spec = base_spec("pure", pick(budget, {{32, 64, 128}, 40}, {{64, 128, 256}, 100}, {{64, 128, 256, 512}, 300}),
                              {"I3", "S_profile"});
        spec.ensemble.q = {0, 0, -1, 0};
        spec.ensemble.boundary = Boundary::kOpen;
        spec.parameter = "q_x";
        spec.values = budget == Budget::kSmall ? grid(0.22, 0.33, 0.01) : grid(0.24, 0.31, 0.01);
        recipe.runs.emplace_back("qz0_line", spec);
    } else if (figure == "fig5c") {
        // Stabilizer length distribution of bipartite models at Delta = 0.
        Scale scale = pick(budget, {{128}, 20}, {{256}, 100}, {{512}, 1000});
        for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{{"X", "ZZ"}, {"X", "ZZZ"}, {"X", "ZXZ"}}) {
            auto spec = base_spec("pure", scale, {"P", "S_profile"});
            spec.ensemble.kind = "bipartite";
            spec.ensemble.a = a;
            spec.ensemble.b = b;
            spec.ensemble.boundary = Boundary::kOpen;
            recipe.runs.emplace_back(a + "," + b, spec);
        }
    } else if (figure == "fig8") {
        // l-bit MOM n = 4 from the mixed state, code properties at t = 4L.
        auto spec = base_spec("purification", pick(budget, {{32, 64}, 20}, {{32, 64, 128}, 60}, {{64, 128, 256}, 100}),
                              {"k", "ell"});
        spec.ensemble.kind = "lbit";
        spec.ensemble.n = 4;
        spec.probes = 2;
        spec.distance_probes = 1;
        spec.parameter = "p_z";
        spec.values = grid(0, 0.3, 0.025);
        recipe.runs.emplace_back("pz_line", spec);
    } else if (figure == "fig9") {
        // r = 2 at the center of the triangle: purification dynamics.
        auto spec = base_spec("purification", pick(budget, {{32, 64, 128}, 40}, {{64, 128, 256}, 200}, {{64, 128, 256}, 1000}),
                              {"k", "ell"});
        spec.ensemble.r = 2;
        spec.t_factor = 6;
        spec.probes = 61;
        spec.distance_probes = 31;
        recipe.runs.emplace_back("r2_center", spec);
    } else if (figure == "fig10") {
        // Reference qubit at the center; r = 2, 3, 5 at q = (0, 1, 1, 1) / 3.
        Scale scale = pick(budget, {{63}, 20}, {{127}, 50}, {{255}, 100});
        for (size_t r : {2, 3, 5}) {
            auto spec = base_spec("reference", scale, {"f"});
            spec.ensemble.r = r;
            // The cone crosses the chain within t ~ L/4.
            spec.t_factor = 0.25;
            spec.probes = 64;
            recipe.runs.emplace_back("r" + std::to_string(r), spec);
        }
    } else if (figure == "fig11") {
        // l-bit MOM continued to fractional n: I3 crossing near n = 3.
        auto spec = base_spec("pure", pick(budget, {{32, 64, 128}, 30}, {{64, 128, 256}, 100}, {{64, 128, 256, 512}, 200}),
                              {"I3"});
        spec.ensemble.kind = "lbit";
        spec.ensemble.boundary = Boundary::kOpen;
        spec.parameter = "n";
        spec.values = grid(3.0, 3.08, 0.01);
        recipe.runs.emplace_back("n_line", spec);
    } else {
        throw std::invalid_argument("unknown figure \"" + figure + "\"");
    }
    return recipe;
}

std::vector<TrajectoryRecord> run_recipe(const Recipe &recipe, size_t workers) {
    std::vector<TrajectoryRecord> out;
    for (const auto &[label, spec] : recipe.runs) {
        for (auto &rec : run_all(spec, workers)) {
            rec.set_param("run", label);
            out.push_back(std::move(rec));
        }
    }
    return out;
}

/// K from S(l) = K ln l of the leftmost l sites, l in [4, L/8], on the
/// records of size L closest to `x` along `parameter`.
static nlohmann::json critical_log_coefficient(const std::vector<TrajectoryRecord> &records, const std::string &parameter,
                                               double x, size_t L) {
    double best = kInf;
    std::string chosen;
    for (const auto &r : records) {
        if (r.param("L") != std::to_string(L)) {
            continue;
        }
        double v = std::stod(r.param(parameter));
        if (std::abs(v - x) < best) {
            best = std::abs(v - x);
            chosen = r.param(parameter);
        }
    }
    std::vector<TrajectoryRecord> at;
    for (const auto &r : records) {
        if (r.param("L") == std::to_string(L) && r.param(parameter) == chosen) {
            at.push_back(r);
        }
    }
    auto j = try_fit([&] { return fit_log_entropy(profile_samples(at, "S", 0, kInf), 4, L / 8.0); });
    j["L"] = L;
    j[parameter] = chosen.empty() ? 0.0 : std::stod(chosen);
    return j;
}

nlohmann::json analyze_recipe(const Recipe &recipe, const std::vector<TrajectoryRecord> &records) {
    nlohmann::json out = {{"figure", recipe.figure}, {"budget", budget_name(recipe.budget)}};
    const std::string &fig = recipe.figure;
    if (fig == "fig2") {
        auto table = sweep_table(records, "p_x", "S_half", 0, kInf);
        out["S_half"] = curves_json(table);
        auto sizes = table.sizes();
        nlohmann::json ratio = nlohmann::json::array();
        auto small = table.curve(sizes.front());
        auto large = table.curve(sizes.back());
        for (size_t k = 0; k < small.size() && k < large.size(); k++) {
            double r = small[k].mean > 0 ? large[k].mean / small[k].mean : 0;
            ratio.push_back({small[k].x, r});
        }
        out["ratio_largest_to_smallest"] = ratio;
    } else if (fig == "fig3") {
        nlohmann::json points = nlohmann::json::array();
        for (const auto &[label, spec] : recipe.runs) {
            auto table = sweep_table(with_run(records, label), "q_y", "S_half", 0, kInf);
            for (size_t L : table.sizes()) {
                for (const auto &p : table.curve(L)) {
                    double qx = spec.ensemble.q[1];
                    points.push_back({{"r", spec.ensemble.r},
                                      {"q_x", qx},
                                      {"q_y", p.x},
                                      {"q_z", std::max(0.0, 1 - qx - p.x)},
                                      {"L", L},
                                      {"S_half_over_L", p.mean / static_cast<double>(L)},
                                      {"stderr", p.standard_error / static_cast<double>(L)}});
                }
            }
        }
        out["points"] = points;
    } else if (fig == "fig4" || fig == "fig11") {
        std::string param = fig == "fig4" ? "q_x" : "n";
        auto table = sweep_table(records, param, "I3", 0, kInf);
        out["I3"] = curves_json(table);
        auto crossing = try_fit([&] { return crossing_finder(table, 200, 1); });
        out["crossing"] = crossing;
        if (table.sizes().size() >= 3) {
            auto vals = recipe.runs.front().second.values;
            out["collapse"] =
                try_fit([&] { return collapse_report(table, {vals.front(), vals.back()}, {0.4, 3.0}, 50, 1); });
        }
        if (fig == "fig4" && crossing.contains("estimate")) {
            out["log_coefficient"] =
                critical_log_coefficient(records, param, crossing["estimate"].get<double>(), table.sizes().back());
        }
    } else if (fig == "fig5c") {
        for (const auto &[label, spec] : recipe.runs) {
            auto run = with_run(records, label);
            size_t L = spec.sizes.back();
            auto &entry = out["models"][label];
            auto prof = profile_samples(run, "P", 0, kInf);
            nlohmann::json dist = nlohmann::json::array();
            auto m = prof.mean();
            for (size_t i = 0; i < prof.ells.size(); i++) {
                dist.push_back({prof.ells[i], m[i]});
            }
            entry["P"] = dist;
            entry["tail_exponent"] = try_fit([&] { return fit_power_law(prof, 4, L / 4.0); });
            entry["log_coefficient"] = try_fit([&] { return fit_log_entropy(profile_samples(run, "S", 0, kInf), 4, L / 8.0); });
        }
    } else if (fig == "fig8") {
        SweepTable ell{"p_z", {}};
        SweepTable k{"p_z", {}};
        for (const auto &r : records) {
            size_t L = std::stoul(r.param("L"));
            double x = std::stod(r.param("p_z"));
            ell.add(L, x, final_value(r, "ell_mean") / static_cast<double>(L));
            k.add(L, x, final_value(r, "k") / static_cast<double>(L));
        }
        out["ell_over_L"] = curves_json(ell);
        out["k_over_L"] = curves_json(k);
        if (ell.sizes().size() >= 3) {
            out["ell_collapse"] = try_fit([&] { return collapse_report(ell, {0.05, 0.3}, {0.4, 3.0}, 50, 1); });
        }
    } else if (fig == "fig9") {
        nlohmann::json curves = nlohmann::json::object();
        for (size_t L : recipe.runs.front().second.sizes) {
            std::map<double, std::pair<double, double>> k_sum;
            std::map<double, std::pair<double, double>> ell_sum;
            size_t n = 0;
            for (const auto &r : records) {
                if (r.param("L") != std::to_string(L)) {
                    continue;
                }
                n++;
                for (auto [t, v] : r.series("k")) {
                    k_sum[t / static_cast<double>(L)].first += v;
                    k_sum[t / static_cast<double>(L)].second += v * v;
                }
                for (auto [t, v] : r.series("ell_mean")) {
                    ell_sum[t / static_cast<double>(L)].first += v;
                    ell_sum[t / static_cast<double>(L)].second += v * v;
                }
            }
            auto rows = [n](const std::map<double, std::pair<double, double>> &sums) {
                nlohmann::json j = nlohmann::json::array();
                double c = static_cast<double>(n);
                for (const auto &[x, s] : sums) {
                    double mean = s.first / c;
                    double var = c > 1 ? std::max(0.0, (s.second - c * mean * mean) / (c - 1)) : 0;
                    j.push_back({x, mean, std::sqrt(var / c)});
                }
                return j;
            };
            curves[std::to_string(L)] = {{"k", rows(k_sum)}, {"ell_mean", rows(ell_sum)}};
        }
        out["curves_vs_t_over_L"] = curves;
        for (size_t L : recipe.runs.front().second.sizes) {
            std::vector<TrajectoryRecord> at;
            for (const auto &r : records) {
                if (r.param("L") == std::to_string(L)) {
                    at.push_back(r);
                }
            }
            auto &entry = out["fits"][std::to_string(L)];
            auto k = series_samples(at, "k", static_cast<double>(L));
            entry["early_power"] = try_fit([&] { return fit_power_law(k, 0.2, 1.0); });
            entry["late_exponential"] = try_fit([&] { return fit_exponential(k, 2.0, 6.0); });
            auto ell = series_samples(at, "ell_mean", static_cast<double>(L));
            auto ell_mean = ell.mean();
            if (!ell_mean.empty()) {
                size_t peak = static_cast<size_t>(std::max_element(ell_mean.begin(), ell_mean.end()) - ell_mean.begin());
                double t_peak = ell.ells[peak];
                auto k_mean = k.mean();
                double k_at = 0;
                for (size_t i = 0; i < k.ells.size(); i++) {
                    if (std::abs(k.ells[i] - t_peak) < 1e-9) {
                        k_at = k_mean[i];
                    }
                }
                entry["ell_peak"] = {{"t_over_L", t_peak}, {"ell_mean", ell_mean[peak]}, {"k", k_at}};
            }
        }
    } else if (fig == "fig10") {
        for (const auto &[label, spec] : recipe.runs) {
            auto run = with_run(records, label);
            size_t L = spec.sizes.back();
            auto cone = light_cone(run, reference_x_grid(L, spec.x_points));
            auto &entry = out["models"][label];
            entry["t"] = cone.ts;
            entry["x"] = cone.xs;
            entry["f"] = cone.f;
            entry["ftilde"] = cone.ftilde;
            entry["butterfly_velocity"] = try_fit([&] { return butterfly_velocity(run, 0.5); });
        }
    }
    return out;
}

}  // namespace momlab
