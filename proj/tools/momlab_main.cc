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

// Command-line entry point: run, sweep, frustration, collapse, reproduce.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "momlab/analysis.h"
#include "momlab/errors.h"
#include "momlab/frustration.h"
#include "momlab/recipes.h"
#include "momlab/runner.h"
#include "momlab/trajectory_io.h"

using namespace momlab;
using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<double, double> parse_range(const std::string &text, const char *flag) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw UsageError(std::string(flag) + " expects lo:hi");
    }
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception &) {
        throw UsageError(std::string(flag) + " expects lo:hi");
    }
}

/// "lo:hi:step" into an inclusive grid.
std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            parts.push_back(std::stod(item));
        } catch (const std::exception &) {
            throw UsageError("--range expects lo:hi:step");
        }
    }
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
        throw UsageError("--range expects lo:hi:step with step > 0 and lo <= hi");
    }
    std::vector<double> out;
    auto n = static_cast<size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (size_t k = 0; k <= n; k++) {
        out.push_back(std::round((parts[0] + parts[2] * static_cast<double>(k)) * 1e12) / 1e12);
    }
    return out;
}

/// Flags that select and parameterize an ensemble.
struct EnsembleFlags {
    std::string kind;
    size_t r = 3;
    double qi = 0, qx = 0, qy = 0, qz = 0;
    CLI::Option *qi_opt = nullptr, *qx_opt = nullptr, *qy_opt = nullptr, *qz_opt = nullptr;
    double n = 4;
    double pz = 0;
    std::string a = "X", b = "ZZ";
    double delta = 0;
    std::string file;
    std::string boundary;
    CLI::App *app = nullptr;

    void add_to(CLI::App *sub) {
        app = sub;
        sub->add_option("--ensemble", kind, "factorizable, lbit, bipartite or custom")
            ->check(CLI::IsMember({"factorizable", "lbit", "bipartite", "custom"}));
        sub->add_option("--r", r, "range of factorizable strings")->check(CLI::PositiveNumber);
        qi_opt = sub->add_option("--qi", qi, "probability of I per site");
        qx_opt = sub->add_option("--qx", qx, "probability of X per site");
        qy_opt = sub->add_option("--qy", qy, "probability of Y per site");
        qz_opt = sub->add_option("--qz", qz, "probability of Z per site");
        sub->add_option("--n", n, "l-bit range, fractional allowed");
        sub->add_option("--pz", pz, "probability of single-site Z measurements");
        sub->add_option("--a", a, "first bipartite species");
        sub->add_option("--b", b, "second bipartite species");
        sub->add_option("--delta", delta, "bipartite imbalance, P_A = (1 + delta) / 2");
        sub->add_option("--file", file, "ensemble file with PATTERN weight lines");
        sub->add_option("--boundary", boundary, "open or periodic")->check(CLI::IsMember({"open", "periodic"}));
    }

    bool given(const char *flag) const {
        return app->get_option(flag)->count() > 0;
    }

    /// Applies given flags on top of `c`. `swept` names a q parameter that a
    /// sweep fills in, so it counts as specified.
    void apply(EnsembleConfig &c, const std::string &swept) const {
        if (!kind.empty()) {
            c.kind = kind;
        } else if (!file.empty()) {
            c.kind = "custom";
        }
        if (given("--r")) {
            c.r = r;
        }
        bool any_q = qi_opt->count() || qx_opt->count() || qy_opt->count() || qz_opt->count() ||
                     swept.starts_with("q_");
        if (any_q) {
            std::array<CLI::Option *, 4> opts = {qi_opt, qx_opt, qy_opt, qz_opt};
            std::array<double, 4> vals = {qi, qx, qy, qz};
            std::array<const char *, 4> names = {"q_i", "q_x", "q_y", "q_z"};
            int missing = 0;
            for (int k = 0; k < 4; k++) {
                if (opts[k]->count()) {
                    c.q[k] = vals[k];
                } else if (swept == names[k]) {
                    c.q[k] = 0;
                } else if (k == 0) {
                    c.q[k] = 0;
                } else {
                    c.q[k] = -1;
                    missing++;
                }
            }
            if (missing > 1) {
                throw UsageError("give all but at most one of --qx --qy --qz; the remaining one fills up to 1");
            }
        }
        if (given("--n")) {
            c.n = n;
        }
        if (given("--pz")) {
            c.p_z = pz;
        }
        if (given("--a")) {
            c.a = a;
        }
        if (given("--b")) {
            c.b = b;
        }
        if (given("--delta")) {
            c.delta = delta;
        }
        if (!file.empty()) {
            c.custom = read_file(file);
        }
        if (!boundary.empty()) {
            c.boundary = parse_boundary(boundary);
        }
        if (c.kind == "custom" && c.custom.empty()) {
            throw UsageError("--ensemble custom needs --file");
        }
    }
};

/// Flags shared by run and sweep.
struct RunFlags {
    EnsembleFlags ensemble;
    std::string spec_file;
    std::string protocol;
    double px = 0.3;
    std::vector<size_t> sizes;
    double T = 0;
    double t_factor = 4;
    size_t seeds = 0;
    uint64_t base_seed = 1;
    std::vector<std::string> observables;
    size_t probes = 16;
    size_t distance_probes = 8;
    size_t x_points = 32;
    size_t workers = 0;
    std::string out;
    std::string parameter;
    std::vector<double> values;
    std::string range;
    CLI::App *app = nullptr;

    void add_to(CLI::App *sub, bool sweep) {
        app = sub;
        ensemble.add_to(sub);
        sub->add_option("--spec", spec_file, "JSON run spec to start from");
        sub->add_option("--protocol", protocol, "pure, purification, reference or hybrid")
            ->check(CLI::IsMember({"pure", "purification", "reference", "hybrid"}));
        sub->add_option("--px", px, "hybrid X measurement probability");
        sub->add_option("--L", sizes, "system sizes")->delimiter(',');
        sub->add_option("--T", T, "run length in units of L measurements");
        sub->add_option("--t-factor", t_factor, "run length T = factor * L when --T is not given");
        sub->add_option("--seeds", seeds, "number of trajectories per point and size");
        sub->add_option("--base-seed", base_seed, "base seed");
        sub->add_option("--observables", observables, "S_half, S_profile, I3, P, k, ell, f")->delimiter(',');
        sub->add_option("--probes", probes, "number of probe times");
        sub->add_option("--distance-probes", distance_probes, "code distance probe times (purification)");
        sub->add_option("--x-points", x_points, "half-widths probed by the reference protocol");
        sub->add_option("--workers", workers, "worker threads (MOMLAB_WORKERS overrides)");
        sub->add_option("--out", out, "CSV output path; the JSON sidecar goes next to it");
        if (sweep) {
            sub->add_option("--param", parameter, "q_i, q_x, q_y, q_z, n, p_z, delta or p_x (default: from --spec)");
            auto *v = sub->add_option("--values", values, "comma-separated parameter values")->delimiter(',');
            auto *r = sub->add_option("--range", range, "parameter grid lo:hi:step");
            v->excludes(r);
        }
    }

    bool given(const char *flag) const {
        return app->get_option(flag)->count() > 0;
    }

    RunSpec build(bool sweep) const {
        RunSpec spec;
        if (!spec_file.empty()) {
            auto j = json::parse(read_file(spec_file));
            // A sidecar wraps the spec together with provenance keys.
            spec = run_spec_from_json(j.contains("spec") ? j["spec"] : j);
        }
        if (!protocol.empty()) {
            spec.protocol = protocol;
        }
        std::string swept = parameter.empty() ? spec.parameter : parameter;
        // Only a --param given on the command line reshapes q; a spec's own
        // sweep already carries a consistent q.
        ensemble.apply(spec.ensemble, sweep ? parameter : "");
        if (given("--px")) {
            spec.p_x = px;
        }
        if (!sizes.empty()) {
            spec.sizes = sizes;
        }
        if (given("--T")) {
            spec.T = T;
        }
        if (given("--t-factor")) {
            spec.t_factor = t_factor;
        }
        if (given("--seeds")) {
            spec.seeds = seeds;
        }
        if (given("--base-seed")) {
            spec.base_seed = base_seed;
        }
        if (!observables.empty()) {
            spec.observables = observables;
        } else if (spec_file.empty()) {
            if (spec.protocol == "purification") {
                spec.observables = {"k"};
            } else if (spec.protocol == "reference") {
                spec.observables = {"f"};
            }
        }
        if (given("--probes")) {
            spec.probes = probes;
        }
        if (given("--distance-probes")) {
            spec.distance_probes = distance_probes;
        }
        if (given("--x-points")) {
            spec.x_points = x_points;
        }
        if (sweep) {
            if (swept.empty()) {
                throw UsageError("sweep needs --param");
            }
            if (!values.empty() || !range.empty()) {
                spec.values = range.empty() ? values : parse_grid(range);
            } else if (swept != spec.parameter) {
                spec.values.clear();
            }
            spec.parameter = swept;
            if (spec.values.empty()) {
                throw UsageError("sweep needs --values or --range");
            }
        } else if (spec_file.empty() || !spec.parameter.empty()) {
            if (!spec.parameter.empty() && spec.values.size() != 1) {
                throw UsageError("run executes a single parameter point; use sweep for grids");
            }
        }
        spec.validate();
        return spec;
    }
};

std::string sidecar_path(const std::string &out) {
    std::filesystem::path p(out);
    if (p.extension() == ".csv") {
        p.replace_extension(".json");
        return p.string();
    }
    return out + ".json";
}

void write_json(const json &j, const std::string &path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write " + path);
    }
    out << j.dump(2) << "\n";
}

void write_records(const std::vector<TrajectoryRecord> &records, const std::string &path, const json &sidecar) {
    if (path.empty() || path == "-") {
        write_csv(std::cout, records);
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write " + path);
    }
    write_csv(out, records);
    write_json(sidecar, sidecar_path(path));
}

json sidecar_for(const RunSpec &spec) {
    return {{"version", kVersion},
            {"csv_schema", kCsvSchema},
            {"steady_state_window", "probes spread over [T/2, T] for pure and hybrid runs"},
            {"seed_derivation", "RandomStream(base_seed, seed).substream((point << 32) | L)"},
            {"spec", to_json(spec)}};
}

int cmd_run(const RunFlags &flags, bool sweep) {
    RunSpec spec = flags.build(sweep);
    auto records = run_all(spec, resolve_workers(flags.workers));
    write_records(records, flags.out, sidecar_for(spec));
    return 0;
}

json vertex_json(const FrustrationGraph &g, uint32_t v) {
    return {g.species_of(v), g.position_of(v)};
}

struct FrustrationFlags {
    EnsembleFlags ensemble;
    std::string check = "bipartite";
    size_t L = 0;
    std::string compare;
    std::string edges;
    std::string out;
    size_t samples = 1000000;
};

int cmd_frustration(const FrustrationFlags &flags) {
    EnsembleConfig config;
    flags.ensemble.apply(config, "");
    auto ens = build_ensemble(config);
    json out = {{"ensemble", ens.description}, {"species", json::array()}, {"check", flags.check}};
    for (size_t s = 0; s < ens.num_species(); s++) {
        out["species"].push_back({ens.pattern(s).str().substr(1), ens.probability(s)});
    }
    size_t L = flags.L ? flags.L : analysis_window(ens.range());
    if (flags.check == "bipartite") {
        auto v = check_bipartite(ens);
        const auto &g = v.ring_graph;
        out["bipartite"] = v.bipartite();
        out["window"] = g.n_sites;
        out["ring_bipartite"] = v.ring.bipartite;
        out["open_window_bipartite"] = v.open_window_bipartite;
        if (v.ring.bipartite) {
            json coloring = json::array();
            for (uint32_t u = 0; u < g.num_vertices(); u++) {
                coloring.push_back({g.species_of(u), g.position_of(u), v.ring.coloring[u]});
            }
            out["coloring"] = coloring;
        } else {
            json cycle = json::array();
            for (uint32_t u : v.ring.odd_cycle) {
                cycle.push_back(vertex_json(g, u));
            }
            out["odd_cycle"] = cycle;
        }
    } else if (flags.check == "components") {
        auto comps = periodic_components(ens);
        out["count"] = comps.size();
        std::optional<PeriodicGraph> target;
        if (!flags.compare.empty()) {
            EnsembleConfig other;
            other.kind = "custom";
            other.custom = read_file(flags.compare);
            auto other_ens = build_ensemble(other);
            target = periodic_graph(other_ens);
            out["compare"] = flags.compare;
        }
        json list = json::array();
        for (const auto &c : comps) {
            json item = {{"classes", c.labels}, {"relations", json::array()}};
            for (const auto &rel : c.relations) {
                item["relations"].push_back({rel.a, rel.b, rel.d});
            }
            if (target) {
                auto w = graph_isomorphic_1d(c, *target);
                item["isomorphic_to_compare"] = w.has_value();
                if (w) {
                    item["witness"] = {{"class_map", w->class_map},
                                       {"offsets", w->offsets},
                                       {"reflected", w->reflected},
                                       {"supercell", {w->supercell_a, w->supercell_b}}};
                }
            }
            list.push_back(item);
        }
        out["components"] = list;
        if (comps.size() >= 2) {
            out["components_mutually_isomorphic"] = graph_isomorphic_1d(comps[0], comps[1]).has_value();
        }
    } else if (flags.check == "symmetries") {
        auto syms = find_symmetries(ens, L, ens.boundary());
        out["L"] = L;
        out["boundary"] = boundary_name(ens.boundary());
        json list = json::array();
        for (const auto &p : syms) {
            list.push_back(p.str().substr(1));
        }
        out["symmetries"] = list;
    } else if (flags.check == "averaged") {
        RandomStream rng(1, 0);
        auto avg = averaged_frustration(ens, &rng, flags.samples);
        out["mean"] = avg.mean;
        out["stderr"] = avg.standard_error;
        out["exact"] = avg.exact;
        if (config.kind == "factorizable") {
            auto q = resolve_q(config.q);
            json closed = json::array();
            for (size_t l = 0; l < config.r; l++) {
                closed.push_back(closed_form_factorizable(q, config.r, l));
            }
            out["closed_form"] = closed;
        }
    } else if (flags.check == "tensor") {
        FrustrationTensor t(ens);
        json rows = json::array();
        long r = static_cast<long>(t.range());
        for (size_t a = 0; a < t.num_species(); a++) {
            for (size_t b = 0; b < t.num_species(); b++) {
                json ls = json::array();
                for (long l = -r + 1; l < r; l++) {
                    if (t.gamma(a, b, l)) {
                        ls.push_back(l);
                    }
                }
                rows.push_back({{"a", a}, {"b", b}, {"anticommuting_shifts", ls}});
            }
        }
        out["tensor"] = rows;
    } else if (flags.check == "graph") {
        auto g = build_graph(FrustrationTensor(ens), L, ens.boundary());
        out["L"] = L;
        out["boundary"] = boundary_name(ens.boundary());
        out["vertices"] = g.num_vertices();
        out["edges"] = g.num_edges();
        if (flags.edges.empty()) {
            std::cout << g.edge_list();
            return 0;
        }
        std::ofstream e(flags.edges);
        if (!e) {
            throw UsageError("cannot write " + flags.edges);
        }
        e << g.edge_list();
        out["edge_list"] = flags.edges;
    } else {
        throw UsageError("unknown --check " + flags.check);
    }
    write_json(out, flags.out);
    return 0;
}

struct CollapseFlags {
    std::string in;
    std::string method = "crossing";
    std::string parameter;
    std::string observable;
    std::string qc_range;
    std::string nu_range = "0.3:3";
    std::string window;
    size_t chord = 0;
    size_t L = 0;
    size_t n_boot = 200;
    uint64_t seed = 1;
    double t_min = -std::numeric_limits<double>::infinity();
    double t_max = std::numeric_limits<double>::infinity();
    std::string run;
    std::string out;
};

int cmd_collapse(const CollapseFlags &flags) {
    std::ifstream in(flags.in);
    if (!in) {
        throw UsageError("cannot open " + flags.in);
    }
    auto all = read_csv(in);
    std::vector<TrajectoryRecord> records;
    for (auto &r : all) {
        if ((flags.run.empty() || r.param("run") == flags.run) &&
            (flags.L == 0 || r.param("L") == std::to_string(flags.L))) {
            records.push_back(std::move(r));
        }
    }
    if (records.empty()) {
        throw UsageError("no records match the selection");
    }
    FitReport report;
    if (flags.method == "crossing" || flags.method == "collapse") {
        if (flags.parameter.empty()) {
            throw UsageError("--method " + flags.method + " needs --param");
        }
        auto table = sweep_table(records, flags.parameter, flags.observable.empty() ? "I3" : flags.observable,
                                 flags.t_min, flags.t_max);
        if (flags.method == "crossing") {
            report = crossing_finder(table, flags.n_boot, flags.seed);
        } else {
            std::pair<double, double> qc;
            if (flags.qc_range.empty()) {
                auto c = table.curve(table.sizes().front());
                qc = {c.front().x, c.back().x};
            } else {
                qc = parse_range(flags.qc_range, "--qc-range");
            }
            report = collapse_report(table, qc, parse_range(flags.nu_range, "--nu-range"), flags.n_boot, flags.seed);
        }
    } else if (flags.method == "log" || flags.method == "power") {
        if (flags.window.empty()) {
            throw UsageError("--method " + flags.method + " needs --window lo:hi");
        }
        auto w = parse_range(flags.window, "--window");
        std::string prefix = flags.observable.empty() ? (flags.method == "log" ? "S" : "P") : flags.observable;
        auto profile = profile_samples(records, prefix, flags.t_min, flags.t_max);
        report = flags.method == "log" ? fit_log_entropy(profile, w.first, w.second, flags.chord, flags.n_boot, flags.seed)
                                       : fit_power_law(profile, w.first, w.second, flags.n_boot, flags.seed);
    } else {
        throw UsageError("unknown --method " + flags.method);
    }
    auto j = fit_report_json(report);
    j["method"] = flags.method;
    write_json(j, flags.out);
    return 0;
}

struct ReproduceFlags {
    std::string figure;
    std::string budget = "small";
    std::string out_dir = ".";
    size_t workers = 0;
};

int cmd_reproduce(const ReproduceFlags &flags) {
    auto recipe = make_recipe(flags.figure, parse_budget(flags.budget));
    for (const auto &[label, spec] : recipe.runs) {
        spec.validate();
    }
    std::filesystem::create_directories(flags.out_dir);
    auto records = run_recipe(recipe, resolve_workers(flags.workers));
    std::string stem = (std::filesystem::path(flags.out_dir) / flags.figure).string();
    json specs = json::array();
    for (const auto &[label, spec] : recipe.runs) {
        specs.push_back({{"run", label}, {"spec", to_json(spec)}});
    }
    json sidecar = {{"version", kVersion},
                    {"csv_schema", kCsvSchema},
                    {"figure", flags.figure},
                    {"budget", flags.budget},
                    {"runs", specs}};
    write_records(records, stem + ".csv", sidecar);
    auto fit = analyze_recipe(recipe, records);
    write_json(fit, stem + ".fit.json");
    std::cerr << "wrote " << stem << ".csv, " << stem << ".json, " << stem << ".fit.json\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Stabilizer simulations of measurement-only dynamics"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunFlags run_flags;
    auto *run = app.add_subcommand("run", "simulate one parameter point");
    run_flags.add_to(run, false);

    RunFlags sweep_flags;
    auto *sweep = app.add_subcommand("sweep", "simulate a parameter grid over sizes and seeds");
    sweep_flags.add_to(sweep, true);

    FrustrationFlags fr;
    auto *frus = app.add_subcommand("frustration", "frustration tensor, graph and symmetry analyses");
    fr.ensemble.add_to(frus);
    frus->add_option("--check", fr.check, "bipartite, components, symmetries, averaged, tensor or graph")
        ->check(CLI::IsMember({"bipartite", "components", "symmetries", "averaged", "tensor", "graph"}));
    frus->add_option("--L", fr.L, "chain length for graph and symmetries (default: analysis window)");
    frus->add_option("--compare", fr.compare, "ensemble file whose graph components are compared against");
    frus->add_option("--edges", fr.edges, "edge-list output path for --check graph");
    frus->add_option("--samples", fr.samples, "Monte Carlo draws when exact averaging is too large");
    frus->add_option("--out", fr.out, "JSON output path (default stdout)");

    CollapseFlags cf;
    auto *col = app.add_subcommand("collapse", "crossings, scaling collapse and profile fits on a CSV");
    col->add_option("--in", cf.in, "input CSV")->required();
    col->add_option("--method", cf.method, "crossing, collapse, log or power")
        ->check(CLI::IsMember({"crossing", "collapse", "log", "power"}));
    col->add_option("--param", cf.parameter, "swept parameter column");
    col->add_option("--observable", cf.observable, "observable (default I3; S or P prefix for profile fits)");
    col->add_option("--qc-range", cf.qc_range, "critical point search range lo:hi");
    col->add_option("--nu-range", cf.nu_range, "exponent search range lo:hi");
    col->add_option("--window", cf.window, "fit window lo:hi in l");
    col->add_option("--chord", cf.chord, "use chord length with this L");
    col->add_option("--L", cf.L, "only records of this size");
    col->add_option("--run", cf.run, "only records with this run label");
    col->add_option("--boot", cf.n_boot, "bootstrap resamples");
    col->add_option("--seed", cf.seed, "bootstrap seed");
    col->add_option("--tmin", cf.t_min, "averaging window start");
    col->add_option("--tmax", cf.t_max, "averaging window end");
    col->add_option("--out", cf.out, "JSON output path (default stdout)");

    ReproduceFlags rf;
    auto *rep = app.add_subcommand("reproduce", "canned runs and fits for one figure");
    rep->add_option("figure", rf.figure, "fig2, fig3, fig4, fig5c, fig8, fig9, fig10 or fig11")
        ->required()
        ->check(CLI::IsMember(recipe_names()));
    rep->add_option("--budget", rf.budget, "small, medium or paper")->check(CLI::IsMember({"small", "medium", "paper"}));
    rep->add_option("--out-dir", rf.out_dir, "output directory");
    rep->add_option("--workers", rf.workers, "worker threads (MOMLAB_WORKERS overrides)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }
    try {
        if (*run) {
            return cmd_run(run_flags, false);
        }
        if (*sweep) {
            return cmd_run(sweep_flags, true);
        }
        if (*frus) {
            return cmd_frustration(fr);
        }
        if (*col) {
            return cmd_collapse(cf);
        }
        if (*rep) {
            return cmd_reproduce(rf);
        }
    } catch (const GeometryError &e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
