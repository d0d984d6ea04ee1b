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

#include "momlab/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <set>

#include "momlab/errors.h"

namespace momlab {

void SweepTable::add(size_t L, double x, double value) {
    samples[L][x].push_back(value);
}

std::vector<size_t> SweepTable::sizes() const {
    std::vector<size_t> out;
    for (const auto &[L, cells] : samples) {
        out.push_back(L);
    }
    return out;
}

static std::pair<double, double> mean_and_stderr(const std::vector<double> &values) {
    double n = static_cast<double>(values.size());
    double mean = 0;
    for (double v : values) {
        mean += v;
    }
    mean /= n;
    if (values.size() < 2) {
        return {mean, 0};
    }
    double var = 0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= n - 1;
    return {mean, std::sqrt(var / n)};
}

std::vector<CurvePoint> SweepTable::curve(size_t L) const {
    std::vector<CurvePoint> out;
    auto it = samples.find(L);
    if (it == samples.end()) {
        return out;
    }
    for (const auto &[x, values] : it->second) {
        auto [mean, se] = mean_and_stderr(values);
        out.push_back({x, mean, se, values.size()});
    }
    return out;
}

SweepTable SweepTable::resample(RandomStream &rng) const {
    SweepTable out;
    out.parameter = parameter;
    for (const auto &[L, cells] : samples) {
        for (const auto &[x, values] : cells) {
            auto &dst = out.samples[L][x];
            dst.reserve(values.size());
            for (size_t k = 0; k < values.size(); k++) {
                dst.push_back(values[rng.below(values.size())]);
            }
        }
    }
    return out;
}

SweepTable sweep_table(const std::vector<TrajectoryRecord> &records, const std::string &parameter,
                       const std::string &observable, double t_min, double t_max) {
    SweepTable table;
    table.parameter = parameter;
    for (const auto &rec : records) {
        std::string L = rec.param("L");
        std::string x = rec.param(parameter);
        if (L.empty() || x.empty() || rec.series(observable).empty()) {
            continue;
        }
        table.add(std::stoul(L), std::stod(x), rec.time_average(observable, t_min, t_max));
    }
    return table;
}

Crossing find_crossing(const SweepTable &table, size_t a, size_t b) {
    auto ca = table.curve(a);
    auto cb = table.curve(b);
    std::vector<double> xs;
    std::vector<double> d;
    size_t j = 0;
    for (const auto &p : ca) {
        while (j < cb.size() && cb[j].x < p.x) {
            j++;
        }
        if (j < cb.size() && cb[j].x == p.x) {
            xs.push_back(p.x);
            d.push_back(cb[j].mean - p.mean);
        }
    }
    std::optional<Crossing> best;
    double best_jump = -1;
    for (size_t i = 0; i + 1 < xs.size(); i++) {
        if (!((d[i] < 0 && d[i + 1] >= 0) || (d[i] > 0 && d[i + 1] <= 0))) {
            continue;
        }
        if (d[i + 1] == 0 && i + 2 < xs.size() && d[i + 2] != 0 && (d[i + 2] > 0) == (d[i] > 0)) {
            // Touches zero without crossing.
            continue;
        }
        double jump = std::abs(d[i + 1] - d[i]);
        if (jump > best_jump) {
            best_jump = jump;
            double fraction = d[i] / (d[i] - d[i + 1]);
            best = Crossing{a, b, i, fraction, xs[i] + fraction * (xs[i + 1] - xs[i])};
        }
    }
    if (!best) {
        throw NoCrossingError("curves for L=" + std::to_string(a) + " and L=" + std::to_string(b) + " do not cross");
    }
    return *best;
}

FitReport crossing_finder(const SweepTable &table, size_t n_boot, uint64_t seed) {
    auto sizes = table.sizes();
    if (sizes.size() < 2) {
        throw DimensionError("a crossing needs at least two system sizes");
    }
    size_t a = sizes[sizes.size() - 2];
    size_t b = sizes.back();
    auto main = find_crossing(table, a, b);
    FitReport report;
    report.estimate = main.estimate;
    for (size_t k = 0; k + 1 < sizes.size(); k++) {
        try {
            auto c = find_crossing(table, sizes[k], sizes[k + 1]);
            report.extras["pair:" + std::to_string(sizes[k]) + "-" + std::to_string(sizes[k + 1])] = c.estimate;
        } catch (const NoCrossingError &) {
        }
    }
    auto curve = table.curve(b);
    report.window = {curve.front().x, curve.back().x};
    RandomStream rng(seed, 0);
    std::vector<double> boots;
    size_t failures = 0;
    for (size_t k = 0; k < n_boot; k++) {
        try {
            boots.push_back(find_crossing(table.resample(rng), a, b).estimate);
        } catch (const NoCrossingError &) {
            failures++;
        }
    }
    report.n_boot = n_boot;
    report.extras["boot_failures"] = static_cast<double>(failures);
    if (boots.size() >= 2) {
        double mean = 0;
        for (double v : boots) {
            mean += v;
        }
        mean /= static_cast<double>(boots.size());
        double var = 0;
        for (double v : boots) {
            var += (v - mean) * (v - mean);
        }
        report.standard_error = std::sqrt(var / static_cast<double>(boots.size() - 1));
    }
    return report;
}

namespace {

struct ScaledPoint {
    double u;
    double y;
    double var;
};

struct CollapseData {
    std::vector<size_t> sizes;
    std::vector<std::vector<CurvePoint>> curves;
    size_t total = 0;
};

CollapseData collapse_data(const SweepTable &table) {
    CollapseData data;
    data.sizes = table.sizes();
    for (size_t L : data.sizes) {
        data.curves.push_back(table.curve(L));
        data.total += data.curves.back().size();
    }
    return data;
}

double residual_of(const CollapseData &data, double q_c, double nu) {
    std::vector<std::vector<ScaledPoint>> scaled(data.sizes.size());
    for (size_t s = 0; s < data.sizes.size(); s++) {
        double factor = std::pow(static_cast<double>(data.sizes[s]), 1 / nu);
        for (const auto &p : data.curves[s]) {
            scaled[s].push_back({(p.x - q_c) * factor, p.mean, p.standard_error * p.standard_error});
        }
    }
    double total = 0;
    size_t count = 0;
    std::vector<ScaledPoint> others;
    for (size_t s = 0; s < scaled.size(); s++) {
        others.clear();
        for (size_t o = 0; o < scaled.size(); o++) {
            if (o != s) {
                others.insert(others.end(), scaled[o].begin(), scaled[o].end());
            }
        }
        std::sort(others.begin(), others.end(), [](const auto &a, const auto &b) { return a.u < b.u; });
        if (others.size() < 2) {
            continue;
        }
        for (const auto &p : scaled[s]) {
            if (p.u < others.front().u || p.u > others.back().u) {
                continue;
            }
            auto hi = std::lower_bound(others.begin(), others.end(), p.u,
                                       [](const ScaledPoint &a, double u) { return a.u < u; });
            if (hi == others.begin()) {
                hi++;
            }
            auto lo = hi - 1;
            double du = hi->u - lo->u;
            double lambda = du > 0 ? (p.u - lo->u) / du : 0.5;
            double y = (1 - lambda) * lo->y + lambda * hi->y;
            double var = (1 - lambda) * (1 - lambda) * lo->var + lambda * lambda * hi->var;
            double w = p.var + var;
            w = w > 1e-12 ? w : 1e-12;
            total += (p.y - y) * (p.y - y) / w;
            count++;
        }
    }
    if (2 * count < data.total || count == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return total / static_cast<double>(count);
}

CollapseResult collapse_search(const CollapseData &data, std::pair<double, double> qc_range,
                               std::pair<double, double> nu_range, size_t grid) {
    CollapseResult result{0, 0, std::numeric_limits<double>::infinity(), {}, false};
    double q_step = (qc_range.second - qc_range.first) / static_cast<double>(grid - 1);
    double nu_step = (nu_range.second - nu_range.first) / static_cast<double>(grid - 1);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (size_t i = 0; i < grid; i++) {
        for (size_t j = 0; j < grid; j++) {
            double q = qc_range.first + q_step * static_cast<double>(i);
            double nu = nu_range.first + nu_step * static_cast<double>(j);
            double r = residual_of(data, q, nu);
            result.landscape.push_back({q, nu, r});
            if (std::isfinite(r)) {
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
            if (r < result.residual) {
                result.q_c = q;
                result.nu = nu;
                result.residual = r;
            }
        }
    }
    result.flat = !(hi - lo > 1e-12 * std::max(1.0, std::abs(lo)));
    for (int round = 0; round < 3; round++) {
        double q0 = result.q_c;
        double nu0 = result.nu;
        size_t fine = 11;
        for (size_t i = 0; i < fine; i++) {
            for (size_t j = 0; j < fine; j++) {
                double q = q0 + q_step * (2.0 * static_cast<double>(i) / (fine - 1) - 1);
                double nu = nu0 + nu_step * (2.0 * static_cast<double>(j) / (fine - 1) - 1);
                q = std::clamp(q, qc_range.first, qc_range.second);
                nu = std::clamp(nu, nu_range.first, nu_range.second);
                double r = residual_of(data, q, nu);
                if (r < result.residual) {
                    result.q_c = q;
                    result.nu = nu;
                    result.residual = r;
                }
            }
        }
        q_step /= 5;
        nu_step /= 5;
    }
    return result;
}

}  // namespace

double collapse_residual(const SweepTable &table, double q_c, double nu) {
    return residual_of(collapse_data(table), q_c, nu);
}

CollapseResult collapse_fit(const SweepTable &table, std::pair<double, double> qc_range,
                            std::pair<double, double> nu_range, size_t grid) {
    auto data = collapse_data(table);
    if (data.sizes.size() < 3) {
        throw DimensionError("a collapse fit needs at least three system sizes");
    }
    if (grid < 2) {
        throw std::invalid_argument("collapse grid needs at least two points per axis");
    }
    return collapse_search(data, qc_range, nu_range, grid);
}

static double stddev(const std::vector<double> &values) {
    if (values.size() < 2) {
        return 0;
    }
    double mean = 0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double var = 0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    return std::sqrt(var / static_cast<double>(values.size() - 1));
}

FitReport collapse_report(const SweepTable &table, std::pair<double, double> qc_range,
                          std::pair<double, double> nu_range, size_t n_boot, uint64_t seed) {
    auto main = collapse_fit(table, qc_range, nu_range);
    FitReport report;
    report.estimate = main.nu;
    report.window = qc_range;
    report.n_boot = n_boot;
    report.extras["q_c"] = main.q_c;
    report.extras["residual"] = main.residual;
    report.extras["flat"] = main.flat ? 1 : 0;
    RandomStream rng(seed, 1);
    std::vector<double> nus;
    std::vector<double> qcs;
    for (size_t k = 0; k < n_boot; k++) {
        auto data = collapse_data(table.resample(rng));
        auto fit = collapse_search(data, qc_range, nu_range, 21);
        nus.push_back(fit.nu);
        qcs.push_back(fit.q_c);
    }
    report.standard_error = stddev(nus);
    report.extras["q_c_stderr"] = stddev(qcs);
    return report;
}

std::vector<double> ProfileSamples::mean() const {
    std::vector<double> out(ells.size(), 0);
    for (const auto &row : per_seed) {
        for (size_t i = 0; i < row.size(); i++) {
            out[i] += row[i];
        }
    }
    for (double &v : out) {
        v /= static_cast<double>(std::max<size_t>(1, per_seed.size()));
    }
    return out;
}

ProfileSamples profile_samples(const std::vector<TrajectoryRecord> &records, const std::string &prefix,
                               double t_min, double t_max) {
    std::string head = prefix + ":";
    std::vector<std::map<double, double>> sums;
    std::set<double> all_ells;
    for (const auto &rec : records) {
        std::set<double> times;
        std::map<double, double> sum;
        for (const auto &row : rec.rows) {
            if (row.t < t_min || row.t > t_max) {
                continue;
            }
            times.insert(row.t);
            if (row.observable.starts_with(head)) {
                double ell = std::stod(row.observable.substr(head.size()));
                sum[ell] += row.value;
                all_ells.insert(ell);
            }
        }
        if (times.empty()) {
            continue;
        }
        for (auto &[ell, v] : sum) {
            v /= static_cast<double>(times.size());
        }
        sums.push_back(std::move(sum));
    }
    ProfileSamples out;
    out.ells.assign(all_ells.begin(), all_ells.end());
    for (const auto &sum : sums) {
        std::vector<double> row;
        for (double ell : out.ells) {
            auto it = sum.find(ell);
            row.push_back(it == sum.end() ? 0 : it->second);
        }
        out.per_seed.push_back(std::move(row));
    }
    return out;
}

LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw RangeError("a line fit needs at least two points");
    }
    double n = static_cast<double>(x.size());
    double mx = 0;
    double my = 0;
    for (size_t i = 0; i < x.size(); i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0;
    double sxy = 0;
    double syy = 0;
    for (size_t i = 0; i < x.size(); i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) {
        throw RangeError("a line fit needs at least two distinct abscissae");
    }
    double slope = sxy / sxx;
    double r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1;
    return {slope, my - slope * mx, r2};
}

namespace {

/// Fits over the window using means of the given seed rows. `transform`
/// maps (l, mean) to an (x, y) point or rejects it.
template <typename Transform>
LineFit fit_profile(const ProfileSamples &profile, const std::vector<size_t> &rows, double lo, double hi,
                    Transform transform) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (size_t i = 0; i < profile.ells.size(); i++) {
        double ell = profile.ells[i];
        if (ell < lo || ell > hi) {
            continue;
        }
        double mean = 0;
        for (size_t r : rows) {
            mean += profile.per_seed[r][i];
        }
        mean /= static_cast<double>(rows.size());
        double x;
        double y;
        if (transform(ell, mean, x, y)) {
            xs.push_back(x);
            ys.push_back(y);
        }
    }
    if (xs.size() < 2) {
        throw RangeError("fewer than two usable points in the fit window [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
    }
    return fit_line(xs, ys);
}

template <typename Transform>
FitReport bootstrap_profile_fit(const ProfileSamples &profile, double lo, double hi, size_t n_boot, uint64_t seed,
                                Transform transform, bool exp_intercept) {
    if (profile.per_seed.empty()) {
        throw RangeError("no samples to fit");
    }
    std::vector<size_t> rows(profile.per_seed.size());
    for (size_t i = 0; i < rows.size(); i++) {
        rows[i] = i;
    }
    auto main = fit_profile(profile, rows, lo, hi, transform);
    FitReport report;
    report.estimate = main.slope;
    report.window = {lo, hi};
    report.n_boot = n_boot;
    report.extras[exp_intercept ? "prefactor" : "intercept"] = exp_intercept ? std::exp(main.intercept) : main.intercept;
    report.extras["r_squared"] = main.r_squared;
    RandomStream rng(seed, 2);
    std::vector<double> slopes;
    for (size_t k = 0; k < n_boot; k++) {
        for (size_t &r : rows) {
            r = rng.below(profile.per_seed.size());
        }
        try {
            slopes.push_back(fit_profile(profile, rows, lo, hi, transform).slope);
        } catch (const RangeError &) {
        }
    }
    report.standard_error = stddev(slopes);
    return report;
}

}  // namespace

FitReport fit_log_entropy(const ProfileSamples &profile, double lo, double hi, size_t chord_L, size_t n_boot,
                          uint64_t seed) {
    auto transform = [chord_L](double ell, double mean, double &x, double &y) {
        double len = ell;
        if (chord_L) {
            double L = static_cast<double>(chord_L);
            len = L / std::numbers::pi * std::sin(std::numbers::pi * ell / L);
        }
        if (len <= 0) {
            return false;
        }
        x = std::log(len);
        y = mean;
        return true;
    };
    return bootstrap_profile_fit(profile, lo, hi, n_boot, seed, transform, false);
}

FitReport fit_power_law(const ProfileSamples &profile, double lo, double hi, size_t n_boot, uint64_t seed) {
    auto transform = [](double ell, double mean, double &x, double &y) {
        if (mean <= 0 || ell <= 0) {
            return false;
        }
        x = std::log(ell);
        y = std::log(mean);
        return true;
    };
    return bootstrap_profile_fit(profile, lo, hi, n_boot, seed, transform, true);
}

FitReport fit_exponential(const ProfileSamples &profile, double lo, double hi, size_t n_boot, uint64_t seed) {
    auto transform = [](double ell, double mean, double &x, double &y) {
        if (mean <= 0) {
            return false;
        }
        x = ell;
        y = std::log(mean);
        return true;
    };
    return bootstrap_profile_fit(profile, lo, hi, n_boot, seed, transform, true);
}

ProfileSamples series_samples(const std::vector<TrajectoryRecord> &records, const std::string &observable,
                              double time_scale) {
    ProfileSamples out;
    for (const auto &rec : records) {
        auto s = rec.series(observable);
        if (out.per_seed.empty()) {
            for (auto [t, v] : s) {
                out.ells.push_back(t / time_scale);
            }
        } else if (s.size() != out.ells.size()) {
            throw DimensionError("records probe " + observable + " at different times");
        }
        std::vector<double> row;
        for (auto [t, v] : s) {
            row.push_back(v);
        }
        out.per_seed.push_back(std::move(row));
    }
    return out;
}

namespace {

struct ConeData {
    std::vector<double> ts;
    std::vector<double> xs;
    /// f[s][i][j] and S_R[s][i] per trajectory s, time i, half-width j.
    std::vector<std::vector<std::vector<double>>> f;
    std::vector<std::vector<double>> sr;
};

ConeData cone_data(const std::vector<TrajectoryRecord> &records) {
    ConeData d;
    if (records.empty()) {
        throw RangeError("no reference-protocol records");
    }
    std::map<double, size_t> x_index;
    for (const auto &row : records.front().rows) {
        if (row.observable.starts_with("f:")) {
            x_index.emplace(std::stod(row.observable.substr(2)), 0);
        }
    }
    for (auto &[x, i] : x_index) {
        i = d.xs.size();
        d.xs.push_back(x);
    }
    for (auto [t, v] : records.front().series("S_R")) {
        d.ts.push_back(t);
    }
    std::map<double, size_t> t_index;
    for (size_t i = 0; i < d.ts.size(); i++) {
        t_index.emplace(d.ts[i], i);
    }
    for (const auto &rec : records) {
        std::vector<std::vector<double>> f(d.ts.size(), std::vector<double>(d.xs.size(), 0));
        std::vector<double> sr(d.ts.size(), 0);
        for (const auto &row : rec.rows) {
            auto ti = t_index.find(row.t);
            if (ti == t_index.end()) {
                throw DimensionError("records probe the reference protocol at different times");
            }
            if (row.observable == "S_R") {
                sr[ti->second] = row.value;
            } else if (row.observable.starts_with("f:")) {
                auto xi = x_index.find(std::stod(row.observable.substr(2)));
                if (xi != x_index.end()) {
                    f[ti->second][xi->second] = row.value;
                }
            }
        }
        d.f.push_back(std::move(f));
        d.sr.push_back(std::move(sr));
    }
    return d;
}

LineFit front_fit(const ConeData &d, const std::vector<size_t> &rows, double threshold, size_t *points) {
    std::vector<double> ts;
    std::vector<double> fronts;
    double x_max = d.xs.back();
    for (size_t i = 0; i < d.ts.size(); i++) {
        double sr = 0;
        std::vector<double> f(d.xs.size(), 0);
        for (size_t r : rows) {
            sr += d.sr[r][i];
            for (size_t j = 0; j < d.xs.size(); j++) {
                f[j] += d.f[r][i][j];
            }
        }
        if (sr <= 0 || d.ts[i] <= 0) {
            continue;
        }
        for (size_t j = 0; j < d.xs.size(); j++) {
            if (f[j] / (2 * sr) < threshold) {
                continue;
            }
            double front = d.xs[j];
            if (j > 0) {
                double a = f[j - 1] / (2 * sr);
                double b = f[j] / (2 * sr);
                front = d.xs[j - 1] + (d.xs[j] - d.xs[j - 1]) * (threshold - a) / (b - a);
            }
            // The front stalls near x = L/4 (half the chain), where any interval
            // holds the reference information; keep to the ballistic part.
            if (front > 0 && front < 0.4 * x_max) {
                ts.push_back(d.ts[i]);
                fronts.push_back(front);
            }
            break;
        }
    }
    if (points) {
        *points = ts.size();
    }
    return fit_line(ts, fronts);
}

}  // namespace

FitReport butterfly_velocity(const std::vector<TrajectoryRecord> &records, double threshold, size_t n_boot,
                             uint64_t seed) {
    auto d = cone_data(records);
    std::vector<size_t> rows(records.size());
    for (size_t i = 0; i < rows.size(); i++) {
        rows[i] = i;
    }
    size_t points = 0;
    auto main = front_fit(d, rows, threshold, &points);
    FitReport report;
    report.estimate = main.slope;
    report.window = {d.ts.front(), d.ts.back()};
    report.n_boot = n_boot;
    report.extras["intercept"] = main.intercept;
    report.extras["points"] = static_cast<double>(points);
    RandomStream rng(seed, 4);
    std::vector<double> slopes;
    for (size_t k = 0; k < n_boot; k++) {
        for (size_t &r : rows) {
            r = rng.below(records.size());
        }
        try {
            slopes.push_back(front_fit(d, rows, threshold, nullptr).slope);
        } catch (const RangeError &) {
        }
    }
    report.standard_error = stddev(slopes);
    return report;
}

static double dilute_k(const std::vector<std::array<double, 3>> &points, const std::vector<double> &qs) {
    double num = 0;
    double den = 0;
    for (size_t i = 0; i < points.size(); i++) {
        double x = 2 * qs[i] * (1 - qs[i]);
        num += points[i][0] / x;
        den += 1 / (x * x);
    }
    return num / den;
}

FitReport fit_dilute_law(const std::vector<std::array<double, 3>> &points, size_t n_boot, uint64_t seed) {
    if (points.empty()) {
        throw RangeError("no critical points to fit");
    }
    std::vector<double> qs;
    double r_lo = points.front()[0];
    double r_hi = r_lo;
    for (const auto &p : points) {
        if (!(p[1] > 0 && p[1] < 1)) {
            throw RangeError("critical point outside (0, 1)");
        }
        qs.push_back(p[1]);
        r_lo = std::min(r_lo, p[0]);
        r_hi = std::max(r_hi, p[0]);
    }
    FitReport report;
    report.estimate = dilute_k(points, qs);
    report.window = {r_lo, r_hi};
    report.n_boot = n_boot;
    RandomStream rng(seed, 3);
    std::vector<double> ks;
    for (size_t k = 0; k < n_boot; k++) {
        for (size_t i = 0; i < points.size(); i++) {
            // Box-Muller.
            double u1 = 1 - rng.uniform();
            double u2 = rng.uniform();
            double g = std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
            qs[i] = std::clamp(points[i][1] + points[i][2] * g, 1e-9, 1 - 1e-9);
        }
        ks.push_back(dilute_k(points, qs));
    }
    report.standard_error = stddev(ks);
    return report;
}

}  // namespace momlab
