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

#ifndef MOMLAB_ANALYSIS_H
#define MOMLAB_ANALYSIS_H

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "momlab/protocols.h"
#include "momlab/rng.h"

namespace momlab {

struct CurvePoint {
    double x;
    double mean;
    double standard_error;
    size_t count;
};

/// Per-seed samples of one observable over a parameter grid and several
/// system sizes.
struct SweepTable {
    std::string parameter;
    /// samples[L][x] = one value per trajectory.
    std::map<size_t, std::map<double, std::vector<double>>> samples;

    void add(size_t L, double x, double value);
    std::vector<size_t> sizes() const;
    /// Points sorted by x. Standard error is the sample standard deviation
    /// over sqrt(count) (0 for a single sample).
    std::vector<CurvePoint> curve(size_t L) const;
    /// A copy where every (L, x) cell is resampled with replacement.
    SweepTable resample(RandomStream &rng) const;
};

/// Groups records by their "L" and `parameter` params and adds each
/// record's time average of `observable` over [t_min, t_max].
SweepTable sweep_table(const std::vector<TrajectoryRecord> &records, const std::string &parameter,
                       const std::string &observable, double t_min, double t_max);

/// Estimate with bootstrap uncertainty, serialized as a fit report.
struct FitReport {
    double estimate = 0;
    double standard_error = 0;
    std::pair<double, double> window = {0, 0};
    size_t n_boot = 0;
    /// Secondary fitted quantities (e.g. "prefactor", "nu").
    std::map<std::string, double> extras;
};

/// Where the curves of two sizes cross between grid points `bracket` and
/// `bracket + 1`, at fraction `fraction` of that interval.
struct Crossing {
    size_t small_L;
    size_t large_L;
    size_t bracket;
    double fraction;
    double estimate;
};

/// Crossing of mean curves of sizes a and b by linear interpolation of their
/// difference on the shared grid points. If the difference changes sign more
/// than once, the sign change with the largest jump in the difference is
/// taken. Throws NoCrossingError when there is none.
Crossing find_crossing(const SweepTable &table, size_t a, size_t b);

/// q_c from the two largest sizes, with standard error from `n_boot`
/// resamples over seeds. extras holds "pair:<L1>-<L2>" estimates for
/// consecutive size pairs that cross, and "boot_failures".
FitReport crossing_finder(const SweepTable &table, size_t n_boot = 200, uint64_t seed = 1);

struct CollapseResult {
    double q_c;
    double nu;
    double residual;
    /// Residual on the coarse search grid: (q_c, nu, residual).
    std::vector<std::array<double, 3>> landscape;
    /// Set when the residual does not vary over the grid (degenerate data).
    bool flat;
};

/// Leave-one-size-out residual of the rescaled data: each point of size L
/// is compared with the piecewise-linear interpolation through all other
/// sizes' points at u = (x - q_c) L^(1/nu), weighted by the summed
/// variances. Averaged over overlapping points; +inf when fewer than half
/// the points overlap.
double collapse_residual(const SweepTable &table, double q_c, double nu);

/// Grid search over [qc_lo, qc_hi] x [nu_lo, nu_hi] followed by three
/// rounds of local refinement. Throws DimensionError with fewer than three
/// sizes.
CollapseResult collapse_fit(const SweepTable &table, std::pair<double, double> qc_range,
                            std::pair<double, double> nu_range, size_t grid = 41);

/// collapse_fit on the data and on `n_boot` seed resamples. The estimate is
/// nu; extras hold "q_c", "q_c_stderr", "residual" and "flat".
FitReport collapse_report(const SweepTable &table, std::pair<double, double> qc_range,
                          std::pair<double, double> nu_range, size_t n_boot = 200, uint64_t seed = 1);

/// Per-trajectory samples of an indexed profile, e.g. S(l) or P(l).
struct ProfileSamples {
    std::vector<double> ells;
    /// per_seed[s][i] is the value at ells[i] for trajectory s.
    std::vector<std::vector<double>> per_seed;
    std::vector<double> mean() const;
};

/// Collects "<prefix>:<l>" time averages over [t_min, t_max] from each
/// record. Indices missing at a probe time count as 0, so sparse outputs
/// such as P(l) average correctly.
ProfileSamples profile_samples(const std::vector<TrajectoryRecord> &records, const std::string &prefix,
                               double t_min, double t_max);

/// S(l) = K ln(l) + c over lo <= l <= hi; estimate K. With chord_L > 0 the
/// chord length (L/pi) sin(pi l / L) replaces l. Throws RangeError if fewer
/// than two points fall in the window.
FitReport fit_log_entropy(const ProfileSamples &profile, double lo, double hi, size_t chord_L = 0,
                          size_t n_boot = 200, uint64_t seed = 1);

/// ln P(l) = a ln(l) + b over lo <= l <= hi where the mean is positive;
/// estimate a, extras["prefactor"] = e^b.
FitReport fit_power_law(const ProfileSamples &profile, double lo, double hi, size_t n_boot = 200,
                        uint64_t seed = 1);

/// ln y = a x + b over lo <= x <= hi where the mean is positive; estimate
/// a, extras["prefactor"] = e^b.
FitReport fit_exponential(const ProfileSamples &profile, double lo, double hi, size_t n_boot = 200,
                          uint64_t seed = 1);

/// Per-trajectory time series of `observable` with x = t / time_scale.
/// Every record must probe the same times; throws DimensionError otherwise.
ProfileSamples series_samples(const std::vector<TrajectoryRecord> &records, const std::string &observable,
                              double time_scale);

/// Wavefront of the reference-qubit protocol: at each probe time, the
/// half-width where mean f / (2 mean S_R) first reaches `threshold`
/// (interpolated in x). Returns the slope of front(t) over probes with
/// 0 < front < 0.4 x_max, with bootstrap over trajectories. extras:
/// "intercept", "points".
FitReport butterfly_velocity(const std::vector<TrajectoryRecord> &records, double threshold = 0.5,
                             size_t n_boot = 200, uint64_t seed = 1);

/// Fits r = k / (2 q (1 - q)) to critical points (r, q_c, stderr) by least
/// squares in r; uncertainty from resampling q_c within its errors.
FitReport fit_dilute_law(const std::vector<std::array<double, 3>> &points, size_t n_boot = 200,
                         uint64_t seed = 1);

/// Ordinary least squares y = slope x + intercept.
struct LineFit {
    double slope;
    double intercept;
    double r_squared;
};
LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace momlab

#endif
