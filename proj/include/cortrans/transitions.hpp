#pragma once

// Characteristic times of the dynamics: the branch-switch (sudden
// transition) times of both partitions, the lifetime of the metastable
// decoherence-free plateau, and detectors that recover them from sampled
// trajectories.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cortrans/quantinfo.hpp"
#include "cortrans/statedyn.hpp"

namespace cortrans {

using TimeWindow = std::pair<double, double>;

struct TransitionReport {
    std::optional<double> t_c_analytic;
    std::optional<double> t_r_analytic;
    std::optional<double> dfs_duration_analytic;
    std::optional<double> t_c_detected;
    std::optional<double> t_r_detected;
    std::optional<TimeWindow> dfs_window_detected;
    /// e^{-gamma t_c} + e^{-gamma t_r} - 1; absent unless both times exist.
    std::optional<double> complementarity_residual;
    std::string note;
};

/// Branch switch time of the cavities,
/// t_c = -ln[1 + ln|2p-1| / (4 nbar)] / gamma. Absent when the bracket is
/// not positive. Throws std::domain_error for p = 1/2.
std::optional<double> sudden_transition_time_cavities(const SystemParams& params);

/// Branch switch time of the reservoirs,
/// t_r = -ln[ln(1/|2p-1|) / (4 nbar)] / gamma. Absent when the argument is
/// >= 1 (no transition) or 0 (p in {0, 1}, t_r infinite).
std::optional<double> sudden_transition_time_reservoirs(const SystemParams& params);

/// ln(nbar - 1) / gamma for nbar > 2.
std::optional<double> dfs_duration(const SystemParams& params);

/// Fixed point of the plateau: populations 1/4, both coherences (2p-1)/4.
TwoQubitXState dfs_fixed_point(const SystemParams& params);

struct TrajectoryPoint {
    double t;
    TwoQubitXState state;
};

std::vector<TrajectoryPoint> trajectory(const SystemParams& params, Partition partition,
                                        std::span<const double> times);

inline constexpr double kDefaultDfsTolerance = 1e-2;

/// Longest contiguous run of samples within `eps` (max norm) of the fixed
/// point, as (first, last) sample times. Throws std::domain_error on an
/// empty trajectory.
std::optional<TimeWindow> detect_dfs_window(std::span<const TrajectoryPoint> traj,
                                            const SystemParams& params,
                                            double eps = kDefaultDfsTolerance);

struct BranchSample {
    double t;
    double c_z;
    double c_x;
};

/// C^X - C^Z as a function of time.
using BranchGap = std::function<double(double)>;

BranchGap branch_gap(const SystemParams& params, Partition partition);

std::vector<BranchSample> branch_curve(const SystemParams& params, Partition partition,
                                       std::span<const double> times);

/// First time where the optimal branch switches. Samples within
/// kBranchTieTolerance of a tie are skipped; the bracketing pair is refined
/// by bisection on `gap` down to `time_tolerance`, or linearly interpolated
/// when no evaluator is given.
std::optional<double> detect_branch_crossing(std::span<const BranchSample> curve,
                                             const BranchGap& gap = {},
                                             double time_tolerance = 1e-12);

/// Grid used by the detectors in make_transition_report: t = 0 followed by
/// log-spaced points from 1e-6 to `t_max_gamma`, in units of 1/gamma.
std::vector<double> log_start_grid(double t_max_gamma, int n_points, double gamma);
std::vector<double> linear_grid(double t_max_gamma, int n_points, double gamma);

TransitionReport make_transition_report(const SystemParams& params);

}  // namespace cortrans
