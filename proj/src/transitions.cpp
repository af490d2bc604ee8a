#include "cortrans/transitions.hpp"

#include <cmath>
#include <stdexcept>

namespace cortrans {

namespace {

double coherence_log(const SystemParams& params, const char* who) {
    const double q = params.coherence_weight();
    if (q == 0.0)
        throw std::domain_error(std::string(who) + ": undefined for p = 1/2 (no coherences)");
    return std::log(q);
}

}  // namespace

std::optional<double> sudden_transition_time_cavities(const SystemParams& params) {
    const double bracket_shift = coherence_log(params, "sudden_transition_time_cavities") /
                                 (4.0 * params.nbar());
    if (!(1.0 + bracket_shift > 0.0)) return std::nullopt;
    return -std::log1p(bracket_shift) / params.gamma();
}

std::optional<double> sudden_transition_time_reservoirs(const SystemParams& params) {
    const double arg = -coherence_log(params, "sudden_transition_time_reservoirs") /
                       (4.0 * params.nbar());
    if (!(arg > 0.0) || arg >= 1.0) return std::nullopt;
    return -std::log(arg) / params.gamma();
}

std::optional<double> dfs_duration(const SystemParams& params) {
    if (!(params.nbar() > 2.0)) return std::nullopt;
    return std::log(params.nbar() - 1.0) / params.gamma();
}

TwoQubitXState dfs_fixed_point(const SystemParams& params) {
    const double c = 0.25 * params.coherence();
    return TwoQubitXState::from_elements(0.25, 0.25, 0.25, 0.25, c, c);
}

std::vector<TrajectoryPoint> trajectory(const SystemParams& params, Partition partition,
                                        std::span<const double> times) {
    std::vector<TrajectoryPoint> out;
    out.reserve(times.size());
    for (double t : times) out.push_back({t, partition_state(params, partition, t)});
    return out;
}

std::optional<TimeWindow> detect_dfs_window(std::span<const TrajectoryPoint> traj,
                                            const SystemParams& params, double eps) {
    if (traj.empty()) throw std::domain_error("detect_dfs_window: empty trajectory");
    if (!(eps > 0.0)) throw std::invalid_argument("detect_dfs_window: eps must be positive");

    const TwoQubitXState fixed = dfs_fixed_point(params);
    std::optional<TimeWindow> best;
    std::optional<std::size_t> run_start;
    for (std::size_t k = 0; k <= traj.size(); ++k) {
        const bool inside = k < traj.size() && traj[k].state.max_abs_difference(fixed) < eps;
        if (inside) {
            if (!run_start) run_start = k;
            continue;
        }
        if (run_start) {
            const TimeWindow w{traj[*run_start].t, traj[k - 1].t};
            if (!best || w.second - w.first > best->second - best->first) best = w;
            run_start.reset();
        }
    }
    return best;
}

BranchGap branch_gap(const SystemParams& params, Partition partition) {
    return [params, partition](double t) {
        const ClassicalCorrelation cc =
            classical_correlation_analytic(partition_state(params, partition, t));
        return cc.c_x - cc.c_z;
    };
}

std::vector<BranchSample> branch_curve(const SystemParams& params, Partition partition,
                                       std::span<const double> times) {
    std::vector<BranchSample> out;
    out.reserve(times.size());
    for (double t : times) {
        const ClassicalCorrelation cc =
            classical_correlation_analytic(partition_state(params, partition, t));
        out.push_back({t, cc.c_z, cc.c_x});
    }
    return out;
}

std::optional<double> detect_branch_crossing(std::span<const BranchSample> curve,
                                             const BranchGap& gap, double time_tolerance) {
    const BranchSample* prev = nullptr;
    for (const BranchSample& s : curve) {
        const double d = s.c_x - s.c_z;
        if (std::abs(d) <= kBranchTieTolerance) continue;
        if (prev && std::signbit(prev->c_x - prev->c_z) != std::signbit(d)) {
            double lo = prev->t;
            double hi = s.t;
            const double d_lo = prev->c_x - prev->c_z;
            if (!gap) return lo + (hi - lo) * d_lo / (d_lo - d);
            const bool lo_negative = std::signbit(d_lo);
            while (hi - lo > time_tolerance) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                if (std::signbit(gap(mid)) == lo_negative)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = &s;
    }
    return std::nullopt;
}

std::vector<double> log_start_grid(double t_max_gamma, int n_points, double gamma) {
    constexpr double kFirst = 1e-6;
    if (n_points < 2 || !(t_max_gamma > kFirst))
        throw std::invalid_argument("log grid needs n_points >= 2 and t_max_gamma > 1e-6");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n_points) + 1);
    grid.push_back(0.0);
    const double log_lo = std::log(kFirst);
    const double log_hi = std::log(t_max_gamma);
    for (int k = 0; k < n_points; ++k) {
        const double gt = k + 1 == n_points
                              ? t_max_gamma
                              : std::exp(log_lo + (log_hi - log_lo) * k / (n_points - 1));
        grid.push_back(gt / gamma);
    }
    return grid;
}

std::vector<double> linear_grid(double t_max_gamma, int n_points, double gamma) {
    if (n_points < 2 || !(t_max_gamma > 0.0))
        throw std::invalid_argument("linear grid needs n_points >= 2 and t_max_gamma > 0");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n_points));
    for (int k = 0; k < n_points; ++k)
        grid.push_back(t_max_gamma * k / (n_points - 1) / gamma);
    return grid;
}

TransitionReport make_transition_report(const SystemParams& params) {
    TransitionReport report;
    report.dfs_duration_analytic = dfs_duration(params);

    // Detection windows in units of gamma t. The plateau can outlast 15/gamma
    // for very bright fields, so the linear grid extends past ln(nbar).
    const double dfs_span = std::max(15.0, 2.0 * std::log(params.nbar()) + 10.0);
    const auto dfs_times = linear_grid(dfs_span, 4001, params.gamma());
    const auto cav = trajectory(params, Partition::Cavities, dfs_times);
    report.dfs_window_detected = detect_dfs_window(cav, params);

    if (params.coherence_weight() == 0.0) {
        report.note = "p = 1/2: both coherences vanish, so no branch switch is defined";
        return report;
    }
    report.t_c_analytic = sudden_transition_time_cavities(params);
    report.t_r_analytic = sudden_transition_time_reservoirs(params);
    if (report.t_c_analytic && report.t_r_analytic) {
        const double g = params.gamma();
        report.complementarity_residual =
            std::exp(-g * *report.t_c_analytic) + std::exp(-g * *report.t_r_analytic) - 1.0;
    }

    const auto times = log_start_grid(50.0, 4000, params.gamma());
    const double tol = 1e-12 / params.gamma();
    const auto cav_curve = branch_curve(params, Partition::Cavities, times);
    report.t_c_detected =
        detect_branch_crossing(cav_curve, branch_gap(params, Partition::Cavities), tol);
    const auto res_curve = branch_curve(params, Partition::Reservoirs, times);
    report.t_r_detected =
        detect_branch_crossing(res_curve, branch_gap(params, Partition::Reservoirs), tol);

    if (!report.t_c_analytic) report.note = "no sudden transition: 4 nbar <= ln(1/|2p-1|)";
    return report;
}

}  // namespace cortrans
