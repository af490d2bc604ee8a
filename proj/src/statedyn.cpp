#include "cortrans/statedyn.hpp"

#include <cmath>
#include <sstream>

namespace cortrans {

double one_minus_exp(double x) noexcept { return -std::expm1(-x); }

SystemParams::SystemParams(double nbar, double p, double gamma)
    : nbar_(nbar), p_(p), gamma_(gamma) {
    if (!(nbar > 0.0) || !std::isfinite(nbar))
        throw std::invalid_argument("nbar must be a finite positive number");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0, 1]");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("gamma must be a finite positive number");
}

double SystemParams::coherence_weight() const noexcept { return std::abs(coherence()); }

OverlapFactors overlap_factors(double x_sq) {
    if (!(x_sq >= 0.0))
        throw std::domain_error("overlap_factors: x_sq must be non-negative");
    const double e2 = std::exp(-2.0 * x_sq);
    const double e4 = std::exp(-4.0 * x_sq);
    return {2.0 * (1.0 + e2), 2.0 * one_minus_exp(2.0 * x_sq),
            2.0 * (1.0 + e4), 2.0 * one_minus_exp(4.0 * x_sq)};
}

AmplitudePair amplitudes_at(const SystemParams& params, double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::domain_error("amplitudes_at: time must be finite and non-negative");
    const double gt = params.gamma() * t;
    return {params.nbar() * std::exp(-gt), params.nbar() * one_minus_exp(gt)};
}

TwoQubitXState TwoQubitXState::from_elements(double d11, double d22, double d33, double d44,
                                             double o14, double o23) {
    const std::array<double, 4> d{d11, d22, d33, d44};
    for (double x : {d11, d22, d33, d44, o14, o23})
        if (!std::isfinite(x)) throw ValidationError("X state has a non-finite element");

    const double tr = d11 + d22 + d33 + d44;
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "X state trace deviates from one: " << tr;
        throw ValidationError(msg.str());
    }
    for (double x : d)
        if (x < -kPositivityTolerance) throw ValidationError("X state has a negative population");
    if (d11 * d44 < o14 * o14 - kPositivityTolerance)
        throw ValidationError("X state outer block is not positive semidefinite");
    if (d22 * d33 < o23 * o23 - kPositivityTolerance)
        throw ValidationError("X state inner block is not positive semidefinite");
    return TwoQubitXState(d, o14, o23);
}

double TwoQubitXState::trace() const noexcept { return d_[0] + d_[1] + d_[2] + d_[3]; }

double TwoQubitXState::element(int i, int j) const noexcept {
    if (i == j) return d_[static_cast<std::size_t>(i)];
    if (i + j == 3) return (i == 0 || i == 3) ? o14_ : o23_;
    return 0.0;
}

double TwoQubitXState::max_abs_difference(const TwoQubitXState& other) const noexcept {
    double m = std::max(std::abs(o14_ - other.o14_), std::abs(o23_ - other.o23_));
    for (std::size_t k = 0; k < 4; ++k) m = std::max(m, std::abs(d_[k] - other.d_[k]));
    return m;
}

TwoQubitXState TwoQubitXState::with_coherences(double o14, double o23) const {
    return from_elements(d_[0], d_[1], d_[2], d_[3], o14, o23);
}

std::string to_string(Partition partition) {
    return partition == Partition::Cavities ? "cavities" : "reservoirs";
}

namespace {

// Shared construction: `own_sq` plays alpha_t^2 for the cavities and abar_t^2
// for the reservoirs; `other_sq` is the complementary amplitude.
TwoQubitXState build_state(const SystemParams& params, double own_sq, double other_sq) {
    const OverlapFactors own = overlap_factors(own_sq);
    const OverlapFactors other = overlap_factors(other_sq);
    const OverlapFactors initial = overlap_factors(params.nbar());

    const double norm = 16.0 * initial.f_plus_sq;
    const double mixed = own.g_plus_sq * own.g_minus_sq;

    const double r11 = own.g_plus_sq * own.g_plus_sq * other.f_plus_sq;
    const double r44 = own.g_minus_sq * own.g_minus_sq * other.f_plus_sq;
    const double r22 = mixed * other.f_minus_sq;
    const double r14 = params.coherence() * mixed * other.f_plus_sq;
    const double r23 = params.coherence() * mixed * other.f_minus_sq;

    return TwoQubitXState::from_elements(r11 / norm, r22 / norm, r22 / norm, r44 / norm,
                                         r14 / norm, r23 / norm);
}

}  // namespace

TwoQubitXState cavity_state(const SystemParams& params, double t) {
    const AmplitudePair amp = amplitudes_at(params, t);
    return build_state(params, amp.alpha_t_sq, amp.abar_t_sq);
}

TwoQubitXState reservoir_state(const SystemParams& params, double t) {
    const AmplitudePair amp = amplitudes_at(params, t);
    return build_state(params, amp.abar_t_sq, amp.alpha_t_sq);
}

TwoQubitXState partition_state(const SystemParams& params, Partition partition, double t) {
    return partition == Partition::Cavities ? cavity_state(params, t)
                                            : reservoir_state(params, t);
}

double mirror_time(const SystemParams& params, double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("mirror_time: time must be finite and positive");
    return -std::log(one_minus_exp(params.gamma() * t)) / params.gamma();
}

}  // namespace cortrans
