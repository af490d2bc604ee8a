#pragma once

// Closed-form reduced dynamics of two entangled-coherent-state cavity modes,
// each damped into its own zero-temperature reservoir. Every state produced
// here is a two-qubit X state written in the time-dependent cat basis
// {|++>, |+->, |-+>, |-->}.

#include <array>
#include <stdexcept>
#include <string>

namespace cortrans {

/// Raised when a density matrix violates trace or block positivity beyond
/// the roundoff tolerance.
class ValidationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// 1 - exp(-x) without cancellation for small x.
double one_minus_exp(double x) noexcept;

/// Physical scenario: mean photon number, mixing probability and decay rate.
class SystemParams {
public:
    /// Throws std::invalid_argument unless nbar > 0, 0 <= p <= 1, gamma > 0.
    SystemParams(double nbar, double p, double gamma);

    double nbar() const noexcept { return nbar_; }
    double p() const noexcept { return p_; }
    double gamma() const noexcept { return gamma_; }

    /// Signed coherence factor 2p - 1.
    double coherence() const noexcept { return 2.0 * p_ - 1.0; }
    /// |2p - 1|, in [0, 1].
    double coherence_weight() const noexcept;

private:
    double nbar_;
    double p_;
    double gamma_;
};

struct AmplitudePair {
    double alpha_t_sq;  ///< cavity amplitude squared
    double abar_t_sq;   ///< collective reservoir amplitude squared
};

/// Squared normalizations of the cat basis (g) and of the entangled
/// coherent states (f), evaluated from x^2.
struct OverlapFactors {
    double g_plus_sq;
    double g_minus_sq;
    double f_plus_sq;
    double f_minus_sq;
};

OverlapFactors overlap_factors(double x_sq);

/// alpha_t^2 = nbar e^{-gamma t}, abar_t^2 = nbar (1 - e^{-gamma t}).
AmplitudePair amplitudes_at(const SystemParams& params, double t);

/// Real X-shaped two-qubit density matrix. Only the diagonal and the real
/// anti-diagonal coherences (1,4) and (2,3) are stored.
class TwoQubitXState {
public:
    static constexpr double kTraceTolerance = 1e-12;
    static constexpr double kPositivityTolerance = 1e-12;

    /// Validated construction; throws ValidationError on a trace or
    /// positivity violation larger than the tolerances above.
    static TwoQubitXState from_elements(double d11, double d22, double d33, double d44,
                                        double o14, double o23);

    double d11() const noexcept { return d_[0]; }
    double d22() const noexcept { return d_[1]; }
    double d33() const noexcept { return d_[2]; }
    double d44() const noexcept { return d_[3]; }
    double o14() const noexcept { return o14_; }
    double o23() const noexcept { return o23_; }

    const std::array<double, 4>& populations() const noexcept { return d_; }
    double trace() const noexcept;

    /// Element (i, j) of the dense 4x4 matrix, zero-based.
    double element(int i, int j) const noexcept;
    /// Max-norm distance over the six independent elements.
    double max_abs_difference(const TwoQubitXState& other) const noexcept;

    /// Returns a copy with the two coherences replaced; validated.
    TwoQubitXState with_coherences(double o14, double o23) const;

private:
    TwoQubitXState(std::array<double, 4> d, double o14, double o23) noexcept
        : d_(d), o14_(o14), o23_(o23) {}

    std::array<double, 4> d_;
    double o14_;
    double o23_;
};

enum class Partition { Cavities, Reservoirs };

std::string to_string(Partition partition);

/// Reduced state of the two cavity modes at time t >= 0.
TwoQubitXState cavity_state(const SystemParams& params, double t);
/// Reduced state of the two reservoirs: cavity construction with
/// alpha_t <-> abar_t exchanged.
TwoQubitXState reservoir_state(const SystemParams& params, double t);

TwoQubitXState partition_state(const SystemParams& params, Partition partition, double t);

/// Time t' with e^{-gamma t'} = 1 - e^{-gamma t}; reservoir_state(t) equals
/// cavity_state(t'). Requires t > 0.
double mirror_time(const SystemParams& params, double t);

}  // namespace cortrans
