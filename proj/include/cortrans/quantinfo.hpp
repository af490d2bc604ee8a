#pragma once

// Entropies, mutual information, classical correlations and discord for
// two-qubit X states. All information quantities are in bits.

#include <array>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "cortrans/statedyn.hpp"

namespace cortrans {

/// Eigenvalues in [-kEigenvalueFloor, 0] are treated as exact zeros.
inline constexpr double kEigenvalueFloor = 1e-12;
/// Numerical zero floor for I, C and D.
inline constexpr double kInformationFloor = 1e-10;
/// |C^X - C^Z| below this is reported as an ambiguous branch.
inline constexpr double kBranchTieTolerance = 1e-12;
/// Outcomes with smaller probability carry no conditional state.
inline constexpr double kMinOutcomeProbability = 1e-14;

/// Projective measurement axis on the Bloch sphere.
struct MeasurementDirection {
    double theta = 0.0;  ///< polar angle, 0 is sigma_z
    double phi = 0.0;    ///< azimuth, (pi/2, 0) is sigma_x

    static MeasurementDirection sigma_z() { return {0.0, 0.0}; }
    static MeasurementDirection sigma_x();

    std::array<double, 3> unit_vector() const;
};

enum class Branch { Z, X, Ambiguous };

std::string to_string(Branch branch);

struct CorrelationRecord {
    double t = 0.0;
    double mutual_info = 0.0;
    double classical = 0.0;
    double discord = 0.0;
    Branch branch = Branch::Ambiguous;
};

/// von Neumann entropy -sum l log2 l of a spectrum. Throws std::domain_error
/// for eigenvalues below -kEigenvalueFloor or a sum away from one by > 1e-10.
double entropy(std::span<const double> eigenvalues);

/// Binary entropy H2(x).
double binary_entropy(double x);

/// Closed-form spectrum of the two 2x2 blocks, ordered
/// {outer+, outer-, inner+, inner-}.
std::array<double, 4> xstate_eigenvalues(const TwoQubitXState& rho);

/// Both reduced states of an X state are diagonal.
struct Marginals {
    std::array<double, 2> a;  ///< diag(d11 + d22, d33 + d44)
    std::array<double, 2> b;  ///< diag(d11 + d33, d22 + d44)
};

Marginals marginals(const TwoQubitXState& rho);

double mutual_information(const TwoQubitXState& rho);

struct MeasurementOutcome {
    double probability = 0.0;
    bool defined = false;  ///< false when probability < kMinOutcomeProbability
    Eigen::Matrix2cd conditional = Eigen::Matrix2cd::Zero();
};

/// Measures subsystem b along `dir` with projectors (I +- n.sigma)/2 and
/// returns the (+, -) outcomes with the normalized conditional states of a.
std::array<MeasurementOutcome, 2> measure_and_condition(const TwoQubitXState& rho,
                                                         const MeasurementDirection& dir);

/// S(rho_a) - sum_k p_k S(rho_a|k) for one measurement direction.
double classical_correlation_along(const TwoQubitXState& rho, const MeasurementDirection& dir);

struct ClassicalCorrelation {
    double value = 0.0;
    Branch branch = Branch::Ambiguous;
    double c_z = 0.0;
    double c_x = 0.0;
};

/// max(C^Z, C^X) with the winning branch.
ClassicalCorrelation classical_correlation_analytic(const TwoQubitXState& rho);

/// Sufficient optimality conditions for sigma_z and sigma_x measurements on
/// X states, evaluated on the (unnormalized-equivalent) matrix elements.
struct BranchConditions {
    bool z_optimal = false;
    bool x_optimal = false;
};

BranchConditions xstate_branch_conditions(const TwoQubitXState& rho);

struct BruteForceResult {
    double value = 0.0;
    MeasurementDirection direction;
    int refinement_iterations = 0;
    double final_step = 0.0;
};

/// Measurement-sweep oracle: coarse (theta, phi) scan over a hemisphere, then
/// pattern-search refinement. Conditional states are formed from the dense
/// 4x4 matrix, independent of the X-state shortcuts above.
BruteForceResult classical_correlation_bruteforce(const TwoQubitXState& rho, int coarse_grid = 64,
                                                  int refinement_iters = 20);

double discord(const TwoQubitXState& rho);

/// I, C and D at one instant with I = C + D holding to rounding.
CorrelationRecord correlation_record(const TwoQubitXState& rho, double t);

}  // namespace cortrans
