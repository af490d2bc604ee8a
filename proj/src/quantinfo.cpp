#include "cortrans/quantinfo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace cortrans {

using cd = std::complex<double>;

MeasurementDirection MeasurementDirection::sigma_x() { return {std::numbers::pi / 2.0, 0.0}; }

std::array<double, 3> MeasurementDirection::unit_vector() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::string to_string(Branch branch) {
    switch (branch) {
        case Branch::Z: return "Z";
        case Branch::X: return "X";
        case Branch::Ambiguous: return "ambiguous";
    }
    return "ambiguous";
}

double entropy(std::span<const double> eigenvalues) {
    double sum = 0.0;
    double s = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda < -kEigenvalueFloor)
            throw std::domain_error("entropy: negative eigenvalue beyond roundoff");
        sum += lambda;
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::domain_error("entropy: eigenvalues do not sum to one");
    return s;
}

double binary_entropy(double x) {
    const std::array<double, 2> spectrum{x, 1.0 - x};
    return entropy(spectrum);
}

namespace {

std::array<double, 2> block_eigenvalues(double a, double d, double off) {
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), off);
    return {mean + radius, mean - radius};
}

// Spectrum of a 2x2 Hermitian matrix.
std::array<double, 2> hermitian2_eigenvalues(const Eigen::Matrix2cd& m) {
    return block_eigenvalues(m(0, 0).real(), m(1, 1).real(), std::abs(m(0, 1)));
}

double clamp_information(double value) {
    if (value < -kInformationFloor)
        throw std::logic_error("information quantity is negative beyond roundoff");
    return std::max(0.0, value);
}

}  // namespace

std::array<double, 4> xstate_eigenvalues(const TwoQubitXState& rho) {
    const auto outer = block_eigenvalues(rho.d11(), rho.d44(), rho.o14());
    const auto inner = block_eigenvalues(rho.d22(), rho.d33(), rho.o23());
    return {outer[0], outer[1], inner[0], inner[1]};
}

Marginals marginals(const TwoQubitXState& rho) {
    return {{rho.d11() + rho.d22(), rho.d33() + rho.d44()},
            {rho.d11() + rho.d33(), rho.d22() + rho.d44()}};
}

double mutual_information(const TwoQubitXState& rho) {
    const Marginals m = marginals(rho);
    const auto joint = xstate_eigenvalues(rho);
    return clamp_information(entropy(m.a) + entropy(m.b) - entropy(joint));
}

std::array<MeasurementOutcome, 2> measure_and_condition(const TwoQubitXState& rho,
                                                         const MeasurementDirection& dir) {
    const auto [nx, ny, nz] = dir.unit_vector();

    // T = Tr_b[rho (I (x) n.sigma)], an operator on subsystem a.
    Eigen::Matrix2cd t;
    t(0, 0) = (rho.d11() - rho.d22()) * nz;
    t(1, 1) = (rho.d33() - rho.d44()) * nz;
    t(0, 1) = cd((rho.o14() + rho.o23()) * nx, (rho.o14() - rho.o23()) * ny);
    t(1, 0) = std::conj(t(0, 1));

    const Marginals m = marginals(rho);
    Eigen::Matrix2cd rho_a = Eigen::Matrix2cd::Zero();
    rho_a(0, 0) = m.a[0];
    rho_a(1, 1) = m.a[1];

    std::array<MeasurementOutcome, 2> outcomes;
    for (int k = 0; k < 2; ++k) {
        const double sign = k == 0 ? 1.0 : -1.0;
        const Eigen::Matrix2cd unnormalized = 0.5 * (rho_a + sign * t);
        const double prob = unnormalized.trace().real();
        MeasurementOutcome& out = outcomes[static_cast<std::size_t>(k)];
        if (prob < kMinOutcomeProbability) {
            out.probability = 0.0;
            out.defined = false;
            continue;
        }
        out.probability = prob;
        out.defined = true;
        out.conditional = unnormalized / prob;
    }
    return outcomes;
}

double classical_correlation_along(const TwoQubitXState& rho, const MeasurementDirection& dir) {
    const Marginals m = marginals(rho);
    double conditional_entropy = 0.0;
    for (const MeasurementOutcome& out : measure_and_condition(rho, dir)) {
        if (!out.defined) continue;
        conditional_entropy += out.probability * entropy(hermitian2_eigenvalues(out.conditional));
    }
    return entropy(m.a) - conditional_entropy;
}

ClassicalCorrelation classical_correlation_analytic(const TwoQubitXState& rho) {
    ClassicalCorrelation result;
    result.c_z = clamp_information(classical_correlation_along(rho, MeasurementDirection::sigma_z()));
    // Equatorial branch: sigma_x when the coherences share a sign (always the
    // case for this model), sigma_y otherwise; either way the off-diagonal of
    // the conditional states has magnitude |o14| + |o23|.
    MeasurementDirection equator = MeasurementDirection::sigma_x();
    if (rho.o14() * rho.o23() < 0.0) equator.phi = std::numbers::pi / 2.0;
    result.c_x = clamp_information(classical_correlation_along(rho, equator));
    result.value = std::max(result.c_z, result.c_x);
    if (std::abs(result.c_x - result.c_z) <= kBranchTieTolerance)
        result.branch = Branch::Ambiguous;
    else
        result.branch = result.c_z > result.c_x ? Branch::Z : Branch::X;
    return result;
}

BranchConditions xstate_branch_conditions(const TwoQubitXState& rho) {
    const double coh = std::abs(rho.o23()) + std::abs(rho.o14());
    BranchConditions c;
    c.z_optimal = coh * coh <= (rho.d11() - rho.d22()) * (rho.d44() - rho.d33());
    c.x_optimal = std::abs(std::sqrt(rho.d11() * rho.d44()) - std::sqrt(rho.d22() * rho.d33())) <= coh;
    return c;
}

namespace {

// Dense evaluation of S(rho_a) - sum_k p_k S(rho_a|k): explicit projectors
// I (x) Pi_k on the full 4x4 matrix and an explicit partial trace over b.
class DenseConditionalEntropy {
public:
    explicit DenseConditionalEntropy(const TwoQubitXState& rho) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) rho_(i, j) = rho.element(i, j);
        s_a_ = spectrum_entropy(trace_out_b(rho_));
    }

    double operator()(double theta, double phi) const {
        const double nx = std::sin(theta) * std::cos(phi);
        const double ny = std::sin(theta) * std::sin(phi);
        const double nz = std::cos(theta);
        Eigen::Matrix2cd n_sigma;
        n_sigma << cd(nz, 0.0), cd(nx, -ny), cd(nx, ny), cd(-nz, 0.0);

        double conditional = 0.0;
        for (double sign : {1.0, -1.0}) {
            const Eigen::Matrix2cd pi = 0.5 * (Eigen::Matrix2cd::Identity() + sign * n_sigma);
            Eigen::Matrix4cd projector = Eigen::Matrix4cd::Zero();
            projector.block<2, 2>(0, 0) = pi;
            projector.block<2, 2>(2, 2) = pi;
            const Eigen::Matrix4cd projected = projector * rho_ * projector;
            const double prob = projected.trace().real();
            if (prob < kMinOutcomeProbability) continue;
            conditional += prob * spectrum_entropy(trace_out_b(projected) / prob);
        }
        return s_a_ - conditional;
    }

private:
    static Eigen::Matrix2cd trace_out_b(const Eigen::Matrix4cd& m) {
        Eigen::Matrix2cd out;
        for (int a = 0; a < 2; ++a)
            for (int ap = 0; ap < 2; ++ap) out(a, ap) = m(2 * a, 2 * ap) + m(2 * a + 1, 2 * ap + 1);
        return out;
    }

    static double spectrum_entropy(const Eigen::Matrix2cd& m) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m, Eigen::EigenvaluesOnly);
        const Eigen::Vector2d ev = solver.eigenvalues();
        double s = 0.0;
        for (int k = 0; k < 2; ++k)
            if (ev(k) > 0.0) s -= ev(k) * std::log2(ev(k));
        return s;
    }

    Eigen::Matrix4cd rho_;
    double s_a_ = 0.0;
};

}  // namespace

BruteForceResult classical_correlation_bruteforce(const TwoQubitXState& rho, int coarse_grid,
                                                  int refinement_iters) {
    if (coarse_grid < 32) throw std::invalid_argument("coarse_grid must be at least 32");
    constexpr double pi = std::numbers::pi;
    const DenseConditionalEntropy objective(rho);

    // Hemisphere theta in [0, pi/2], phi in [0, 2pi); antipodes give the
    // same projector pair.
    const double h_theta = 0.5 * pi / coarse_grid;
    const double h_phi = pi / coarse_grid;
    double best = objective(0.0, 0.0);
    double best_theta = 0.0;
    double best_phi = 0.0;
    for (int i = 1; i <= coarse_grid; ++i) {
        for (int j = 0; j < 2 * coarse_grid; ++j) {
            const double th = i * h_theta;
            const double ph = j * h_phi;
            const double v = objective(th, ph);
            if (v > best) {
                best = v;
                best_theta = th;
                best_phi = ph;
            }
        }
    }

    // Pattern search on the 8-neighbourhood, halving the step whenever no
    // neighbour improves.
    constexpr double kFinalStep = 1e-7;
    constexpr int kMaxIterations = 2000;
    double step = h_theta;
    int iter = 0;
    while (iter < kMaxIterations && (iter < refinement_iters || step >= kFinalStep)) {
        ++iter;
        double cand = best;
        double cand_theta = best_theta;
        double cand_phi = best_phi;
        for (int di = -1; di <= 1; ++di) {
            for (int dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0) continue;
                const double th = best_theta + di * step;
                const double ph = best_phi + dj * step;
                const double v = objective(th, ph);
                if (v > cand) {
                    cand = v;
                    cand_theta = th;
                    cand_phi = ph;
                }
            }
        }
        if (cand > best) {
            best = cand;
            best_theta = cand_theta;
            best_phi = cand_phi;
        } else {
            step *= 0.5;
        }
    }

    // Report the representative of the axis on the upper hemisphere.
    MeasurementDirection dir{best_theta, best_phi};
    auto n = dir.unit_vector();
    if (n[2] < 0.0)
        for (double& c : n) c = -c;
    dir.theta = std::acos(std::clamp(n[2], -1.0, 1.0));
    dir.phi = std::atan2(n[1], n[0]);
    if (dir.phi < 0.0) dir.phi += 2.0 * pi;
    if (dir.phi >= 2.0 * pi) dir.phi = 0.0;

    return {std::max(0.0, best), dir, iter, step};
}

CorrelationRecord correlation_record(const TwoQubitXState& rho, double t) {
    CorrelationRecord rec;
    rec.t = t;
    rec.mutual_info = mutual_information(rho);
    const ClassicalCorrelation cc = classical_correlation_analytic(rho);
    rec.branch = cc.branch;
    if (cc.value > rec.mutual_info + kInformationFloor)
        throw std::logic_error("classical correlation exceeds mutual information");
    rec.classical = std::min(cc.value, rec.mutual_info);
    rec.discord = rec.mutual_info - rec.classical;
    return rec;
}

double discord(const TwoQubitXState& rho) { return correlation_record(rho, 0.0).discord; }

}  // namespace cortrans
