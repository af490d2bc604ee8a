#include "cortrans/validate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include <Eigen/Dense>

#include "cortrans/quantinfo.hpp"
#include "cortrans/transitions.hpp"

namespace cortrans {

namespace {

constexpr double kStructuralTolerance = 1e-12;
constexpr double kOracleTolerance = 1e-6;

struct CaseContext {
    int index;
    SystemParams params;
    double gamma_t;
    int oracle_grid;
    std::vector<ValidationFailure>* failures;

    void fail(const std::string& check, const std::string& partition, double deviation,
              double tolerance, std::string detail = {}) const {
        ValidationFailure f;
        f.case_index = index;
        f.check = check;
        f.partition = partition;
        f.nbar = params.nbar();
        f.p = params.p();
        f.gamma = params.gamma();
        f.gamma_t = gamma_t;
        f.deviation = deviation;
        f.tolerance = tolerance;
        f.detail = std::move(detail);
        failures->push_back(std::move(f));
    }

    void expect_le(const std::string& check, const std::string& partition, double deviation,
                   double tolerance) const {
        if (!(deviation <= tolerance)) fail(check, partition, deviation, tolerance);
    }
};

void check_state(const CaseContext& ctx, const std::string& part, const TwoQubitXState& rho) {
    ctx.expect_le("trace", part, std::abs(rho.trace() - 1.0), kStructuralTolerance);
    ctx.expect_le("positivity", part, rho.o14() * rho.o14() - rho.d11() * rho.d44(),
                  TwoQubitXState::kPositivityTolerance);
    ctx.expect_le("positivity", part, rho.o23() * rho.o23() - rho.d22() * rho.d33(),
                  TwoQubitXState::kPositivityTolerance);
    ctx.expect_le("symmetry_d22_d33", part, std::abs(rho.d22() - rho.d33()), kStructuralTolerance);

    const double q = ctx.params.coherence();
    for (double o : {rho.o14(), rho.o23()})
        if (o * q < 0.0) ctx.fail("coherence_sign", part, std::abs(o), 0.0);

    // Closed-form spectrum against a dense solver.
    Eigen::Matrix4d dense;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) dense(i, j) = rho.element(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(dense, Eigen::EigenvaluesOnly);
    auto closed = xstate_eigenvalues(rho);
    std::sort(closed.begin(), closed.end());
    double eig_dev = 0.0;
    for (int k = 0; k < 4; ++k)
        eig_dev = std::max(eig_dev, std::abs(closed[static_cast<std::size_t>(k)] - solver.eigenvalues()(k)));
    ctx.expect_le("eigenvalues", part, eig_dev, kStructuralTolerance);

    const CorrelationRecord rec = correlation_record(rho, 0.0);
    ctx.expect_le("identity_I_eq_C_plus_D", part,
                  std::abs(rec.mutual_info - rec.classical - rec.discord), kStructuralTolerance);
    ctx.expect_le("bounds", part, -rec.discord, kInformationFloor);
    ctx.expect_le("bounds", part, rec.discord - rec.mutual_info, kInformationFloor);
    ctx.expect_le("bounds", part, -rec.classical, kInformationFloor);

    const ClassicalCorrelation analytic = classical_correlation_analytic(rho);
    const BruteForceResult oracle = classical_correlation_bruteforce(rho, ctx.oracle_grid);
    const double gap = oracle.value - analytic.value;
    if (std::abs(gap) > kOracleTolerance)
        ctx.fail("oracle_equivalence", part, gap, kOracleTolerance,
                 gap > 0.0 ? "counterexample: sweep exceeds the sigma_x/sigma_z optimum"
                           : "analytic value exceeds the sweep maximum");
}

void run_case(const CaseContext& ctx, const ValidateOptions& options) {
    const double t = ctx.gamma_t / ctx.params.gamma();
    auto produce = [&](const TwoQubitXState& s) {
        return options.perturb ? options.perturb(s) : s;
    };

    const TwoQubitXState cav = produce(cavity_state(ctx.params, t));
    const TwoQubitXState res = produce(reservoir_state(ctx.params, t));
    check_state(ctx, "cavities", cav);
    check_state(ctx, "reservoirs", res);

    if (t > 0.0) {
        const TwoQubitXState mirrored = produce(cavity_state(ctx.params, mirror_time(ctx.params, t)));
        ctx.expect_le("mirror_time", "reservoirs", res.max_abs_difference(mirrored),
                      kStructuralTolerance);
    }

    if (ctx.params.coherence_weight() > 0.0) {
        const auto tc = sudden_transition_time_cavities(ctx.params);
        const auto tr = sudden_transition_time_reservoirs(ctx.params);
        if (tc && tr) {
            const double g = ctx.params.gamma();
            ctx.expect_le("complementarity", "",
                          std::abs(std::exp(-g * *tc) + std::exp(-g * *tr) - 1.0),
                          kStructuralTolerance);
        }
        if (tc.has_value() != tr.has_value() && !(ctx.params.coherence_weight() == 1.0))
            ctx.fail("transition_existence", "", 1.0, 0.0,
                     "t_c and t_r disagree on whether a transition exists");
    }
}

}  // namespace

ValidationSummary run_validate(const ValidateOptions& options) {
    if (options.cases < 1) throw std::invalid_argument("cases must be at least 1");

    ValidationSummary summary;
    summary.seed = options.seed;
    summary.cases = options.cases;

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> nbar_dist(0.1, 200.0);
    std::uniform_real_distribution<double> p_dist(0.0, 1.0);
    std::uniform_real_distribution<double> gamma_dist(0.1, 10.0);
    std::uniform_real_distribution<double> gt_dist(0.0, 15.0);

    for (int i = 0; i < options.cases; ++i) {
        const double nbar = nbar_dist(rng);
        const double p = p_dist(rng);
        const double gamma = gamma_dist(rng);
        const double gamma_t = gt_dist(rng);

        const std::size_t before = summary.failures.size();
        const CaseContext ctx{i, SystemParams(nbar, p, gamma), gamma_t,
                              options.oracle_grid, &summary.failures};
        try {
            run_case(ctx, options);
        } catch (const ValidationError& e) {
            ctx.fail("positivity", "", 0.0, TwoQubitXState::kPositivityTolerance, e.what());
        } catch (const std::exception& e) {
            ctx.fail("exception", "", 0.0, 0.0, e.what());
        }
        if (summary.failures.size() == before) ++summary.passed;
    }
    return summary;
}

nlohmann::ordered_json summary_to_json(const ValidationSummary& summary) {
    nlohmann::ordered_json j;
    j["seed"] = summary.seed;
    j["cases"] = summary.cases;
    j["passed"] = summary.passed;
    j["failed"] = summary.cases - summary.passed;
    auto arr = nlohmann::ordered_json::array();
    for (const ValidationFailure& f : summary.failures) {
        nlohmann::ordered_json r;
        r["case"] = f.case_index;
        r["check"] = f.check;
        r["partition"] = f.partition;
        r["nbar"] = f.nbar;
        r["p"] = f.p;
        r["gamma"] = f.gamma;
        r["gamma_t"] = f.gamma_t;
        r["deviation"] = f.deviation;
        r["tolerance"] = f.tolerance;
        if (!f.detail.empty()) r["detail"] = f.detail;
        arr.push_back(std::move(r));
    }
    j["failures"] = std::move(arr);
    j["status"] = summary.ok() ? "pass" : "fail";
    return j;
}

}  // namespace cortrans
