#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cortrans/statedyn.hpp"

namespace cortrans {

struct ValidateOptions {
    std::uint64_t seed = 42;
    int cases = 100;
    /// Coarse grid of the measurement-sweep oracle.
    int oracle_grid = 32;
    /// Applied to every generated state before the checks run. Used to
    /// inject faults when testing the validator itself.
    std::function<TwoQubitXState(const TwoQubitXState&)> perturb;
};

struct ValidationFailure {
    int case_index = 0;
    std::string check;
    std::string partition;
    double nbar = 0.0;
    double p = 0.0;
    double gamma = 0.0;
    double gamma_t = 0.0;
    double deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationSummary {
    std::uint64_t seed = 0;
    int cases = 0;
    int passed = 0;
    std::vector<ValidationFailure> failures;

    bool ok() const { return passed == cases && failures.empty(); }
};

/// Draws nbar in [0.1, 200], p in [0, 1], gamma in [0.1, 10] and gamma t in
/// [0, 15] from a seeded mt19937_64 and checks trace, positivity, symmetry,
/// I = C + D, bounds, eigenvalues against a dense solver, the mirror-time
/// identity, oracle equivalence and complementarity for each draw.
ValidationSummary run_validate(const ValidateOptions& options);

nlohmann::ordered_json summary_to_json(const ValidationSummary& summary);

}  // namespace cortrans
