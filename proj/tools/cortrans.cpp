// cortrans: correlation dynamics of damped entangled coherent states.
//
//   cortrans sweep --nbar 100 --p 0.2 --tmax 15 --points 1501 --format csv
//   cortrans figure fig1 --out data/
//   cortrans transitions --nbar 100 --p 0.2
//   cortrans validate --seed 42 --cases 1000

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cortrans/sweep.hpp"
#include "cortrans/transitions.hpp"
#include "cortrans/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    double nbar = 100.0;
    double p = 0.2;
    double gamma = 1.0;
    double tmax = 15.0;
    int points = 1501;
    std::string grid = "linear";
    std::string partitions = "cc,rr";
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 42;
    int cases = 100;
    std::string config;
    std::string figure;
};

// Fills every option that was not given on the command line from the JSON
// config file, when one is named.
void apply_config(const CLI::App& cmd, Options& o) {
    if (o.config.empty()) return;
    std::ifstream in(o.config);
    if (!in) throw UsageError("cannot read config file " + o.config);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("invalid config file: " + std::string(e.what()));
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");

    auto take = [&](const char* key, auto& field) {
        const std::string flag = std::string("--") + key;
        if (!j.contains(key)) return;
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        if (opt && opt->count() > 0) return;
        try {
            j.at(key).get_to(field);
        } catch (const nlohmann::json::exception&) {
            throw UsageError(std::string("config key '") + key + "' has the wrong type");
        }
    };
    take("nbar", o.nbar);
    take("p", o.p);
    take("gamma", o.gamma);
    take("tmax", o.tmax);
    take("points", o.points);
    take("grid", o.grid);
    take("partitions", o.partitions);
    take("format", o.format);
    take("out", o.out);
    take("seed", o.seed);
    take("cases", o.cases);
}

cortrans::SystemParams make_params(const Options& o) {
    try {
        return cortrans::SystemParams(o.nbar, o.p, o.gamma);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// Runs `write` against --out when given, stdout otherwise.
template <typename Write>
void emit(const std::string& out, Write write) {
    if (out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream os(out);
    if (!os) throw UsageError("cannot open " + out + " for writing");
    write(os);
}

int run_sweep_cmd(const Options& o) {
    cortrans::SweepConfig config;
    try {
        config.params = make_params(o);
        config.t_max_gamma = o.tmax;
        config.n_points = o.points;
        config.grid = cortrans::parse_grid_kind(o.grid);
        config.partitions = cortrans::parse_partitions(o.partitions);
        config.format = cortrans::parse_output_format(o.format);
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto rows = cortrans::run_sweep(config);
    emit(o.out, [&](std::ostream& os) { cortrans::write_rows(os, rows, config.format); });
    return kExitOk;
}

int run_figure_cmd(const Options& o) {
    cortrans::OutputFormat format{};
    try {
        format = cortrans::parse_output_format(o.format);
        cortrans::figure_presets(o.figure);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto paths = cortrans::write_figure(o.figure, o.out.empty() ? "." : o.out, format);
    for (const auto& path : paths) std::cout << path.string() << '\n';
    return kExitOk;
}

int run_transitions_cmd(const Options& o) {
    const auto report = cortrans::make_transition_report(make_params(o));
    emit(o.out, [&](std::ostream& os) { os << cortrans::report_to_json(report).dump(2) << '\n'; });
    return kExitOk;
}

int run_validate_cmd(const Options& o) {
    if (o.cases < 1) throw UsageError("--cases must be at least 1");
    cortrans::ValidateOptions options;
    options.seed = o.seed;
    options.cases = o.cases;
    const auto summary = cortrans::run_validate(options);
    emit(o.out, [&](std::ostream& os) { os << cortrans::summary_to_json(summary).dump(2) << '\n'; });
    std::cerr << "validate: " << summary.passed << "/" << summary.cases << " cases passed\n";
    return summary.ok() ? kExitOk : kExitValidationFailure;
}

void add_physics_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--nbar", o.nbar, "Mean photon number |alpha|^2");
    cmd->add_option("--p", o.p, "Mixing probability of the initial state");
    cmd->add_option("--gamma", o.gamma, "Decay rate");
    cmd->add_option("--config", o.config, "JSON config file; flags override its values");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlation transfer from damped entangled coherent states to their reservoirs"};
    app.require_subcommand(1);
    Options o;

    auto* sweep = app.add_subcommand("sweep", "Tabulate I, C, D for both partitions over a time grid");
    add_physics_flags(sweep, o);
    sweep->add_option("--tmax", o.tmax, "End of the grid in units of gamma t");
    sweep->add_option("--points", o.points, "Number of grid points");
    sweep->add_option("--grid", o.grid, "linear or logstart");
    sweep->add_option("--partitions", o.partitions, "cc, rr or cc,rr");
    sweep->add_option("--format", o.format, "csv or json");
    sweep->add_option("--out", o.out, "Output file (default stdout)");

    auto* figure = app.add_subcommand("figure", "Write the data set of one figure preset");
    figure->add_option("name", o.figure, "fig1, fig2, fig3 or fig4")->required();
    figure->add_option("--format", o.format, "csv or json");
    figure->add_option("--out", o.out, "Output directory (default .)");
    figure->add_option("--config", o.config, "JSON config file; flags override its values");

    auto* transitions = app.add_subcommand("transitions", "Report characteristic times as JSON");
    add_physics_flags(transitions, o);
    transitions->add_option("--out", o.out, "Output file (default stdout)");

    auto* validate = app.add_subcommand("validate", "Run invariant checks on random parameters");
    validate->add_option("--seed", o.seed, "Generator seed");
    validate->add_option("--cases", o.cases, "Number of random cases");
    validate->add_option("--out", o.out, "Report file (default stdout)");
    validate->add_option("--config", o.config, "JSON config file; flags override its values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        apply_config(*cmd, o);
        if (cmd == sweep) return run_sweep_cmd(o);
        if (cmd == figure) return run_figure_cmd(o);
        if (cmd == transitions) return run_transitions_cmd(o);
        return run_validate_cmd(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidationFailure;
    }
}
