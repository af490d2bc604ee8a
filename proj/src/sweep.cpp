#include "cortrans/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cortrans {

PartitionSet parse_partitions(const std::string& text) {
    PartitionSet set{false, false};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "cc")
            set.cavities = true;
        else if (item == "rr")
            set.reservoirs = true;
        else
            throw std::invalid_argument("unknown partition '" + item + "' (expected cc or rr)");
    }
    if (!set.cavities && !set.reservoirs)
        throw std::invalid_argument("at least one partition must be requested");
    return set;
}

GridKind parse_grid_kind(const std::string& text) {
    if (text == "linear") return GridKind::Linear;
    if (text == "logstart") return GridKind::LogStart;
    throw std::invalid_argument("unknown grid kind '" + text + "' (expected linear or logstart)");
}

OutputFormat parse_output_format(const std::string& text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw std::invalid_argument("unknown format '" + text + "' (expected csv or json)");
}

void SweepConfig::validate() const {
    if (n_points < 2) throw std::invalid_argument("points must be at least 2");
    if (!(t_max_gamma > 0.0) || !std::isfinite(t_max_gamma))
        throw std::invalid_argument("tmax must be a finite positive number");
    if (!(t_min_gamma >= 0.0) || !(t_min_gamma < t_max_gamma))
        throw std::invalid_argument("grid start must lie in [0, tmax)");
    if (grid == GridKind::LogStart && !(t_max_gamma > 1e-6))
        throw std::invalid_argument("logstart grid needs tmax > 1e-6");
    if (!partitions.cavities && !partitions.reservoirs)
        throw std::invalid_argument("at least one partition must be requested");
    for (double gt : extra_gamma_t)
        if (!(gt >= 0.0) || !std::isfinite(gt))
            throw std::invalid_argument("extra grid points must be finite and non-negative");
}

std::vector<double> sweep_grid(const SweepConfig& config) {
    config.validate();
    std::vector<double> grid;
    if (config.grid == GridKind::LogStart) {
        grid = log_start_grid(config.t_max_gamma, config.n_points, 1.0);
    } else {
        const double span = config.t_max_gamma - config.t_min_gamma;
        grid.reserve(static_cast<std::size_t>(config.n_points));
        for (int k = 0; k < config.n_points; ++k)
            grid.push_back(k + 1 == config.n_points
                               ? config.t_max_gamma
                               : config.t_min_gamma + span * k / (config.n_points - 1));
    }
    grid.insert(grid.end(), config.extra_gamma_t.begin(), config.extra_gamma_t.end());
    return grid;
}

namespace {

// Evaluates make(k) for every index on a few workers; results land in index
// order regardless of scheduling.
template <typename Row, typename Make>
std::vector<Row> parallel_rows(std::size_t count, unsigned threads, Make make) {
    std::vector<Row> rows(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < threads; ++w) {
        workers.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t k = w; k < count; k += threads) rows[k] = make(k);
        }));
    }
    for (auto& f : workers) f.get();
    return rows;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config, unsigned threads) {
    const std::vector<double> grid = sweep_grid(config);
    const SystemParams params = config.params;
    return parallel_rows<SweepRow>(grid.size(), threads, [&](std::size_t k) {
        SweepRow row;
        row.gamma_t = grid[k];
        const double t = grid[k] / params.gamma();
        if (config.partitions.cavities)
            row.cavities = correlation_record(cavity_state(params, t), t);
        if (config.partitions.reservoirs)
            row.reservoirs = correlation_record(reservoir_state(params, t), t);
        return row;
    });
}

std::vector<ElementRow> run_element_sweep(const SweepConfig& config) {
    const std::vector<double> grid = sweep_grid(config);
    std::vector<ElementRow> rows;
    rows.reserve(grid.size());
    for (double gt : grid) {
        const double t = gt / config.params.gamma();
        ElementRow row{gt, std::nullopt, std::nullopt};
        if (config.partitions.cavities) row.cavities = cavity_state(config.params, t);
        if (config.partitions.reservoirs) row.reservoirs = reservoir_state(config.params, t);
        rows.push_back(row);
    }
    return rows;
}

std::string format_number(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

double round_sig12(double x) { return std::stod(format_number(x)); }

namespace {

void csv_record(std::ostream& os, const std::optional<CorrelationRecord>& rec) {
    if (!rec) {
        os << ",,,,";
        return;
    }
    os << ',' << format_number(rec->mutual_info) << ',' << format_number(rec->classical) << ','
       << format_number(rec->discord) << ',' << to_string(rec->branch);
}

void json_record(nlohmann::ordered_json& obj, const std::optional<CorrelationRecord>& rec,
                 const std::string& suffix) {
    if (!rec) {
        for (const char* key : {"I_", "C_", "D_", "branch_"}) obj[key + suffix] = nullptr;
        return;
    }
    obj["I_" + suffix] = round_sig12(rec->mutual_info);
    obj["C_" + suffix] = round_sig12(rec->classical);
    obj["D_" + suffix] = round_sig12(rec->discord);
    obj["branch_" + suffix] = to_string(rec->branch);
}

std::array<double, 6> element_values(const TwoQubitXState& s) {
    return {s.d11(), s.d22(), s.d33(), s.d44(), s.o14(), s.o23()};
}

constexpr std::array<const char*, 6> kElementNames{"r11", "r22", "r33", "r44", "r14", "r23"};

}  // namespace

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kCsvHeader << '\n';
    for (const SweepRow& row : rows) {
        os << format_number(row.gamma_t);
        csv_record(os, row.cavities);
        csv_record(os, row.reservoirs);
        os << '\n';
    }
}

nlohmann::ordered_json rows_to_json(const std::vector<SweepRow>& rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const SweepRow& row : rows) {
        nlohmann::ordered_json obj;
        obj["gamma_t"] = round_sig12(row.gamma_t);
        json_record(obj, row.cavities, "cc");
        json_record(obj, row.reservoirs, "rr");
        arr.push_back(std::move(obj));
    }
    return arr;
}

void write_rows(std::ostream& os, const std::vector<SweepRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Csv)
        write_csv(os, rows);
    else
        os << rows_to_json(rows).dump(2) << '\n';
}

void write_elements(std::ostream& os, const std::vector<ElementRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        os << kElementsCsvHeader << '\n';
        for (const ElementRow& row : rows) {
            os << format_number(row.gamma_t);
            for (const auto& part : {row.cavities, row.reservoirs}) {
                if (!part) {
                    os << ",,,,,,";
                    continue;
                }
                for (double v : element_values(*part)) os << ',' << format_number(v);
            }
            os << '\n';
        }
        return;
    }
    auto arr = nlohmann::ordered_json::array();
    for (const ElementRow& row : rows) {
        nlohmann::ordered_json obj;
        obj["gamma_t"] = round_sig12(row.gamma_t);
        const std::array<std::pair<const std::optional<TwoQubitXState>*, const char*>, 2> parts{
            {{&row.cavities, "_cc"}, {&row.reservoirs, "_rr"}}};
        for (const auto& [part, suffix] : parts) {
            for (std::size_t k = 0; k < kElementNames.size(); ++k) {
                const std::string key = std::string(kElementNames[k]) + suffix;
                if (*part)
                    obj[key] = round_sig12(element_values(**part)[k]);
                else
                    obj[key] = nullptr;
            }
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(round_sig12(*v)) : nlohmann::ordered_json(nullptr);
}

}  // namespace

nlohmann::ordered_json report_to_json(const TransitionReport& report) {
    nlohmann::ordered_json j;
    j["t_c_analytic"] = optional_number(report.t_c_analytic);
    j["t_r_analytic"] = optional_number(report.t_r_analytic);
    j["dfs_duration_analytic"] = optional_number(report.dfs_duration_analytic);
    j["t_c_detected"] = optional_number(report.t_c_detected);
    j["t_r_detected"] = optional_number(report.t_r_detected);
    if (report.dfs_window_detected)
        j["dfs_window_detected"] = {round_sig12(report.dfs_window_detected->first),
                                    round_sig12(report.dfs_window_detected->second)};
    else
        j["dfs_window_detected"] = nullptr;
    // Unrounded: the value is a roundoff-level residual.
    j["complementarity_residual"] = report.complementarity_residual
                                        ? nlohmann::ordered_json(*report.complementarity_residual)
                                        : nlohmann::ordered_json(nullptr);
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

namespace {

constexpr double kFigureP = 0.2;
// gamma t = 50 stands in for t -> infinity; every decaying exponential is
// below 1e-21 there.
constexpr double kAsymptoticGammaT = 50.0;

SweepConfig figure_config(double nbar) {
    SweepConfig c;
    c.params = SystemParams(nbar, kFigureP, 1.0);
    c.t_max_gamma = 15.0;
    c.n_points = 1501;
    c.grid = GridKind::Linear;
    return c;
}

std::string nbar_stem(const std::string& fig, double nbar) {
    return fig + "_nbar" + format_number(nbar);
}

}  // namespace

std::vector<FigurePreset> figure_presets(const std::string& figure) {
    std::vector<FigurePreset> out;
    if (figure == "fig1" || figure == "fig3") {
        const std::vector<double> nbars =
            figure == "fig1" ? std::vector<double>{1, 3, 10, 100} : std::vector<double>{1, 100};
        for (double nbar : nbars) {
            SweepConfig c = figure_config(nbar);
            c.extra_gamma_t = {kAsymptoticGammaT};
            out.push_back({nbar_stem(figure, nbar), TableKind::Correlations, c});
        }
    } else if (figure == "fig2") {
        SweepConfig early = figure_config(100.0);
        early.t_max_gamma = 0.1;
        early.n_points = 1001;
        SweepConfig late = figure_config(100.0);
        late.t_min_gamma = 2.0;
        late.t_max_gamma = 15.0;
        late.n_points = 1301;
        out.push_back({"fig2_early", TableKind::Elements, early});
        out.push_back({"fig2_late", TableKind::Elements, late});
    } else if (figure == "fig4") {
        SweepConfig c = figure_config(100.0);
        c.grid = GridKind::LogStart;
        c.n_points = 1500;
        out.push_back({"fig4_nbar100", TableKind::Correlations, c});
    } else {
        throw std::invalid_argument("unknown figure '" + figure + "' (expected fig1..fig4)");
    }
    return out;
}

std::vector<std::filesystem::path> write_figure(const std::string& figure,
                                                const std::filesystem::path& dir,
                                                OutputFormat format) {
    const auto presets = figure_presets(figure);
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> paths;
    for (const FigurePreset& preset : presets) {
        const auto path = dir / (preset.name + (format == OutputFormat::Csv ? ".csv" : ".json"));
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
        if (preset.table == TableKind::Elements)
            write_elements(os, run_element_sweep(preset.config), format);
        else
            write_rows(os, run_sweep(preset.config), format);
        paths.push_back(path);
    }
    return paths;
}

}  // namespace cortrans
