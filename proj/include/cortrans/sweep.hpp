#pragma once

// Time sweeps over both partitions, figure presets, and their CSV / JSON
// serialization.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cortrans/quantinfo.hpp"
#include "cortrans/statedyn.hpp"
#include "cortrans/transitions.hpp"

namespace cortrans {

enum class GridKind { Linear, LogStart };
enum class OutputFormat { Csv, Json };

struct PartitionSet {
    bool cavities = true;
    bool reservoirs = true;
};

/// Parses "cc", "rr", "cc,rr"; throws std::invalid_argument otherwise.
PartitionSet parse_partitions(const std::string& text);
GridKind parse_grid_kind(const std::string& text);
OutputFormat parse_output_format(const std::string& text);

struct SweepConfig {
    SystemParams params{100.0, 0.2, 1.0};
    double t_min_gamma = 0.0;  ///< start of a linear grid
    double t_max_gamma = 15.0;
    int n_points = 1501;
    GridKind grid = GridKind::Linear;
    PartitionSet partitions;
    OutputFormat format = OutputFormat::Csv;
    /// Extra gamma t values appended after the grid (used by presets for the
    /// asymptotic row).
    std::vector<double> extra_gamma_t;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

struct SweepRow {
    double gamma_t = 0.0;
    std::optional<CorrelationRecord> cavities;
    std::optional<CorrelationRecord> reservoirs;
};

/// Grid points in units of gamma t. The log grid starts at gamma t = 1e-6 with
/// an explicit t = 0 in front, so it has n_points + 1 entries.
std::vector<double> sweep_grid(const SweepConfig& config);

/// One row per grid point, in grid order. Rows are computed on up to
/// `threads` workers (0 picks the hardware concurrency); output does not
/// depend on the worker count.
std::vector<SweepRow> run_sweep(const SweepConfig& config, unsigned threads = 0);

inline constexpr const char* kCsvHeader =
    "gamma_t,I_cc,C_cc,D_cc,branch_cc,I_rr,C_rr,D_rr,branch_rr";

/// Formats with 12 significant digits.
std::string format_number(double x);
/// Rounds to 12 significant digits (the value format_number prints).
double round_sig12(double x);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
nlohmann::ordered_json rows_to_json(const std::vector<SweepRow>& rows);
void write_rows(std::ostream& os, const std::vector<SweepRow>& rows, OutputFormat format);

nlohmann::ordered_json report_to_json(const TransitionReport& report);

/// Raw density-matrix elements of both partitions at one grid point.
struct ElementRow {
    double gamma_t = 0.0;
    std::optional<TwoQubitXState> cavities;
    std::optional<TwoQubitXState> reservoirs;
};

inline constexpr const char* kElementsCsvHeader =
    "gamma_t,r11_cc,r22_cc,r33_cc,r44_cc,r14_cc,r23_cc,"
    "r11_rr,r22_rr,r33_rr,r44_rr,r14_rr,r23_rr";

std::vector<ElementRow> run_element_sweep(const SweepConfig& config);
void write_elements(std::ostream& os, const std::vector<ElementRow>& rows, OutputFormat format);

enum class TableKind { Correlations, Elements };

struct FigurePreset {
    std::string name;   ///< output file stem, e.g. fig1_nbar100
    TableKind table = TableKind::Correlations;
    SweepConfig config;
};

/// Presets for the fig1..fig4 data sets (p = 0.2). Throws
/// std::invalid_argument for an unknown figure name.
std::vector<FigurePreset> figure_presets(const std::string& figure);

/// Writes each preset to `<dir>/<name>.<csv|json>` and returns the paths.
std::vector<std::filesystem::path> write_figure(const std::string& figure,
                                                const std::filesystem::path& dir,
                                                OutputFormat format);

}  // namespace cortrans
