#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "cortrans/sweep.hpp"

using namespace cortrans;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

SweepConfig small_config() {
    SweepConfig c;
    c.params = SystemParams(10.0, 0.2, 1.0);
    c.t_max_gamma = 5.0;
    c.n_points = 51;
    return c;
}

}  // namespace

TEST_CASE("option parsers") {
    const auto both = parse_partitions("cc,rr");
    CHECK(both.cavities);
    CHECK(both.reservoirs);
    const auto rr = parse_partitions("rr");
    CHECK_FALSE(rr.cavities);
    CHECK(rr.reservoirs);
    CHECK_THROWS_AS(parse_partitions("cc,xx"), std::invalid_argument);
    CHECK_THROWS_AS(parse_partitions(""), std::invalid_argument);

    CHECK(parse_grid_kind("linear") == GridKind::Linear);
    CHECK(parse_grid_kind("logstart") == GridKind::LogStart);
    CHECK_THROWS_AS(parse_grid_kind("log"), std::invalid_argument);
    CHECK(parse_output_format("json") == OutputFormat::Json);
    CHECK_THROWS_AS(parse_output_format("xml"), std::invalid_argument);
}

TEST_CASE("config validation") {
    SweepConfig c;
    CHECK_NOTHROW(c.validate());
    c.n_points = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SweepConfig{};
    c.t_max_gamma = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.t_max_gamma = INFINITY;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SweepConfig{};
    c.partitions = {false, false};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SweepConfig{};
    c.extra_gamma_t = {-1.0};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("linear and log-start grids") {
    SweepConfig c = small_config();
    const auto lin = sweep_grid(c);
    REQUIRE(lin.size() == 51);
    CHECK(lin.front() == 0.0);
    CHECK(lin.back() == 5.0);
    CHECK(lin[10] == doctest::Approx(1.0).epsilon(1e-15));

    c.grid = GridKind::LogStart;
    c.n_points = 100;
    const auto lg = sweep_grid(c);
    REQUIRE(lg.size() == 101);
    CHECK(lg[0] == 0.0);
    CHECK(lg[1] == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(lg.back() == doctest::Approx(5.0).epsilon(1e-12));
    for (std::size_t k = 1; k < lg.size(); ++k) CHECK(lg[k] > lg[k - 1]);
    CHECK(lg[2] / lg[1] == doctest::Approx(lg[3] / lg[2]).epsilon(1e-9));

    c.extra_gamma_t = {50.0};
    CHECK(sweep_grid(c).back() == 50.0);
}

TEST_CASE("csv header and null markers") {
    SweepConfig c = small_config();
    c.partitions = parse_partitions("cc");
    std::ostringstream os;
    write_rows(os, run_sweep(c), OutputFormat::Csv);
    const auto lines = lines_of(os.str());
    REQUIRE(lines.size() == 52);
    CHECK(lines[0] == "gamma_t,I_cc,C_cc,D_cc,branch_cc,I_rr,C_rr,D_rr,branch_rr");
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto f = fields_of(lines[k]);
        REQUIRE(f.size() == 9);
        CHECK_FALSE(f[1].empty());
        for (std::size_t j = 5; j < 9; ++j) CHECK(f[j].empty());
    }
}

TEST_CASE("json rows carry the csv field names") {
    SweepConfig c = small_config();
    c.partitions = parse_partitions("rr");
    const auto j = rows_to_json(run_sweep(c));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 51);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j[3].items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"gamma_t", "I_cc", "C_cc", "D_cc", "branch_cc", "I_rr",
                                           "C_rr", "D_rr", "branch_rr"});
    CHECK(j[3]["I_cc"].is_null());
    CHECK(j[3]["branch_cc"].is_null());
    CHECK(j[3]["I_rr"].is_number());
    CHECK(j[3]["branch_rr"].is_string());
}

TEST_CASE("output does not depend on the worker count") {
    SweepConfig c = small_config();
    c.n_points = 301;
    std::ostringstream one, many;
    write_rows(one, run_sweep(c, 1), OutputFormat::Csv);
    write_rows(many, run_sweep(c, 8), OutputFormat::Csv);
    CHECK(one.str() == many.str());

    std::ostringstream again;
    write_rows(again, run_sweep(c, 3), OutputFormat::Json);
    std::ostringstream again2;
    write_rows(again2, run_sweep(c, 5), OutputFormat::Json);
    CHECK(again.str() == again2.str());
}

TEST_CASE("every row satisfies I = C + D") {
    for (double nbar : {0.5, 3.0, 100.0}) {
        for (double p : {0.0, 0.2, 0.5, 0.9}) {
            SweepConfig c;
            c.params = SystemParams(nbar, p, 2.0);
            c.grid = GridKind::LogStart;
            c.n_points = 200;
            for (const auto& row : run_sweep(c)) {
                for (const auto& rec : {row.cavities, row.reservoirs}) {
                    REQUIRE(rec.has_value());
                    CHECK(std::abs(rec->mutual_info - rec->classical - rec->discord) <= 1e-12);
                    CHECK(rec->discord >= 0.0);
                    CHECK(rec->classical <= rec->mutual_info);
                }
            }
        }
    }
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(0.1234567890123456) == "0.123456789012");
    CHECK(format_number(1.0 / 3.0 * 1e-9) == "3.33333333333e-10");
    CHECK(round_sig12(2.0 / 3.0) == 0.666666666667);
}

TEST_CASE("figure presets") {
    const auto fig1 = figure_presets("fig1");
    REQUIRE(fig1.size() == 4);
    CHECK(fig1[0].name == "fig1_nbar1");
    CHECK(fig1[3].name == "fig1_nbar100");
    for (const auto& preset : fig1) {
        CHECK(preset.config.params.p() == 0.2);
        CHECK(preset.config.t_max_gamma == 15.0);
        CHECK(preset.table == TableKind::Correlations);
    }
    CHECK(figure_presets("fig2").size() == 2);
    CHECK(figure_presets("fig2")[0].table == TableKind::Elements);
    CHECK(figure_presets("fig3").size() == 2);
    CHECK(figure_presets("fig4")[0].config.grid == GridKind::LogStart);
    CHECK_THROWS_AS(figure_presets("fig5"), std::invalid_argument);
}

TEST_CASE("fig1: correlations end up fully in the reservoirs") {
    for (const auto& preset : figure_presets("fig1")) {
        const auto rows = run_sweep(preset.config);
        CHECK(rows.back().gamma_t == 50.0);
        CHECK(std::abs(rows.front().cavities->mutual_info - rows.back().reservoirs->mutual_info) < 1e-6);
    }
}

TEST_CASE("fig3: bright field is classical on the plateau") {
    const auto presets = figure_presets("fig3");
    const auto& bright = presets[1];
    REQUIRE(bright.config.params.nbar() == 100.0);
    const auto grid = sweep_grid(bright.config);
    std::vector<double> times(grid.begin(), grid.end() - 1);
    const auto traj = trajectory(bright.config.params, Partition::Cavities, times);
    const auto window = detect_dfs_window(traj, bright.config.params);
    REQUIRE(window.has_value());

    const double h2 = 0.7219280948873623;
    int inside = 0;
    for (const auto& row : run_sweep(bright.config)) {
        if (row.gamma_t < window->first || row.gamma_t > window->second) continue;
        ++inside;
        CHECK(row.cavities->discord < 1e-3);
        CHECK(std::abs(row.cavities->classical - (1.0 - h2)) < 1e-2);
    }
    CHECK(inside > 300);
}

TEST_CASE("element table") {
    const auto presets = figure_presets("fig2");
    const auto rows = run_element_sweep(presets[0].config);
    REQUIRE(rows.size() == 1001);
    CHECK(rows.front().cavities->d11() == doctest::Approx(0.5).epsilon(1e-12));
    std::ostringstream os;
    write_elements(os, rows, OutputFormat::Csv);
    const auto lines = lines_of(os.str());
    CHECK(lines[0] == kElementsCsvHeader);
    CHECK(fields_of(lines[1]).size() == 13);
}

TEST_CASE("transition report json") {
    const auto j = report_to_json(make_transition_report(SystemParams(100, 0.2, 1)));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"t_c_analytic", "t_r_analytic", "dfs_duration_analytic",
                                           "t_c_detected", "t_r_detected", "dfs_window_detected",
                                           "complementarity_residual"});
    CHECK(j["t_c_analytic"].get<double>() == doctest::Approx(0.0012778802006379807).epsilon(1e-11));
    CHECK(j["t_r_analytic"].get<double>() == doctest::Approx(6.6631915392001035).epsilon(1e-11));
    CHECK(std::abs(j["complementarity_residual"].get<double>()) < 1e-12);
    CHECK(j["dfs_window_detected"].size() == 2);

    const auto dim = report_to_json(make_transition_report(SystemParams(1, 0.2, 1)));
    CHECK(dim["dfs_duration_analytic"].is_null());
    CHECK(dim["dfs_window_detected"].is_null());

    const auto balanced = report_to_json(make_transition_report(SystemParams(100, 0.5, 1)));
    CHECK(balanced["t_c_analytic"].is_null());
    CHECK(balanced["t_r_analytic"].is_null());
    CHECK(balanced["note"].is_string());
}
