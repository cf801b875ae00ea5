#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "volest/errors.hpp"
#include "volest/garch.hpp"
#include "volest/historical.hpp"
#include "volest/pipeline.hpp"
#include "volest/rng.hpp"
#include "volest/simulate.hpp"

using namespace volest;

namespace {

ReturnSeries synthetic_returns(std::size_t n, std::uint64_t seed, double daily_vol = 0.01) {
    ReturnSeries series;
    Rng rng(seed);
    series.values.resize(n);
    for (double& v : series.values) v = daily_vol * rng.normal();
    Date d{2004, 1, 2};
    for (std::size_t i = 0; i < n; ++i) {
        series.dates.push_back(d);
        d = next_calendar_day(d);
    }
    return series;
}

DatedSeries vix_for(const ReturnSeries& returns, double level) {
    DatedSeries vix;
    vix.dates = returns.dates;
    vix.values.assign(returns.size(), level);
    return vix;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PipelineConfig small_config() {
    PipelineConfig config;
    config.first_anchor = 253;
    config.step = 40;
    config.realized_len = 21;
    config.rolling_window = 252;
    config.garch.restarts = 1;
    config.garch.min_obs = 50;
    config.seed = 11;
    return config;
}

}  // namespace

TEST_CASE("align_vix picks the anchor-date close divided by 100") {
    ReturnSeries returns = synthetic_returns(300, 1);
    DatedSeries vix = vix_for(returns, 14.08);
    const auto schedule = build_schedule(returns.size(), 253, 20, WindowMode::rolling, 252, 21);
    const auto aligned = align_vix(returns, vix, schedule);
    REQUIRE(aligned.size() == schedule.size());
    CHECK(aligned[0] == doctest::Approx(0.1408).epsilon(1e-15));

    // A zero close passes through as zero.
    DatedSeries zero = vix_for(returns, 0.0);
    CHECK(align_vix(returns, zero, schedule)[0] == 0.0);

    // Remove the anchor date: the error lists it.
    DatedSeries missing = vix;
    const Date anchor_date = returns.dates[schedule[0].anchor_day - 1];
    missing.dates.erase(missing.dates.begin() + (schedule[0].anchor_day - 1));
    missing.values.pop_back();
    const std::string anchor_iso = to_iso_string(anchor_date);
    CHECK_THROWS_WITH_AS(align_vix(returns, missing, schedule),
                         doctest::Contains(anchor_iso.c_str()), DataError);
}

TEST_CASE("pipeline fills every enabled column and labels rows by anchor date") {
    const ReturnSeries returns = synthetic_returns(700, 2);
    const auto vix = vix_for(returns, 16.0);
    PipelineConfig config = small_config();
    const PipelineResult result = run_pipeline(returns, vix, config);

    REQUIRE(result.panel.size() == build_schedule(700, 253, 40, WindowMode::rolling, 252, 21).size());
    for (const PanelRow& row : result.panel) {
        CHECK(row.realized >= 0.0);
        CHECK(row.hsv_rolling.has_value());
        CHECK(row.hsv_increasing.has_value());
        CHECK(row.vix.has_value());
        CHECK(*row.vix == doctest::Approx(0.16));
        CHECK(!row.label.empty());
    }
    // At the first point rolling and increasing windows coincide.
    CHECK(*result.panel[0].hsv_rolling == *result.panel[0].hsv_increasing);
    // The anchor-date label: first anchor lands 252 returns after 2004-01-02.
    CHECK(result.panel[0].label == period_label(returns.dates[252]));
    // GARCH columns exist (fit failures, if any, are reported as warnings).
    std::size_t garch_present = 0;
    for (const PanelRow& row : result.panel) {
        if (row.garch_rolling && row.garch_increasing) ++garch_present;
    }
    CHECK(garch_present == result.panel.size());
}

TEST_CASE("panel estimates are reproducible from the module operations in isolation") {
    const ReturnSeries returns = synthetic_returns(700, 3);
    PipelineConfig config = small_config();
    const PipelineResult result = run_pipeline(returns, std::nullopt, config);
    const auto schedule =
        build_schedule(returns.size(), config.first_anchor, config.step, WindowMode::rolling,
                       config.rolling_window, config.realized_len);

    // Three spot-check points chosen by a seeded draw.
    Rng rng(99);
    for (int pick = 0; pick < 3; ++pick) {
        const std::size_t i =
            static_cast<std::size_t>(rng.uniform() * static_cast<double>(schedule.size() - 1));
        CHECK(result.panel[i].realized == realized_vol(schedule[i], returns, config.annualization));

        HistEstimatorConfig hist;
        hist.mode = WindowMode::rolling;
        hist.rolling_window = config.rolling_window;
        hist.annualization = config.annualization;
        CHECK(*result.panel[i].hsv_rolling == run_historical(returns, schedule, hist)[i].second);

        GarchFitOptions opts = config.garch;
        opts.seed = config.seed ^ 0x47524f4cULL;
        const auto isolated =
            run_garch(returns, schedule, WindowMode::rolling, config.rolling_window, opts,
                      config.annualization, config.threads);
        REQUIRE(isolated.estimates[i].second.has_value());
        CHECK(*result.panel[i].garch_rolling == *isolated.estimates[i].second);
    }
}

TEST_CASE("estimators converge near the true level on a constant-volatility market") {
    // Geometry note: realized windows must be long relative to estimation
    // windows for the dispersion test to sit near its null; short realized
    // windows inflate MSE with measurement noise.
    GarchParams flat;
    flat.omega = 1e-4;
    flat.alpha1 = flat.alpha2 = flat.beta1 = 0.0;
    flat.nu = 50.0;
    ReturnSeries returns;
    {
        auto values = simulate_garch_returns(flat, 2200, 606);
        // sqrt(252 * 1e-4) ~ 15.87% annualized
        returns.values = values;
        Date d{2004, 1, 2};
        for (std::size_t i = 0; i < values.size(); ++i) {
            returns.dates.push_back(d);
            d = next_calendar_day(d);
        }
    }
    PipelineConfig config;
    config.first_anchor = 64;
    config.step = 40;
    config.realized_len = 504;
    config.rolling_window = 63;
    config.garch_rolling = false;   // 63 obs is below a sensible GARCH window
    config.garch_increasing = true;
    config.garch.restarts = 1;
    config.garch.min_obs = 50;
    config.seed = 5;
    const PipelineResult result = run_pipeline(returns, std::nullopt, config);

    const double truth = std::sqrt(252.0 * 1e-4);
    for (const PanelRow& row : result.panel) {
        CHECK(std::abs(row.realized - truth) / truth < 0.25);
        CHECK(std::abs(*row.hsv_rolling - truth) / truth < 0.35);
        CHECK(std::abs(*row.hsv_increasing - truth) / truth < 0.25);
    }
    for (const EstimatorEval& e : result.eval.estimators) {
        if (e.estimator == "hsv_rolling" && e.gof) {
            CHECK(e.gof->p_value > 0.05);
        }
    }
}

TEST_CASE("too-short input fails with the insufficient-data error") {
    const ReturnSeries returns = synthetic_returns(100, 4);
    CHECK_THROWS_WITH_AS(run_pipeline(returns, std::nullopt, small_config()),
                         doctest::Contains("insufficient"), InvalidInput);
}

TEST_CASE("reports are byte-identical across reruns and count rows correctly") {
    const ReturnSeries returns = synthetic_returns(700, 6);
    const auto vix = vix_for(returns, 15.0);
    PipelineConfig config = small_config();
    config.garch_rolling = false;
    config.garch_increasing = false;

    const auto dir_a = std::filesystem::temp_directory_path() / "volest_report_a";
    const auto dir_b = std::filesystem::temp_directory_path() / "volest_report_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
    const PipelineResult first = run_pipeline(returns, vix, config);
    emit_report(first.panel, first.eval, dir_a.string());
    const PipelineResult second = run_pipeline(returns, vix, config);
    emit_report(second.panel, second.eval, dir_b.string());

    for (const char* name : {"panel.csv", "unbiasedness.csv", "encompassing.csv", "gof.csv",
                             "figure_volatility.csv", "summary.txt"}) {
        CHECK(slurp((dir_a / name).string()) == slurp((dir_b / name).string()));
    }

    // Header plus one line per row.
    std::istringstream panel(slurp((dir_a / "panel.csv").string()));
    std::size_t lines = 0;
    std::string line;
    while (std::getline(panel, line)) ++lines;
    CHECK(lines == first.panel.size() + 1);

    // The stored panel round-trips through the loader and re-scores.
    const auto loaded = load_panel_csv((dir_a / "panel.csv").string());
    REQUIRE(loaded.size() == first.panel.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].label == first.panel[i].label);
        CHECK(loaded[i].realized == doctest::Approx(first.panel[i].realized).epsilon(1e-5));
        CHECK(loaded[i].vix.has_value());
    }
    const EvalReport rescored = evaluate_panel(loaded, config.gof_min_obs);
    CHECK(rescored.estimators.size() >= 3);

    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("emit_report refuses an empty panel") {
    EvalReport eval;
    CHECK_THROWS_AS(emit_report({}, eval, "/tmp/volest_empty_panel"), InvalidInput);
}
