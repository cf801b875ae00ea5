// End-to-end orchestration: align inputs, run every estimator on the shared
// schedule, score them, and emit the report files.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "volest/csv.hpp"
#include "volest/evaluate.hpp"
#include "volest/garch.hpp"
#include "volest/historical.hpp"
#include "volest/schedule.hpp"
#include "volest/series.hpp"

namespace volest {

/// Estimator column ids, in report order.
inline constexpr const char* kEstimatorIds[] = {"hsv_rolling", "hsv_increasing", "garch_rolling",
                                                "garch_increasing", "vix"};

struct PanelRow {
    std::string label;  // "YYYY.M" of the anchor date
    double realized = 0.0;
    std::optional<double> hsv_rolling;
    std::optional<double> hsv_increasing;
    std::optional<double> garch_rolling;
    std::optional<double> garch_increasing;
    std::optional<double> vix;

    std::optional<double> estimate(const std::string& id) const;
    void set_estimate(const std::string& id, double value);
};

struct PipelineConfig {
    std::size_t first_anchor = 253;
    std::size_t step = 20;
    std::size_t realized_len = 21;
    std::size_t rolling_window = 252;
    bool hsv_rolling = true;
    bool hsv_increasing = true;
    bool garch_rolling = true;
    bool garch_increasing = true;
    GarchFitOptions garch;
    AnnualizationConvention annualization;
    std::size_t gof_min_obs = 30;
    std::size_t arch_lm_lags = 1;
    std::size_t adf_lags = 1;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
};

struct EstimatorEval {
    std::string estimator;
    std::size_t n = 0;
    std::optional<UnbiasednessResult> unbiasedness;
    std::optional<double> mse_value;
    std::optional<GofResult> gof;
    std::vector<std::string> notes;
};

struct EncompassingEntry {
    std::string label;
    std::size_t n = 0;
    EncompassingResult result;
};

struct EvalReport {
    std::vector<EstimatorEval> estimators;
    std::vector<EncompassingEntry> encompassing;
    std::optional<TestResult> arch_lm;  // on the demeaned full return series
    std::optional<TestResult> adf;      // on the full return series
    std::vector<std::string> warnings;
};

struct PipelineResult {
    std::vector<PanelRow> panel;
    EvalReport eval;
};

/// VIX close on each anchor date, divided by 100. Throws DataError listing
/// every anchor date missing from the VIX series.
std::vector<double> align_vix(const ReturnSeries& returns, const DatedSeries& vix,
                              const std::vector<SchedulePoint>& schedule);

/// Run every enabled estimator on the shared schedule and score the columns.
/// Per-estimator failures degrade to missing columns plus a warning;
/// deterministic given the config.
PipelineResult run_pipeline(const ReturnSeries& returns, const std::optional<DatedSeries>& vix,
                            const PipelineConfig& config);

/// Re-score an existing panel (no re-estimation).
EvalReport evaluate_panel(const std::vector<PanelRow>& panel, std::size_t gof_min_obs = 30);

/// Write panel.csv, unbiasedness.csv, encompassing.csv, gof.csv,
/// figure_volatility.csv, and summary.txt into out_dir. Floats carry 6
/// significant digits; output is byte-stable for identical inputs.
void emit_report(const std::vector<PanelRow>& panel, const EvalReport& eval,
                 const std::string& out_dir);

/// The evaluation tables and summary only (no panel echo, no figure data).
void emit_eval_report(const std::vector<PanelRow>& panel, const EvalReport& eval,
                      const std::string& out_dir);

/// Parse a panel.csv previously produced by emit_report.
std::vector<PanelRow> load_panel_csv(const std::string& path);

}  // namespace volest
