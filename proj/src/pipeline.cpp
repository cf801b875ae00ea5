#include "volest/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "volest/errors.hpp"

namespace volest {

namespace {

std::optional<double>* field_for(PanelRow& row, const std::string& id) {
    if (id == "hsv_rolling") return &row.hsv_rolling;
    if (id == "hsv_increasing") return &row.hsv_increasing;
    if (id == "garch_rolling") return &row.garch_rolling;
    if (id == "garch_increasing") return &row.garch_increasing;
    if (id == "vix") return &row.vix;
    return nullptr;
}

std::string cell(const std::optional<double>& v) {
    return v ? format_g6(*v) : std::string();
}

}  // namespace

std::optional<double> PanelRow::estimate(const std::string& id) const {
    const auto* field = field_for(const_cast<PanelRow&>(*this), id);
    if (field == nullptr) return std::nullopt;
    return *field;
}

void PanelRow::set_estimate(const std::string& id, double value) {
    auto* field = field_for(*this, id);
    if (field == nullptr) throw InvalidInput("PanelRow: unknown estimator id '" + id + "'");
    *field = value;
}

std::vector<double> align_vix(const ReturnSeries& returns, const DatedSeries& vix,
                              const std::vector<SchedulePoint>& schedule) {
    std::vector<double> out;
    out.reserve(schedule.size());
    std::vector<std::string> missing;
    for (const SchedulePoint& p : schedule) {
        const Date anchor_date = returns.dates.at(p.anchor_day - 1);
        const auto it = std::lower_bound(vix.dates.begin(), vix.dates.end(), anchor_date);
        if (it == vix.dates.end() || !(*it == anchor_date)) {
            missing.push_back(to_iso_string(anchor_date));
            continue;
        }
        out.push_back(vix.values[static_cast<std::size_t>(it - vix.dates.begin())] / 100.0);
    }
    if (!missing.empty()) {
        std::string msg = "align_vix: anchor dates missing from the VIX series:";
        for (const std::string& d : missing) msg += " " + d;
        throw DataError(msg);
    }
    return out;
}

namespace {

void score_estimators(const std::vector<PanelRow>& panel, EvalReport& eval,
                      std::size_t gof_min_obs) {
    for (const char* id : kEstimatorIds) {
        std::vector<double> realized;
        std::vector<double> estimate;
        for (const PanelRow& row : panel) {
            const auto v = row.estimate(id);
            if (v) {
                realized.push_back(row.realized);
                estimate.push_back(*v);
            }
        }
        if (estimate.empty()) continue;

        EstimatorEval entry;
        entry.estimator = id;
        entry.n = estimate.size();
        try {
            entry.unbiasedness = unbiasedness_test(realized, estimate);
        } catch (const std::exception& e) {
            entry.notes.push_back(std::string("unbiasedness: ") + e.what());
        }
        try {
            entry.mse_value = mse(estimate, realized);
        } catch (const std::exception& e) {
            entry.notes.push_back(std::string("mse: ") + e.what());
        }
        try {
            entry.gof = gof_test(estimate, realized, GofDispersion::estimator_mean, gof_min_obs);
        } catch (const std::exception& e) {
            entry.notes.push_back(std::string("gof: ") + e.what());
        }
        eval.estimators.push_back(std::move(entry));
    }
}

void score_encompassing(const std::vector<PanelRow>& panel, EvalReport& eval) {
    struct Spec {
        std::string label;
        std::vector<std::string> columns;
        // Constraint values for (intercept, columns...): the final column is
        // hypothesized to subsume the rest.
    };
    const std::vector<Spec> specs = {
        {"hsv_r+hg_i", {"hsv_rolling", "garch_increasing"}},
        {"hsv_r+vix", {"hsv_rolling", "vix"}},
        {"hg_i+vix", {"garch_increasing", "vix"}},
        {"hsv_r+hg_i+vix", {"hsv_rolling", "garch_increasing", "vix"}},
    };
    for (const Spec& spec : specs) {
        std::vector<double> realized;
        std::vector<std::vector<double>> columns(spec.columns.size());
        for (const PanelRow& row : panel) {
            bool all_present = true;
            for (const std::string& id : spec.columns) {
                if (!row.estimate(id)) {
                    all_present = false;
                    break;
                }
            }
            if (!all_present) continue;
            realized.push_back(row.realized);
            for (std::size_t j = 0; j < spec.columns.size(); ++j) {
                columns[j].push_back(*row.estimate(spec.columns[j]));
            }
        }
        if (realized.size() <= spec.columns.size() + 1) continue;

        std::vector<std::pair<std::string, std::vector<double>>> estimates;
        for (std::size_t j = 0; j < spec.columns.size(); ++j) {
            estimates.emplace_back(spec.columns[j], std::move(columns[j]));
        }
        // H0: intercept 0, every coefficient 0 except the last, which is 1.
        std::vector<CoefConstraint> hypothesis;
        hypothesis.push_back({0, 0.0});
        for (std::size_t j = 0; j + 1 < spec.columns.size(); ++j) {
            hypothesis.push_back({j + 1, 0.0});
        }
        hypothesis.push_back({spec.columns.size(), 1.0});

        try {
            EncompassingEntry entry;
            entry.label = spec.label;
            entry.n = realized.size();
            entry.result = encompassing_regression(realized, estimates, hypothesis);
            eval.encompassing.push_back(std::move(entry));
        } catch (const std::exception& e) {
            eval.warnings.push_back("encompassing " + spec.label + ": " + e.what());
        }
    }
}

}  // namespace

PipelineResult run_pipeline(const ReturnSeries& returns, const std::optional<DatedSeries>& vix,
                            const PipelineConfig& config) {
    validate(returns);
    const bool rolling_needed = config.hsv_rolling || config.garch_rolling;
    if (rolling_needed && config.first_anchor <= config.rolling_window) {
        throw InvalidInput("run_pipeline: first_anchor must exceed the rolling window");
    }

    const std::vector<SchedulePoint> schedule = build_schedule(
        returns.size(), config.first_anchor, config.step,
        rolling_needed ? WindowMode::rolling : WindowMode::increasing, config.rolling_window,
        config.realized_len);

    PipelineResult result;
    std::vector<VolPoint> points(schedule.size());
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        points[i].index = schedule[i].index;
        points[i].realized = realized_vol(schedule[i], returns, config.annualization);
    }

    auto run_hist = [&](WindowMode mode, const char* id) {
        HistEstimatorConfig hist;
        hist.mode = mode;
        hist.rolling_window = config.rolling_window;
        hist.annualization = config.annualization;
        try {
            const auto estimates = run_historical(returns, schedule, hist);
            for (std::size_t i = 0; i < estimates.size(); ++i) {
                points[i].estimates[id] = estimates[i].second;
            }
        } catch (const std::exception& e) {
            result.eval.warnings.push_back(std::string(id) + ": " + e.what());
        }
    };
    if (config.hsv_rolling) run_hist(WindowMode::rolling, "hsv_rolling");
    if (config.hsv_increasing) run_hist(WindowMode::increasing, "hsv_increasing");

    auto run_garch_column = [&](WindowMode mode, const char* id, std::uint64_t stream) {
        GarchFitOptions opts = config.garch;
        opts.seed = config.seed ^ stream;
        const GarchRunResult run = run_garch(returns, schedule, mode, config.rolling_window, opts,
                                             config.annualization, config.threads);
        for (std::size_t i = 0; i < run.estimates.size(); ++i) {
            if (run.estimates[i].second) {
                points[i].estimates[id] = *run.estimates[i].second;
            }
        }
        for (const std::string& w : run.warnings) {
            result.eval.warnings.push_back(std::string(id) + ": " + w);
        }
    };
    if (config.garch_rolling) run_garch_column(WindowMode::rolling, "garch_rolling", 0x47524f4cULL);
    if (config.garch_increasing) {
        run_garch_column(WindowMode::increasing, "garch_increasing", 0x47494e43ULL);
    }
    if (config.garch_rolling || config.garch_increasing) {
        result.eval.warnings.push_back(
            "garch cap: the first point caps against its own realized value "
            "(look-ahead replicated from the reference backtest)");
    }

    if (vix) {
        try {
            const std::vector<double> aligned = align_vix(returns, *vix, schedule);
            for (std::size_t i = 0; i < aligned.size(); ++i) {
                points[i].estimates["vix"] = aligned[i];
            }
        } catch (const std::exception& e) {
            result.eval.warnings.push_back(std::string("vix: ") + e.what());
        }
    }

    result.panel.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        validate(points[i]);
        result.panel[i].label = period_label(returns.dates.at(schedule[i].anchor_day - 1));
        result.panel[i].realized = points[i].realized;
        for (const auto& [id, vol] : points[i].estimates) {
            result.panel[i].set_estimate(id, vol);
        }
    }

    // Pre-test diagnostics on the full return series.
    try {
        std::vector<double> demeaned = returns.values;
        double mean = 0.0;
        for (double v : demeaned) mean += v;
        mean /= static_cast<double>(demeaned.size());
        for (double& v : demeaned) v -= mean;
        result.eval.arch_lm = arch_lm_test(demeaned, config.arch_lm_lags);
    } catch (const std::exception& e) {
        result.eval.warnings.push_back(std::string("arch_lm: ") + e.what());
    }
    try {
        result.eval.adf = adf_test(returns.values, config.adf_lags);
    } catch (const std::exception& e) {
        result.eval.warnings.push_back(std::string("adf: ") + e.what());
    }

    score_estimators(result.panel, result.eval, config.gof_min_obs);
    score_encompassing(result.panel, result.eval);
    return result;
}

EvalReport evaluate_panel(const std::vector<PanelRow>& panel, std::size_t gof_min_obs) {
    if (panel.empty()) throw InvalidInput("evaluate_panel: empty panel");
    EvalReport eval;
    score_estimators(panel, eval, gof_min_obs);
    score_encompassing(panel, eval);
    return eval;
}

namespace {

std::vector<std::string> present_estimators(const std::vector<PanelRow>& panel) {
    std::vector<std::string> ids;
    for (const char* id : kEstimatorIds) {
        for (const PanelRow& row : panel) {
            if (row.estimate(id)) {
                ids.push_back(id);
                break;
            }
        }
    }
    return ids;
}

std::string render_panel_csv(const std::vector<PanelRow>& panel) {
    std::ostringstream out;
    out << "period,realized,hsv_rolling,hsv_increasing,garch_rolling,garch_increasing,vix\n";
    for (const PanelRow& row : panel) {
        out << row.label << ',' << format_g6(row.realized) << ',' << cell(row.hsv_rolling) << ','
            << cell(row.hsv_increasing) << ',' << cell(row.garch_rolling) << ','
            << cell(row.garch_increasing) << ',' << cell(row.vix) << '\n';
    }
    return out.str();
}

std::string render_unbiasedness_csv(const EvalReport& eval) {
    std::ostringstream out;
    out << "estimator,n,a,p_a,b,p_b,f_stat,p_f,degenerate\n";
    for (const EstimatorEval& e : eval.estimators) {
        if (!e.unbiasedness) continue;
        const UnbiasednessResult& u = *e.unbiasedness;
        out << e.estimator << ',' << u.n << ',' << format_g6(u.a) << ',' << format_g6(u.p_a) << ','
            << format_g6(u.b) << ',' << format_g6(u.p_b) << ',' << format_g6(u.f_stat) << ','
            << format_g6(u.p_f) << ',' << (u.degenerate ? "1" : "0") << '\n';
    }
    return out.str();
}

std::string render_gof_csv(const EvalReport& eval) {
    std::ostringstream out;
    out << "estimator,n,mse,delta_hat_sq,statistic,p_value\n";
    for (const EstimatorEval& e : eval.estimators) {
        if (!e.mse_value) continue;
        out << e.estimator << ',' << e.n << ',' << format_g6(*e.mse_value) << ',';
        if (e.gof) {
            out << format_g6(e.gof->delta_hat_sq) << ',' << format_g6(e.gof->statistic) << ','
                << format_g6(e.gof->p_value);
        } else {
            out << ",,";
        }
        out << '\n';
    }
    return out.str();
}

std::string render_encompassing_csv(const EvalReport& eval) {
    // One row per model; union of estimator columns in report order.
    std::vector<std::string> ids;
    for (const char* id : kEstimatorIds) {
        for (const EncompassingEntry& entry : eval.encompassing) {
            if (std::find(entry.result.names.begin(), entry.result.names.end(), id) !=
                entry.result.names.end()) {
                ids.push_back(id);
                break;
            }
        }
    }
    std::ostringstream out;
    out << "model,n,a,p_a";
    for (const std::string& id : ids) out << ",b_" << id << ",p_" << id;
    out << ",adj_r_squared,durbin_watson,f_stat,p_f\n";
    for (const EncompassingEntry& entry : eval.encompassing) {
        out << entry.label << ',' << entry.n << ',' << format_g6(entry.result.ols.coefficients[0])
            << ',' << format_g6(entry.result.ols.p_values[0]);
        for (const std::string& id : ids) {
            const auto it =
                std::find(entry.result.names.begin(), entry.result.names.end(), id);
            if (it == entry.result.names.end()) {
                out << ",,";
            } else {
                const std::size_t j =
                    1 + static_cast<std::size_t>(it - entry.result.names.begin());
                out << ',' << format_g6(entry.result.ols.coefficients[j]) << ','
                    << format_g6(entry.result.ols.p_values[j]);
            }
        }
        out << ',' << format_g6(entry.result.ols.adj_r_squared) << ','
            << format_g6(entry.result.ols.durbin_watson) << ','
            << format_g6(entry.result.joint.statistic) << ','
            << format_g6(entry.result.joint.p_value) << '\n';
    }
    return out.str();
}

std::string render_figure_csv(const std::vector<PanelRow>& panel) {
    std::ostringstream out;
    out << "period,series,value\n";
    for (const PanelRow& row : panel) {
        out << row.label << ",realized," << format_g6(row.realized) << '\n';
    }
    for (const std::string& id : present_estimators(panel)) {
        for (const PanelRow& row : panel) {
            const auto v = row.estimate(id);
            if (v) out << row.label << ',' << id << ',' << format_g6(*v) << '\n';
        }
    }
    return out.str();
}

std::string render_summary(const std::vector<PanelRow>& panel, const EvalReport& eval) {
    std::ostringstream out;
    char line[256];
    out << "volatility estimation summary\n";
    out << "=============================\n";
    out << "panel rows: " << panel.size() << "\n";
    if (!panel.empty()) {
        out << "first period: " << panel.front().label
            << "   last period: " << panel.back().label << "\n";
    }
    out << "\nestimator scores\n";
    std::snprintf(line, sizeof(line), "%-18s %5s %12s %12s %12s %12s\n", "estimator", "n", "mse",
                  "delta_hat_sq", "gof_stat", "gof_p");
    out << line;
    for (const EstimatorEval& e : eval.estimators) {
        std::snprintf(line, sizeof(line), "%-18s %5zu %12s %12s %12s %12s\n", e.estimator.c_str(),
                      e.n, e.mse_value ? format_g6(*e.mse_value).c_str() : "-",
                      e.gof ? format_g6(e.gof->delta_hat_sq).c_str() : "-",
                      e.gof ? format_g6(e.gof->statistic).c_str() : "-",
                      e.gof ? format_g6(e.gof->p_value).c_str() : "-");
        out << line;
    }
    out << "\nunbiasedness regressions ((realized - estimate) on estimate)\n";
    std::snprintf(line, sizeof(line), "%-18s %12s %10s %12s %10s %12s %10s\n", "estimator", "a",
                  "p_a", "b", "p_b", "F", "p_F");
    out << line;
    for (const EstimatorEval& e : eval.estimators) {
        if (!e.unbiasedness) continue;
        const UnbiasednessResult& u = *e.unbiasedness;
        std::snprintf(line, sizeof(line), "%-18s %12s %10s %12s %10s %12s %10s\n",
                      e.estimator.c_str(), format_g6(u.a).c_str(), format_g6(u.p_a).c_str(),
                      format_g6(u.b).c_str(), format_g6(u.p_b).c_str(), format_g6(u.f_stat).c_str(),
                      format_g6(u.p_f).c_str());
        out << line;
    }
    if (!eval.encompassing.empty()) {
        out << "\nencompassing regressions (joint constraint F)\n";
        std::snprintf(line, sizeof(line), "%-18s %5s %12s %12s %12s %10s\n", "model", "n",
                      "adj_r_sq", "durbin_watson", "F", "p_F");
        out << line;
        for (const EncompassingEntry& entry : eval.encompassing) {
            std::snprintf(line, sizeof(line), "%-18s %5zu %12s %12s %12s %10s\n",
                          entry.label.c_str(), entry.n,
                          format_g6(entry.result.ols.adj_r_squared).c_str(),
                          format_g6(entry.result.ols.durbin_watson).c_str(),
                          format_g6(entry.result.joint.statistic).c_str(),
                          format_g6(entry.result.joint.p_value).c_str());
            out << line;
        }
    }
    out << "\ndiagnostics (full return series)\n";
    if (eval.arch_lm) {
        out << "arch_lm: F=" << format_g6(eval.arch_lm->statistic)
            << " p=" << format_g6(eval.arch_lm->p_value);
        if (eval.arch_lm->aux_statistic) {
            out << "  chi2=" << format_g6(*eval.arch_lm->aux_statistic)
                << " p=" << format_g6(*eval.arch_lm->aux_p_value);
        }
        out << "\n";
    }
    if (eval.adf) {
        out << "adf: stat=" << format_g6(eval.adf->statistic)
            << " p=" << format_g6(eval.adf->p_value) << "\n";
    }
    bool any_notes = !eval.warnings.empty();
    for (const EstimatorEval& e : eval.estimators) any_notes = any_notes || !e.notes.empty();
    if (any_notes) {
        out << "\nwarnings\n";
        for (const std::string& w : eval.warnings) out << "- " << w << "\n";
        for (const EstimatorEval& e : eval.estimators) {
            for (const std::string& n : e.notes) out << "- " << e.estimator << ": " << n << "\n";
        }
    }
    return out.str();
}

}  // namespace

void emit_report(const std::vector<PanelRow>& panel, const EvalReport& eval,
                 const std::string& out_dir) {
    if (panel.empty()) throw InvalidInput("emit_report: empty panel");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw DataError("emit_report: cannot create directory " + out_dir);
    const std::filesystem::path dir(out_dir);
    write_file((dir / "panel.csv").string(), render_panel_csv(panel));
    write_file((dir / "figure_volatility.csv").string(), render_figure_csv(panel));
    emit_eval_report(panel, eval, out_dir);
}

void emit_eval_report(const std::vector<PanelRow>& panel, const EvalReport& eval,
                      const std::string& out_dir) {
    if (panel.empty()) throw InvalidInput("emit_eval_report: empty panel");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw DataError("emit_eval_report: cannot create directory " + out_dir);
    const std::filesystem::path dir(out_dir);
    write_file((dir / "unbiasedness.csv").string(), render_unbiasedness_csv(eval));
    write_file((dir / "encompassing.csv").string(), render_encompassing_csv(eval));
    write_file((dir / "gof.csv").string(), render_gof_csv(eval));
    write_file((dir / "summary.txt").string(), render_summary(panel, eval));
}

std::vector<PanelRow> load_panel_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    const std::vector<std::string> header = split_csv_line(line);
    if (header.empty() || header[0] != "period") {
        throw DataError(path + ": expected a panel.csv header starting with 'period'");
    }
    std::size_t realized_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "realized") realized_idx = i;
    }
    if (realized_idx == header.size()) throw DataError(path + ": missing 'realized' column");

    std::vector<PanelRow> panel;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw DataError(path + ": line " + std::to_string(line_no) + ": field count mismatch");
        }
        PanelRow row;
        row.label = fields[0];
        try {
            row.realized = std::stod(fields[realized_idx]);
        } catch (const std::exception&) {
            throw DataError(path + ": line " + std::to_string(line_no) + ": bad realized value");
        }
        for (std::size_t i = 1; i < header.size(); ++i) {
            if (i == realized_idx || fields[i].empty()) continue;
            if (field_for(row, header[i]) == nullptr) continue;  // unknown columns are ignored
            try {
                row.set_estimate(header[i], std::stod(fields[i]));
            } catch (const InvalidInput&) {
                throw;
            } catch (const std::exception&) {
                throw DataError(path + ": line " + std::to_string(line_no) + ": bad value in '" +
                                header[i] + "'");
            }
        }
        panel.push_back(std::move(row));
    }
    if (panel.empty()) throw DataError(path + ": no data rows");
    return panel;
}

}  // namespace volest
