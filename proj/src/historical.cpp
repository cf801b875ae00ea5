#include "volest/historical.hpp"

#include <cmath>

#include "volest/errors.hpp"

namespace volest {

double annualized_sample_vol(std::span<const double> window,
                             AnnualizationConvention annualization) {
    const std::size_t n = window.size();
    if (n < 2) throw InvalidInput("annualized_sample_vol: window must hold at least 2 returns");
    double mean = 0.0;
    bool constant = true;
    for (double r : window) {
        if (!std::isfinite(r)) throw InvalidInput("annualized_sample_vol: window contains NaN");
        mean += r;
        constant = constant && r == window.front();
    }
    if (constant) return 0.0;  // exactly, not up to accumulation noise
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double r : window) {
        const double d = r - mean;
        ss += d * d;
    }
    const double days = static_cast<double>(annualization.trading_days_per_year);
    return std::sqrt(days * ss / static_cast<double>(n - 1));
}

double realized_vol(const SchedulePoint& point, const ReturnSeries& returns,
                    AnnualizationConvention annualization) {
    const IndexRange& w = point.realized_window;
    if (w.end > returns.size()) throw InvalidInput("realized_vol: window outside the series");
    return annualized_sample_vol(
        std::span<const double>(returns.values.data() + w.begin, w.size()), annualization);
}

std::vector<std::pair<std::size_t, double>> run_historical(
    const ReturnSeries& returns, const std::vector<SchedulePoint>& schedule,
    const HistEstimatorConfig& config) {
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(schedule.size());
    for (const SchedulePoint& point : schedule) {
        const IndexRange w =
            estimation_window_for(point.anchor_day, config.mode, config.rolling_window);
        if (w.end > returns.size()) {
            throw InvalidInput("run_historical: estimation window outside the series");
        }
        const double vol = annualized_sample_vol(
            std::span<const double>(returns.values.data() + w.begin, w.size()),
            config.annualization);
        out.emplace_back(point.index, vol);
    }
    return out;
}

}  // namespace volest
