// Realized volatility and the rolling/increasing sample-variance estimators.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "volest/schedule.hpp"
#include "volest/series.hpp"

namespace volest {

struct HistEstimatorConfig {
    WindowMode mode = WindowMode::rolling;
    std::size_t rolling_window = 252;  // one trading year of returns
    AnnualizationConvention annualization;
};

/// Annualized sample standard deviation of a return window:
/// sqrt(days_per_year / (n-1) * sum (r_i - rbar)^2), unbiased divisor.
/// Throws InvalidInput for windows shorter than 2 or containing NaN.
double annualized_sample_vol(std::span<const double> window, AnnualizationConvention annualization);

/// Realized volatility of a schedule point: the annualized sample vol of the
/// forward (realized) window.
double realized_vol(const SchedulePoint& point, const ReturnSeries& returns,
                    AnnualizationConvention annualization = {});

/// One historical estimate per schedule point. The estimation window is
/// derived from the point's anchor day and the configured mode, so the same
/// schedule serves rolling and increasing runs; only data strictly before the
/// anchor day enters the estimate.
std::vector<std::pair<std::size_t, double>> run_historical(const ReturnSeries& returns,
                                                           const std::vector<SchedulePoint>& schedule,
                                                           const HistEstimatorConfig& config);

}  // namespace volest
