// Ordinary least squares with the diagnostics the evaluation tables need.
#pragma once

#include <cstddef>
#include <vector>

#include "volest/linalg.hpp"

namespace volest {

struct OlsResult {
    std::vector<double> coefficients;  // intercept first, matching the design
    std::vector<double> std_errors;
    std::vector<double> t_stats;
    std::vector<double> p_values;  // two-sided
    double f_stat = 0.0;           // all non-intercept coefficients jointly zero
    double f_p_value = 1.0;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double durbin_watson = 0.0;
    double rss = 0.0;
    std::vector<double> residuals;
    std::size_t n_obs = 0;
    /// Zero residual variance (exact fit). f_stat is +inf with p = 0; the
    /// coefficient p-values collapse to 0/1 sentinels.
    bool degenerate = false;
};

/// Fit response = design * beta by least squares. The design is expected to
/// carry its intercept column explicitly (first column by convention).
/// Throws InvalidInput when n_obs <= n_params or the design is rank deficient.
OlsResult ols_fit(const Matrix& design, const std::vector<double>& response);

/// Convenience builder: columns are stacked after a leading intercept column.
Matrix design_with_intercept(const std::vector<const std::vector<double>*>& columns);

}  // namespace volest
