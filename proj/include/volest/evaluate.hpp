// Estimator scoring: unbiasedness regression, encompassing regressions,
// mean squared error, and the chi-squared goodness-of-fit test.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "volest/diagnostics.hpp"
#include "volest/ols.hpp"

namespace volest {

struct UnbiasednessResult {
    double a = 0.0;  // intercept
    double b = 0.0;  // slope on the estimate
    double p_a = 1.0;
    double p_b = 1.0;
    double f_stat = 0.0;  // joint test of a = 0, b = 0
    double p_f = 1.0;
    std::size_t n = 0;
    bool degenerate = false;  // perfect fit (estimate identical to realized)
};

/// Regress (realized - estimate) on the estimate with an intercept. Under the
/// null that the estimate is unbiased, both coefficients are zero, so the
/// regression's overall F is the joint statistic.
UnbiasednessResult unbiasedness_test(const std::vector<double>& realized,
                                     const std::vector<double>& estimate);

/// Equality constraint on one regression coefficient (0 = intercept,
/// 1.. = estimator columns in the order passed).
struct CoefConstraint {
    std::size_t coef_index = 0;
    double value = 0.0;
};

struct EncompassingResult {
    std::vector<std::string> names;  // estimator column names, design order
    OlsResult ols;
    TestResult joint;  // restricted-vs-unrestricted F of the constraints
};

/// Regress realized volatility on several estimators plus an intercept and
/// test the joint hypothesis via the F form of the likelihood ratio under
/// normal errors. Throws InvalidInput naming the offending pair when two
/// estimator columns are collinear.
EncompassingResult encompassing_regression(
    const std::vector<double>& realized,
    const std::vector<std::pair<std::string, std::vector<double>>>& estimates,
    const std::vector<CoefConstraint>& hypothesis);

/// Mean squared error (1/N) * sum (estimate_t - realized_t)^2.
double mse(const std::vector<double>& estimate, const std::vector<double>& realized);

enum class GofDispersion {
    estimator_mean,   // sample variance of the estimator about its own mean
    realized_center,  // (1/N) sum (estimate - realized)^2
};

struct GofResult {
    double mse = 0.0;
    double delta_hat_sq = 0.0;  // dispersion estimate in the denominator
    double statistic = 0.0;     // N * MSE / delta_hat_sq
    double p_value = 1.0;       // upper-tail chi-squared(N)
    std::size_t n = 0;
};

/// Goodness-of-fit test: N * MSE / delta_hat^2 against chi-squared(N).
/// delta_hat^2 defaults to the estimator series' own sample variance
/// (unbiased divisor); the realized-centered variant is selectable.
/// Throws InvalidInput for constant estimators or fewer than min_obs points.
GofResult gof_test(const std::vector<double>& estimate, const std::vector<double>& realized,
                   GofDispersion dispersion = GofDispersion::estimator_mean,
                   std::size_t min_obs = 30);

}  // namespace volest
