// Pre-tests applied to return series before GARCH modelling.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace volest {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::optional<double> aux_statistic;  // paired second form, when one exists
    std::optional<double> aux_p_value;
};

/// Lagrange-multiplier test for ARCH effects: the squared residuals are
/// regressed on q of their own lags. statistic/p_value carry the F form;
/// aux_statistic/aux_p_value carry the n*R^2 chi-squared(q) form.
/// Throws InvalidInput on a constant ("degenerate") series or q < 1.
TestResult arch_lm_test(const std::vector<double>& residuals, std::size_t q);

enum class AdfSpec { constant };

/// Augmented Dickey-Fuller unit-root test with a constant term. The statistic
/// is the t-ratio on the lagged level; the p-value comes from MacKinnon's
/// response-surface approximation for the constant-only case.
TestResult adf_test(const std::vector<double>& series, std::size_t lags,
                    AdfSpec spec = AdfSpec::constant);

}  // namespace volest
