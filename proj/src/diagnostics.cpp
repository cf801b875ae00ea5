#include "volest/diagnostics.hpp"

#include <cmath>

#include "volest/errors.hpp"
#include "volest/ols.hpp"
#include "volest/special.hpp"

namespace volest {

TestResult arch_lm_test(const std::vector<double>& residuals, std::size_t q) {
    if (q < 1) throw InvalidInput("arch_lm_test: lag count must be >= 1");
    const std::size_t n = residuals.size();
    if (n <= q + 1) throw InvalidInput("arch_lm_test: series too short for the lag count");

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = residuals[i] * residuals[i];

    const double first = sq.front();
    bool constant = true;
    for (double v : sq) {
        if (v != first) {
            constant = false;
            break;
        }
    }
    if (constant) throw InvalidInput("arch_lm_test: degenerate series (constant residuals)");

    // Auxiliary regression: sq_t on an intercept and sq_{t-1} .. sq_{t-q}.
    const std::size_t n_aux = n - q;
    Matrix design(n_aux, q + 1, 0.0);
    std::vector<double> response(n_aux);
    for (std::size_t t = 0; t < n_aux; ++t) {
        design(t, 0) = 1.0;
        for (std::size_t j = 1; j <= q; ++j) design(t, j) = sq[q + t - j];
        response[t] = sq[q + t];
    }

    const OlsResult aux = ols_fit(design, response);

    TestResult out;
    out.statistic = aux.f_stat;
    out.p_value = aux.f_p_value;
    out.aux_statistic = static_cast<double>(n_aux) * aux.r_squared;
    out.aux_p_value = chi2_sf(*out.aux_statistic, static_cast<double>(q));
    return out;
}

namespace {

// MacKinnon (1994) response-surface coefficients, single-series regression
// with constant. Outside [min, max] the p-value saturates at 0 or 1.
constexpr double kTauStar = -1.61;
constexpr double kTauMin = -18.83;
constexpr double kTauMax = 2.74;
constexpr double kSmallP[] = {2.1659, 1.4412, 3.8269e-2};
constexpr double kLargeP[] = {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2};

double mackinnon_p_constant(double stat) {
    if (stat > kTauMax) return 1.0;
    if (stat < kTauMin) return 0.0;
    double z;
    if (stat <= kTauStar) {
        z = kSmallP[0] + stat * (kSmallP[1] + stat * kSmallP[2]);
    } else {
        z = kLargeP[0] + stat * (kLargeP[1] + stat * (kLargeP[2] + stat * kLargeP[3]));
    }
    return norm_cdf(z);
}

}  // namespace

TestResult adf_test(const std::vector<double>& series, std::size_t lags, AdfSpec /*spec*/) {
    const std::size_t n = series.size();
    if (n <= lags + 2) throw InvalidInput("adf_test: series too short for the lag count");

    // Regression: dy_t = c + rho * y_{t-1} + sum_j phi_j dy_{t-j} + e_t.
    const std::size_t first = lags;  // first usable index into dy
    const std::size_t rows = n - 1 - lags;
    const std::size_t cols = 2 + lags;
    if (rows <= cols) throw InvalidInput("adf_test: series too short for the lag count");

    std::vector<double> dy(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) dy[i] = series[i + 1] - series[i];

    Matrix design(rows, cols, 0.0);
    std::vector<double> response(rows);
    for (std::size_t t = 0; t < rows; ++t) {
        const std::size_t idx = first + t;  // index into dy
        design(t, 0) = 1.0;
        design(t, 1) = series[idx];  // y_{t-1}: level preceding dy[idx]
        for (std::size_t j = 1; j <= lags; ++j) design(t, 1 + j) = dy[idx - j];
        response[t] = dy[idx];
    }

    const OlsResult fit = ols_fit(design, response);
    TestResult out;
    out.statistic = fit.t_stats[1];
    out.p_value = mackinnon_p_constant(out.statistic);
    return out;
}

}  // namespace volest
