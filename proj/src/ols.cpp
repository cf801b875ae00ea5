#include "volest/ols.hpp"

#include <cmath>
#include <limits>

#include "volest/errors.hpp"
#include "volest/special.hpp"

namespace volest {

Matrix design_with_intercept(const std::vector<const std::vector<double>*>& columns) {
    if (columns.empty()) throw InvalidInput("design_with_intercept: no columns");
    const std::size_t n = columns.front()->size();
    for (const auto* col : columns) {
        if (col->size() != n) throw InvalidInput("design_with_intercept: column length mismatch");
    }
    Matrix x(n, columns.size() + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        for (std::size_t j = 0; j < columns.size(); ++j) x(i, j + 1) = (*columns[j])[i];
    }
    return x;
}

OlsResult ols_fit(const Matrix& design, const std::vector<double>& response) {
    const std::size_t n = design.rows();
    const std::size_t p = design.cols();
    if (n <= p) throw InvalidInput("ols_fit: need more observations than parameters");
    if (response.size() != n) throw InvalidInput("ols_fit: response length mismatch");

    const auto ls = solve_least_squares(design, response);
    if (!ls.full_rank) throw InvalidInput("ols_fit: design matrix is rank deficient");

    OlsResult r;
    r.n_obs = n;
    r.coefficients = ls.coefficients;
    r.residuals.assign(n, 0.0);

    double mean_y = 0.0;
    for (double v : response) mean_y += v;
    mean_y /= static_cast<double>(n);

    double tss = 0.0;
    double msq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < p; ++j) fit += design(i, j) * r.coefficients[j];
        r.residuals[i] = response[i] - fit;
        r.rss += r.residuals[i] * r.residuals[i];
        tss += (response[i] - mean_y) * (response[i] - mean_y);
        msq += response[i] * response[i];
    }

    // Exact fits leave rss at rounding-noise level; flag instead of erroring so
    // pipeline code can branch on perfect estimators.
    r.degenerate = r.rss <= 1e-24 * msq;

    const double dof_resid = static_cast<double>(n - p);
    const double dof_model = static_cast<double>(p - 1);
    const double sigma2 = r.rss / dof_resid;

    r.r_squared = tss > 0.0 ? 1.0 - r.rss / tss : (r.degenerate ? 1.0 : 0.0);
    r.adj_r_squared = 1.0 - (1.0 - r.r_squared) * (static_cast<double>(n) - 1.0) / dof_resid;

    r.std_errors.assign(p, 0.0);
    r.t_stats.assign(p, 0.0);
    r.p_values.assign(p, 1.0);
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p; ++j) {
        r.std_errors[j] = std::sqrt(std::max(0.0, sigma2 * ls.xtx_inverse(j, j)));
        if (r.degenerate) {
            r.std_errors[j] = 0.0;
            if (r.coefficients[j] == 0.0) {
                r.t_stats[j] = 0.0;
                r.p_values[j] = 1.0;
            } else {
                r.t_stats[j] = r.coefficients[j] > 0.0 ? inf : -inf;
                r.p_values[j] = 0.0;
            }
        } else {
            r.t_stats[j] = r.coefficients[j] / r.std_errors[j];
            r.p_values[j] = t_sf_two_sided(r.t_stats[j], dof_resid);
        }
    }

    if (dof_model > 0.0) {
        if (r.degenerate) {
            r.f_stat = inf;
            r.f_p_value = 0.0;
        } else {
            r.f_stat = (r.r_squared / dof_model) / ((1.0 - r.r_squared) / dof_resid);
            r.f_p_value = f_sf(r.f_stat, dof_model, dof_resid);
        }
    }

    double dw_num = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = r.residuals[i] - r.residuals[i - 1];
        dw_num += d * d;
    }
    r.durbin_watson = r.rss > 0.0 ? dw_num / r.rss : 0.0;
    return r;
}

}  // namespace volest
