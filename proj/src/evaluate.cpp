#include "volest/evaluate.hpp"

#include <cmath>
#include <limits>

#include "volest/errors.hpp"
#include "volest/special.hpp"

namespace volest {

namespace {

double sample_variance_about_mean(const std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(x.size() - 1);
}

bool is_constant(const std::vector<double>& x) {
    for (double v : x) {
        if (v != x.front()) return false;
    }
    return true;
}

}  // namespace

UnbiasednessResult unbiasedness_test(const std::vector<double>& realized,
                                     const std::vector<double>& estimate) {
    if (realized.size() != estimate.size()) {
        throw InvalidInput("unbiasedness_test: length mismatch");
    }
    if (realized.size() < 3) throw InvalidInput("unbiasedness_test: need at least 3 points");
    if (is_constant(estimate)) throw InvalidInput("unbiasedness_test: constant estimator");

    std::vector<double> diff(realized.size());
    for (std::size_t i = 0; i < realized.size(); ++i) diff[i] = realized[i] - estimate[i];

    const Matrix design = design_with_intercept({&estimate});
    const OlsResult fit = ols_fit(design, diff);

    UnbiasednessResult r;
    r.a = fit.coefficients[0];
    r.b = fit.coefficients[1];
    r.p_a = fit.p_values[0];
    r.p_b = fit.p_values[1];
    r.f_stat = fit.f_stat;
    r.p_f = fit.f_p_value;
    r.n = fit.n_obs;
    r.degenerate = fit.degenerate;
    return r;
}

EncompassingResult encompassing_regression(
    const std::vector<double>& realized,
    const std::vector<std::pair<std::string, std::vector<double>>>& estimates,
    const std::vector<CoefConstraint>& hypothesis) {
    if (estimates.size() < 2) {
        throw InvalidInput("encompassing_regression: need at least 2 estimators");
    }
    if (hypothesis.empty()) {
        throw InvalidInput("encompassing_regression: empty hypothesis");
    }
    const std::size_t n = realized.size();
    const std::size_t p = estimates.size() + 1;
    if (n <= p) throw InvalidInput("encompassing_regression: need more points than parameters");
    for (const auto& [name, values] : estimates) {
        if (values.size() != n) {
            throw InvalidInput("encompassing_regression: column '" + name + "' length mismatch");
        }
    }

    // Collinearity check with names, before QR has a chance to fail blindly.
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        for (std::size_t j = i + 1; j < estimates.size(); ++j) {
            const auto& a = estimates[i].second;
            const auto& b = estimates[j].second;
            double ma = 0.0, mb = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                ma += a[k];
                mb += b[k];
            }
            ma /= static_cast<double>(n);
            mb /= static_cast<double>(n);
            double sab = 0.0, saa = 0.0, sbb = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                sab += (a[k] - ma) * (b[k] - mb);
                saa += (a[k] - ma) * (a[k] - ma);
                sbb += (b[k] - mb) * (b[k] - mb);
            }
            if (saa == 0.0 || sbb == 0.0 ||
                sab * sab >= (1.0 - 1e-10) * saa * sbb) {
                throw InvalidInput("encompassing_regression: collinear estimators '" +
                                   estimates[i].first + "' and '" + estimates[j].first + "'");
            }
        }
    }

    std::vector<const std::vector<double>*> columns;
    columns.reserve(estimates.size());
    for (const auto& [name, values] : estimates) columns.push_back(&values);
    const Matrix design = design_with_intercept(columns);

    EncompassingResult out;
    for (const auto& [name, values] : estimates) out.names.push_back(name);
    out.ols = ols_fit(design, realized);

    // Restricted fit: substitute the constrained coefficients into the
    // response and regress what is left on the free columns.
    std::vector<bool> constrained(p, false);
    for (const CoefConstraint& c : hypothesis) {
        if (c.coef_index >= p) throw InvalidInput("encompassing_regression: constraint index");
        if (constrained[c.coef_index]) {
            throw InvalidInput("encompassing_regression: duplicate constraint");
        }
        constrained[c.coef_index] = true;
    }
    std::vector<double> adjusted = realized;
    for (const CoefConstraint& c : hypothesis) {
        for (std::size_t i = 0; i < n; ++i) adjusted[i] -= c.value * design(i, c.coef_index);
    }
    std::size_t n_free = 0;
    for (std::size_t j = 0; j < p; ++j) {
        if (!constrained[j]) ++n_free;
    }
    double rss_restricted = 0.0;
    if (n_free == 0) {
        for (double v : adjusted) rss_restricted += v * v;
    } else {
        Matrix restricted(n, n_free, 0.0);
        std::size_t col = 0;
        for (std::size_t j = 0; j < p; ++j) {
            if (constrained[j]) continue;
            for (std::size_t i = 0; i < n; ++i) restricted(i, col) = design(i, j);
            ++col;
        }
        const OlsResult rf_raw = [&]() {
            // ols_fit requires an intercept-style full-rank design; reuse the
            // least-squares core directly for the restricted RSS.
            const auto ls = solve_least_squares(restricted, adjusted);
            if (!ls.full_rank) {
                throw InvalidInput("encompassing_regression: restricted design rank deficient");
            }
            OlsResult r;
            for (std::size_t i = 0; i < n; ++i) {
                double fit = 0.0;
                for (std::size_t j = 0; j < n_free; ++j) fit += restricted(i, j) * ls.coefficients[j];
                const double e = adjusted[i] - fit;
                r.rss += e * e;
            }
            return r;
        }();
        rss_restricted = rf_raw.rss;
    }

    const double m = static_cast<double>(hypothesis.size());
    const double dof_resid = static_cast<double>(n - p);
    TestResult joint;
    if (out.ols.degenerate || out.ols.rss <= 0.0) {
        joint.statistic = rss_restricted > out.ols.rss ? std::numeric_limits<double>::infinity()
                                                       : 0.0;
        joint.p_value = rss_restricted > out.ols.rss ? 0.0 : 1.0;
    } else {
        joint.statistic = ((rss_restricted - out.ols.rss) / m) / (out.ols.rss / dof_resid);
        joint.statistic = std::max(0.0, joint.statistic);
        joint.p_value = f_sf(joint.statistic, m, dof_resid);
    }
    out.joint = joint;
    return out;
}

double mse(const std::vector<double>& estimate, const std::vector<double>& realized) {
    if (estimate.size() != realized.size()) throw InvalidInput("mse: length mismatch");
    if (estimate.empty()) throw InvalidInput("mse: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < estimate.size(); ++i) {
        const double d = estimate[i] - realized[i];
        acc += d * d;
    }
    return acc / static_cast<double>(estimate.size());
}

GofResult gof_test(const std::vector<double>& estimate, const std::vector<double>& realized,
                   GofDispersion dispersion, std::size_t min_obs) {
    if (estimate.size() != realized.size()) throw InvalidInput("gof_test: length mismatch");
    const std::size_t n = estimate.size();
    if (n < min_obs) {
        throw InvalidInput("gof_test: need at least " + std::to_string(min_obs) +
                           " observations for the asymptotic approximation");
    }

    if (dispersion == GofDispersion::estimator_mean && is_constant(estimate)) {
        throw InvalidInput("gof_test: constant estimator (zero dispersion)");
    }
    GofResult r;
    r.n = n;
    r.mse = mse(estimate, realized);
    r.delta_hat_sq = dispersion == GofDispersion::estimator_mean
                         ? sample_variance_about_mean(estimate)
                         : r.mse;
    if (!(r.delta_hat_sq > 0.0)) {
        throw InvalidInput("gof_test: constant estimator (zero dispersion)");
    }
    r.statistic = static_cast<double>(n) * r.mse / r.delta_hat_sq;
    r.p_value = chi2_sf(r.statistic, static_cast<double>(n));
    return r;
}

}  // namespace volest
