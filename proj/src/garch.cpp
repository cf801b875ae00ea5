#include "volest/garch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "volest/historical.hpp"
#include "volest/linalg.hpp"
#include "volest/nelder_mead.hpp"
#include "volest/rng.hpp"
#include "volest/special.hpp"

namespace volest {

namespace {

constexpr double kPenalty = 1e50;

double sigmoid(double x) {
    x = std::clamp(x, -40.0, 40.0);
    return 1.0 / (1.0 + std::exp(-x));
}

double logit(double p) {
    p = std::clamp(p, 1e-12, 1.0 - 1e-12);
    return std::log(p / (1.0 - p));
}

// Unconstrained coordinates: mu, log omega, then a stick-breaking split of the
// stationarity mass (total persistence p, ARCH share q, alpha1 share r), and
// log(nu - 2) for Student-t.
std::vector<double> params_to_theta(const GarchParams& g, InnovationDist dist) {
    const double p = std::clamp(g.persistence(), 1e-10, 1.0 - 1e-10);
    const double arch = g.alpha1 + g.alpha2;
    const double q = arch > 0.0 ? arch / p : 1e-6;
    const double r = arch > 0.0 ? g.alpha1 / arch : 0.5;
    std::vector<double> theta{g.mu, std::log(g.omega), logit(p), logit(q), logit(r)};
    if (dist == InnovationDist::student_t) theta.push_back(std::log(g.nu - 2.0));
    return theta;
}

GarchParams theta_to_params(const std::vector<double>& theta, InnovationDist dist) {
    GarchParams g;
    g.mu = theta[0];
    g.omega = std::exp(std::clamp(theta[1], -60.0, 60.0));
    const double p = sigmoid(theta[2]);
    const double q = sigmoid(theta[3]);
    const double r = sigmoid(theta[4]);
    g.alpha1 = p * q * r;
    g.alpha2 = p * q * (1.0 - r);
    g.beta1 = p * (1.0 - q);
    g.nu = dist == InnovationDist::student_t ? 2.0 + std::exp(std::clamp(theta[5], -20.0, 20.0))
                                             : 0.0;
    return g;
}

double sample_mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
    const double m = sample_mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

}  // namespace

void validate(const GarchParams& params, InnovationDist dist) {
    if (!(params.omega > 0.0) || !std::isfinite(params.omega)) {
        throw InvalidInput("GarchParams: omega must be positive");
    }
    if (params.alpha1 < 0.0 || params.alpha2 < 0.0 || params.beta1 < 0.0) {
        throw InvalidInput("GarchParams: lag coefficients must be nonnegative");
    }
    if (!(params.persistence() < 1.0)) {
        throw InvalidInput("GarchParams: alpha1 + alpha2 + beta1 must be < 1");
    }
    if (dist == InnovationDist::student_t && !(params.nu > 2.0)) {
        throw InvalidInput("GarchParams: nu must exceed 2");
    }
    if (!std::isfinite(params.mu)) throw InvalidInput("GarchParams: mu must be finite");
}

double garch_recursion_step(const GarchParams& params, const GarchState& state) {
    return params.omega + params.alpha1 * state.last_two_sq_innovations[0] +
           params.alpha2 * state.last_two_sq_innovations[1] +
           params.beta1 * state.last_variance;
}

GarchFilterResult garch_filter(const GarchParams& params, std::span<const double> returns) {
    validate(params, InnovationDist::gaussian);  // nu not needed for filtering
    const std::size_t n = returns.size();
    if (n < 3) throw InvalidInput("garch_filter: need at least 3 returns");

    GarchFilterResult out;
    out.variances.resize(n);

    double eps2_pre = 0.0;
    for (double r : returns) {
        const double e = r - params.mu;
        eps2_pre += e * e;
    }
    eps2_pre /= static_cast<double>(n);

    out.variances[0] = params.unconditional_variance();
    for (std::size_t t = 1; t < n; ++t) {
        const double e1 = returns[t - 1] - params.mu;
        const double e2_sq = t >= 2 ? (returns[t - 2] - params.mu) * (returns[t - 2] - params.mu)
                                    : eps2_pre;
        out.variances[t] = params.omega + params.alpha1 * e1 * e1 + params.alpha2 * e2_sq +
                           params.beta1 * out.variances[t - 1];
    }

    const double en = returns[n - 1] - params.mu;
    const double en1 = returns[n - 2] - params.mu;
    out.state.last_variance = out.variances[n - 1];
    out.state.last_two_sq_innovations = {en * en, en1 * en1};
    return out;
}

double garch_loglik(const GarchParams& params, std::span<const double> returns,
                    InnovationDist dist) {
    validate(params, dist);
    const GarchFilterResult filtered = garch_filter(params, returns);

    double ll = 0.0;
    if (dist == InnovationDist::student_t) {
        // Hoist the nu-dependent constants out of the loop.
        const double nu = params.nu;
        const double s = std::sqrt(nu / (nu - 2.0));
        const double log_norm = std::log(s) + std::lgamma(0.5 * (nu + 1.0)) -
                                std::lgamma(0.5 * nu) -
                                0.5 * std::log(nu * 3.14159265358979323846);
        const double half_nu1 = 0.5 * (nu + 1.0);
        for (std::size_t t = 0; t < returns.size(); ++t) {
            const double var = filtered.variances[t];
            const double eps = returns[t] - params.mu;
            const double z2 = eps * eps / var;
            ll += log_norm - half_nu1 * std::log1p(s * s * z2 / nu) - 0.5 * std::log(var);
        }
    } else {
        constexpr double kLog2Pi = 1.8378770664093453;
        for (std::size_t t = 0; t < returns.size(); ++t) {
            const double var = filtered.variances[t];
            const double eps = returns[t] - params.mu;
            ll += -0.5 * (kLog2Pi + eps * eps / var) - 0.5 * std::log(var);
        }
    }
    return ll;
}

GarchFit garch_fit(std::span<const double> returns, const GarchFitOptions& options) {
    const std::size_t n = returns.size();
    if (n < options.min_obs) {
        throw InvalidInput("garch_fit: need at least " + std::to_string(options.min_obs) +
                           " observations");
    }
    bool constant = true;
    for (double r : returns) constant = constant && r == returns.front();
    if (constant) throw InvalidInput("garch_fit: constant return series");
    const double var = sample_variance(returns);
    if (!(var > 0.0)) throw InvalidInput("garch_fit: constant return series");

    const InnovationDist dist = options.dist;
    auto objective = [&](const std::vector<double>& theta) {
        for (double v : theta) {
            if (!std::isfinite(v)) return kPenalty;
        }
        const GarchParams g = theta_to_params(theta, dist);
        if (!(g.omega > 0.0) || !(g.persistence() < 1.0)) return kPenalty;
        const double ll = garch_loglik(g, returns, dist);
        return std::isfinite(ll) ? -ll : kPenalty;
    };

    GarchParams start;
    if (options.start) {
        start = *options.start;
        validate(start, dist);
    } else {
        start.mu = sample_mean(returns);
        start.alpha1 = 0.063;
        start.alpha2 = 0.027;
        start.beta1 = 0.81;
        start.omega = var * (1.0 - start.persistence());  // variance targeting
        start.nu = 8.0;
    }
    const std::vector<double> theta0 = params_to_theta(start, dist);

    NelderMeadOptions nm;
    nm.f_tol = options.f_tol;
    nm.x_tol = 1e-10;
    nm.max_iters = options.max_iters;
    nm.initial_step = 0.25;

    Rng rng = Rng::for_stream(options.seed, 0x6a7c);
    NelderMeadResult best;
    best.value = std::numeric_limits<double>::infinity();
    std::size_t total_iters = 0;
    bool any_converged = false;
    for (std::size_t run = 0; run <= options.restarts; ++run) {
        std::vector<double> x0 = theta0;
        if (run > 0) {
            for (double& v : x0) v += 0.5 * rng.normal();
        }
        const NelderMeadResult res = nelder_mead(objective, x0, nm);
        total_iters += res.iterations;
        if (res.value < best.value) best = res;
        any_converged = any_converged || res.converged;
    }
    // Polish from the incumbent with a small simplex.
    {
        NelderMeadOptions polish = nm;
        polish.initial_step = 0.02;
        const NelderMeadResult res = nelder_mead(objective, best.x, polish);
        total_iters += res.iterations;
        if (res.value < best.value) best = res;
        any_converged = any_converged || res.converged;
    }

    GarchFit fit;
    fit.params = theta_to_params(best.x, dist);
    if (dist == InnovationDist::gaussian) fit.params.nu = 0.0;
    fit.report.converged = any_converged && best.value < kPenalty;
    fit.report.loglik = -best.value;
    fit.report.iterations = total_iters;
    fit.report.restarts_used = options.restarts;
    if (!fit.report.converged) {
        throw GarchFitError("garch_fit: simplex search did not converge", fit.params,
                            fit.report.loglik);
    }
    return fit;
}

std::vector<double> garch_std_errors(const GarchParams& params, std::span<const double> returns,
                                     InnovationDist dist) {
    validate(params, dist);
    const std::size_t p = dist == InnovationDist::student_t ? 6 : 5;
    std::vector<double> theta{params.mu, params.omega, params.alpha1, params.alpha2,
                              params.beta1};
    if (p == 6) theta.push_back(params.nu);

    auto neg_ll = [&](const std::vector<double>& th) {
        GarchParams g;
        g.mu = th[0];
        g.omega = th[1];
        g.alpha1 = th[2];
        g.alpha2 = th[3];
        g.beta1 = th[4];
        g.nu = p == 6 ? th[5] : 0.0;
        // Tolerate tiny negative excursions from differencing at a boundary.
        g.alpha1 = std::max(g.alpha1, 0.0);
        g.alpha2 = std::max(g.alpha2, 0.0);
        g.beta1 = std::max(g.beta1, 0.0);
        return -garch_loglik(g, returns, dist);
    };

    const std::vector<double> typical{1e-3, 1e-6, 0.01, 0.01, 0.01, 1.0};
    std::vector<double> h(p);
    for (std::size_t i = 0; i < p; ++i) {
        h[i] = 1.2e-4 * std::max(std::abs(theta[i]), typical[i]);
    }

    Matrix hess(p, p, 0.0);
    const double f0 = neg_ll(theta);
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<double> tp = theta;
        std::vector<double> tm = theta;
        tp[i] += h[i];
        tm[i] -= h[i];
        hess(i, i) = (neg_ll(tp) - 2.0 * f0 + neg_ll(tm)) / (h[i] * h[i]);
        for (std::size_t j = i + 1; j < p; ++j) {
            std::vector<double> tpp = theta, tpm = theta, tmp = theta, tmm = theta;
            tpp[i] += h[i]; tpp[j] += h[j];
            tpm[i] += h[i]; tpm[j] -= h[j];
            tmp[i] -= h[i]; tmp[j] += h[j];
            tmm[i] -= h[i]; tmm[j] -= h[j];
            const double v =
                (neg_ll(tpp) - neg_ll(tpm) - neg_ll(tmp) + neg_ll(tmm)) / (4.0 * h[i] * h[j]);
            hess(i, j) = v;
            hess(j, i) = v;
        }
    }

    std::vector<double> se(p, std::numeric_limits<double>::quiet_NaN());
    if (invert_in_place(hess)) {
        for (std::size_t i = 0; i < p; ++i) {
            if (hess(i, i) > 0.0) se[i] = std::sqrt(hess(i, i));
        }
    }
    return se;
}

double garch_forecast_annualized(const GarchParams& params, const GarchState& state,
                                 AnnualizationConvention annualization) {
    if (state.last_variance < 0.0 || state.last_two_sq_innovations[0] < 0.0 ||
        state.last_two_sq_innovations[1] < 0.0) {
        throw InvalidInput("garch_forecast_annualized: state must be nonnegative");
    }
    const double var_next = garch_recursion_step(params, state);
    return std::sqrt(static_cast<double>(annualization.trading_days_per_year) * var_next);
}

double cap_forecast(double forecast, double prev_realized) {
    if (forecast < 0.0 || prev_realized < 0.0) {
        throw InvalidInput("cap_forecast: volatilities must be nonnegative");
    }
    return std::min(forecast, 2.0 * prev_realized);
}

GarchRunResult run_garch(const ReturnSeries& returns, const std::vector<SchedulePoint>& schedule,
                         WindowMode mode, std::size_t rolling_window,
                         const GarchFitOptions& options, AnnualizationConvention annualization,
                         std::size_t threads) {
    GarchRunResult out;
    out.estimates.resize(schedule.size());
    std::vector<std::string> point_warnings(schedule.size());

    // Realized volatilities feed the cap rule; the first point caps against
    // its own realized value, mirroring the reference backtest.
    std::vector<double> realized(schedule.size());
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        realized[i] = realized_vol(schedule[i], returns, annualization);
    }

    auto fit_point = [&](std::size_t i) {
        const SchedulePoint& point = schedule[i];
        out.estimates[i].first = point.index;
        try {
            const IndexRange w = estimation_window_for(point.anchor_day, mode, rolling_window);
            if (w.end > returns.size()) {
                throw InvalidInput("estimation window outside the series");
            }
            const std::span<const double> window(returns.values.data() + w.begin, w.size());
            GarchFitOptions opts = options;
            opts.seed = options.seed ^ (0x9e3779b97f4a7c15ULL * point.index);
            const GarchFit fit = garch_fit(window, opts);
            const GarchFilterResult filtered = garch_filter(fit.params, window);
            const double forecast =
                garch_forecast_annualized(fit.params, filtered.state, annualization);
            const double cap_ref = i == 0 ? realized[0] : realized[i - 1];
            out.estimates[i].second = cap_forecast(forecast, cap_ref);
        } catch (const std::exception& e) {
            point_warnings[i] = "garch point " + std::to_string(point.index) + ": " + e.what();
        }
    };

    std::size_t n_threads = threads == 0 ? std::thread::hardware_concurrency() : threads;
    n_threads = std::max<std::size_t>(1, std::min(n_threads, schedule.size()));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < schedule.size(); ++i) fit_point(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t i = t; i < schedule.size(); i += n_threads) fit_point(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    for (const std::string& w : point_warnings) {
        if (!w.empty()) out.warnings.push_back(w);
    }
    return out;
}

}  // namespace volest
