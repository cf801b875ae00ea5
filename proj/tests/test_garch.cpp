#include <doctest.h>

#include <cmath>
#include <vector>

#include "volest/errors.hpp"
#include "volest/garch.hpp"
#include "volest/historical.hpp"
#include "volest/rng.hpp"
#include "volest/simulate.hpp"
#include "volest/special.hpp"

using namespace volest;

TEST_CASE("parameter validation") {
    GarchParams p;
    CHECK_NOTHROW(validate(p));
    p.omega = 0.0;
    CHECK_THROWS_AS(validate(p), InvalidInput);
    p = {};
    p.alpha1 = 0.5;
    p.beta1 = 0.6;
    CHECK_THROWS_AS(validate(p), InvalidInput);  // persistence >= 1
    p = {};
    p.nu = 2.0;
    CHECK_THROWS_AS(validate(p), InvalidInput);
    CHECK_NOTHROW(validate(p, InnovationDist::gaussian));  // nu unused
}

TEST_CASE("filter degenerates to constant variance when all lags are zero") {
    GarchParams p;
    p.omega = 3e-5;
    p.alpha1 = p.alpha2 = p.beta1 = 0.0;
    p.nu = 8.0;
    Rng rng(3);
    std::vector<double> returns(50);
    for (double& r : returns) r = 0.01 * rng.normal();
    const auto filtered = garch_filter(p, returns);
    for (double v : filtered.variances) CHECK(v == doctest::Approx(3e-5).epsilon(1e-14));
}

TEST_CASE("one recursion step: direct arithmetic") {
    GarchParams p;
    p.omega = 0.1;
    p.alpha1 = 0.2;
    p.alpha2 = 0.1;
    p.beta1 = 0.5;
    p.nu = 8.0;
    GarchState state;
    state.last_variance = 2.0;
    state.last_two_sq_innovations = {1.0, 4.0};
    CHECK(garch_recursion_step(p, state) == doctest::Approx(1.7).epsilon(1e-15));
    // Composition with annualization.
    CHECK(garch_forecast_annualized(p, state) ==
          doctest::Approx(std::sqrt(252.0 * 1.7)).epsilon(1e-15));
}

TEST_CASE("forecast with zero lags is independent of state") {
    GarchParams p;
    p.omega = 4e-5;
    p.alpha1 = p.alpha2 = p.beta1 = 0.0;
    GarchState a{1.0, {2.0, 3.0}};
    GarchState b{9.0, {0.0, 0.5}};
    CHECK(garch_forecast_annualized(p, a) == garch_forecast_annualized(p, b));
    CHECK(garch_forecast_annualized(p, a) ==
          doctest::Approx(std::sqrt(252.0 * 4e-5)).epsilon(1e-15));
}

TEST_CASE("filter matches an independently coded recursion loop") {
    GarchParams p;
    p.mu = 0.0003;
    p.omega = 2e-6;
    p.alpha1 = 0.07;
    p.alpha2 = 0.03;
    p.beta1 = 0.85;
    p.nu = 6.0;
    const std::vector<double> returns{0.004, -0.011, 0.002, 0.007, -0.003,
                                      0.009, -0.006, 0.001, 0.013, -0.002};
    const auto filtered = garch_filter(p, returns);

    // Duplicate recursion, written out longhand.
    const std::size_t n = returns.size();
    double presample = 0.0;
    for (double r : returns) presample += (r - p.mu) * (r - p.mu);
    presample /= static_cast<double>(n);
    std::vector<double> expected(n);
    expected[0] = p.omega / (1.0 - p.alpha1 - p.alpha2 - p.beta1);
    for (std::size_t t = 1; t < n; ++t) {
        const double e1 = returns[t - 1] - p.mu;
        const double e2sq =
            t >= 2 ? (returns[t - 2] - p.mu) * (returns[t - 2] - p.mu) : presample;
        expected[t] = p.omega + p.alpha1 * e1 * e1 + p.alpha2 * e2sq + p.beta1 * expected[t - 1];
    }
    for (std::size_t t = 0; t < n; ++t) {
        CHECK(filtered.variances[t] == doctest::Approx(expected[t]).epsilon(1e-14));
        CHECK(filtered.variances[t] > 0.0);
    }
    // Approx rather than ==: the duplicate loop lives in another translation
    // unit, where the compiler may contract the recursion into FMAs.
    CHECK(filtered.state.last_variance == doctest::Approx(expected[n - 1]).epsilon(1e-14));
    CHECK(filtered.state.last_two_sq_innovations[0] ==
          doctest::Approx((returns[n - 1] - p.mu) * (returns[n - 1] - p.mu)).epsilon(1e-14));
}

TEST_CASE("log-likelihood reduces to iid Student-t when lags vanish") {
    GarchParams p;
    p.mu = 0.0;
    p.omega = 1e-4;
    p.alpha1 = p.alpha2 = p.beta1 = 0.0;
    p.nu = 7.0;
    Rng rng(5);
    std::vector<double> returns(200);
    for (double& r : returns) r = 0.01 * rng.normal();

    const double ll = garch_loglik(p, returns);
    const double sigma = std::sqrt(1e-4);
    double expected = 0.0;
    for (double r : returns) {
        expected += student_t_logpdf(r / sigma, p.nu) - std::log(sigma);
    }
    CHECK(ll == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("log-likelihood equals a direct summation oracle") {
    GarchParams p;
    p.mu = 0.0002;
    p.omega = 3e-6;
    p.alpha1 = 0.06;
    p.alpha2 = 0.04;
    p.beta1 = 0.82;
    p.nu = 9.0;
    const auto returns = simulate_garch_returns(p, 300, 21);
    const auto filtered = garch_filter(p, returns);
    double expected = 0.0;
    for (std::size_t t = 0; t < returns.size(); ++t) {
        const double sigma = std::sqrt(filtered.variances[t]);
        expected += student_t_logpdf((returns[t] - p.mu) / sigma, p.nu) - std::log(sigma);
    }
    CHECK(garch_loglik(p, returns) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("Student-t likelihood approaches the Gaussian one as nu grows") {
    GarchParams p;
    p.omega = 2e-6;
    p.alpha1 = 0.08;
    p.alpha2 = 0.02;
    p.beta1 = 0.85;
    p.nu = 1e6;
    const auto returns = simulate_garch_returns(p, 500, 33, InnovationDist::gaussian);
    const double ll_t = garch_loglik(p, returns, InnovationDist::student_t);
    const double ll_g = garch_loglik(p, returns, InnovationDist::gaussian);
    CHECK(std::abs(ll_t - ll_g) / static_cast<double>(returns.size()) < 1e-4);
}

TEST_CASE("fit recovers simulated parameters within asymptotic uncertainty") {
    GarchParams truth;
    truth.mu = 0.0;
    truth.omega = 2e-6;
    truth.alpha1 = 0.08;
    truth.alpha2 = 0.02;
    truth.beta1 = 0.85;
    truth.nu = 8.0;
    const auto returns = simulate_garch_returns(truth, 10000, 1234);
    GarchFitOptions options;
    options.seed = 55;
    const GarchFit fit = garch_fit(returns, options);
    CHECK(fit.report.converged);

    const auto se = garch_std_errors(fit.params, returns);
    const double truths[] = {truth.mu, truth.omega, truth.alpha1, truth.alpha2, truth.beta1,
                             truth.nu};
    const double fitted[] = {fit.params.mu, fit.params.omega, fit.params.alpha1,
                             fit.params.alpha2, fit.params.beta1, fit.params.nu};
    for (int i = 0; i < 6; ++i) {
        REQUIRE(std::isfinite(se[i]));
        CHECK(std::abs(fitted[i] - truths[i]) < 3.0 * se[i]);
    }
}

TEST_CASE("fit on iid Gaussian data finds small alphas and the sample variance") {
    Rng rng(404);
    std::vector<double> returns(6000);
    double acc = 0.0;
    for (double& r : returns) {
        r = 0.01 * rng.normal();
        acc += r * r;
    }
    const double sample_var = acc / static_cast<double>(returns.size());
    GarchFitOptions options;
    options.dist = InnovationDist::gaussian;
    options.seed = 2;
    const GarchFit fit = garch_fit(returns, options);
    CHECK(fit.params.alpha1 + fit.params.alpha2 < 0.05);
    CHECK(fit.params.unconditional_variance() ==
          doctest::Approx(sample_var).epsilon(0.05));
}

TEST_CASE("the fitted optimum is a fixed point of the optimizer") {
    GarchParams truth;
    truth.omega = 4e-6;
    truth.alpha1 = 0.10;
    truth.alpha2 = 0.05;
    truth.beta1 = 0.80;
    truth.nu = 7.0;
    const auto returns = simulate_garch_returns(truth, 3000, 77);
    GarchFitOptions options;
    options.seed = 3;
    const GarchFit first = garch_fit(returns, options);

    GarchFitOptions warm;
    warm.start = first.params;
    warm.restarts = 0;
    warm.seed = 4;
    const GarchFit second = garch_fit(returns, warm);
    CHECK(std::abs(second.report.loglik - first.report.loglik) < 1e-6);
}

TEST_CASE("fitted optimum beats random admissible parameter draws") {
    GarchParams truth;
    truth.omega = 2e-6;
    truth.alpha1 = 0.08;
    truth.alpha2 = 0.02;
    truth.beta1 = 0.85;
    truth.nu = 8.0;
    const auto returns = simulate_garch_returns(truth, 2000, 909);
    GarchFitOptions options;
    options.seed = 5;
    const GarchFit fit = garch_fit(returns, options);

    Rng rng(31);
    double var = 0.0, mean = 0.0;
    for (double r : returns) mean += r;
    mean /= static_cast<double>(returns.size());
    for (double r : returns) var += (r - mean) * (r - mean);
    var /= static_cast<double>(returns.size() - 1);
    for (int draw = 0; draw < 100; ++draw) {
        GarchParams p;
        const double persistence = 0.98 * rng.uniform();
        const double arch_share = rng.uniform();
        const double a1_share = rng.uniform();
        p.mu = mean + 0.001 * rng.normal();
        p.alpha1 = persistence * arch_share * a1_share;
        p.alpha2 = persistence * arch_share * (1.0 - a1_share);
        p.beta1 = persistence * (1.0 - arch_share);
        p.omega = var * (1.0 - persistence) * (0.25 + 1.5 * rng.uniform());
        p.nu = 2.5 + 20.0 * rng.uniform();
        CHECK(garch_loglik(p, returns) <= fit.report.loglik + 1e-9);
    }
}

TEST_CASE("fit input validation") {
    CHECK_THROWS_AS(garch_fit(std::vector<double>(10, 0.01)), InvalidInput);
    CHECK_THROWS_AS(garch_fit(std::vector<double>(300, 0.01)), InvalidInput);  // constant
}

TEST_CASE("cap rule: examples and scaling equivariance") {
    // A raw forecast above twice the previous realized value is clamped.
    CHECK(cap_forecast(0.5908, 0.12355) == doctest::Approx(0.2471).epsilon(1e-15));
    // Below the cap: unchanged.
    CHECK(cap_forecast(0.10, 0.08) == 0.10);
    // Exactly at the cap: unchanged.
    CHECK(cap_forecast(0.16, 0.08) == 0.16);
    CHECK_THROWS_AS(cap_forecast(-0.1, 0.2), InvalidInput);

    Rng rng(66);
    for (int i = 0; i < 500; ++i) {
        const double f = rng.uniform();
        const double prev = rng.uniform();
        const double capped = cap_forecast(f, prev);
        CHECK(capped == std::min(f, 2.0 * prev));
        CHECK(cap_forecast(capped, prev) == capped);  // idempotent
        for (const double c : {2.0, 0.25, 8.0}) {
            CHECK(cap_forecast(c * f, c * prev) == c * capped);
        }
    }
}

TEST_CASE("run_garch: rolling and increasing agree on constant-volatility data") {
    GarchParams flat;
    flat.omega = 1e-4;
    flat.alpha1 = flat.alpha2 = flat.beta1 = 0.0;
    flat.nu = 50.0;
    const auto values = simulate_garch_returns(flat, 5000, 2024);
    ReturnSeries series;
    series.values = values;
    Date d{2004, 1, 2};
    for (std::size_t i = 0; i < values.size(); ++i) {
        series.dates.push_back(d);
        d = next_calendar_day(d);
    }
    const auto schedule = build_schedule(series.size(), 2000, 600, WindowMode::rolling, 1999, 21);
    GarchFitOptions options;
    options.restarts = 1;
    options.seed = 9;
    const auto rolling = run_garch(series, schedule, WindowMode::rolling, 1999, options);
    const auto increasing = run_garch(series, schedule, WindowMode::increasing, 1999, options);
    REQUIRE(rolling.estimates.size() == increasing.estimates.size());
    for (std::size_t i = 0; i < rolling.estimates.size(); ++i) {
        REQUIRE(rolling.estimates[i].second.has_value());
        REQUIRE(increasing.estimates[i].second.has_value());
        const double r = *rolling.estimates[i].second;
        const double g = *increasing.estimates[i].second;
        CHECK(std::abs(r - g) / g < 0.10);
    }
}

TEST_CASE("run_garch caps the first point against its own realized value") {
    // Estimation window with high volatility, forward windows with almost
    // none: every raw forecast exceeds its cap, so each estimate equals twice
    // the realized value of the reference point. The first point references
    // itself, replicating the reference backtest's look-ahead.
    Rng rng(808);
    std::vector<double> values(400);
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = (i < 252 ? 0.03 : 0.0005) * rng.normal();
    }
    ReturnSeries series;
    series.values = values;
    Date d{2004, 1, 2};
    for (std::size_t i = 0; i < values.size(); ++i) {
        series.dates.push_back(d);
        d = next_calendar_day(d);
    }
    const auto schedule = build_schedule(series.size(), 253, 40, WindowMode::rolling, 252, 21);
    REQUIRE(schedule.size() >= 2);
    GarchFitOptions options;
    options.restarts = 1;
    options.seed = 44;
    const auto run = run_garch(series, schedule, WindowMode::rolling, 252, options);
    REQUIRE(run.estimates[0].second.has_value());
    REQUIRE(run.estimates[1].second.has_value());
    CHECK(*run.estimates[0].second ==
          doctest::Approx(2.0 * realized_vol(schedule[0], series)).epsilon(1e-12));
    // Later points cap against the previous point's realized value.
    CHECK(*run.estimates[1].second <= 2.0 * realized_vol(schedule[0], series) * (1.0 + 1e-12));
}

TEST_CASE("run_garch has no lookahead in the fit window") {
    GarchParams truth;
    truth.omega = 2e-6;
    truth.alpha1 = 0.08;
    truth.alpha2 = 0.02;
    truth.beta1 = 0.85;
    truth.nu = 8.0;
    const auto values = simulate_garch_returns(truth, 700, 515);
    ReturnSeries series;
    series.values = values;
    Date d{2004, 1, 2};
    for (std::size_t i = 0; i < values.size(); ++i) {
        series.dates.push_back(d);
        d = next_calendar_day(d);
    }
    const auto schedule = build_schedule(series.size(), 253, 200, WindowMode::rolling, 252, 21);
    REQUIRE(schedule.size() >= 2);
    GarchFitOptions options;
    options.restarts = 1;
    options.seed = 77;

    const auto before = run_garch(series, schedule, WindowMode::rolling, 252, options);
    // Perturb from the last anchor day onward: the fit window and the cap
    // reference (the PREVIOUS point's realized window) both predate the change.
    auto bumped = series;
    const std::size_t last_anchor = schedule.back().anchor_day;
    for (std::size_t i = last_anchor - 1; i < bumped.values.size(); ++i) bumped.values[i] *= 3.0;
    const auto after = run_garch(bumped, schedule, WindowMode::rolling, 252, options);
    const std::size_t last = schedule.size() - 1;
    CHECK(*before.estimates[last].second == *after.estimates[last].second);

    // Perturbing inside the estimation window must move the estimate.
    auto shifted = series;
    for (std::size_t i = 0; i < 100; ++i) shifted.values[i] *= 3.0;
    const auto moved = run_garch(shifted, schedule, WindowMode::rolling, 252, options);
    CHECK(*moved.estimates[0].second != *before.estimates[0].second);
}
