#include <doctest.h>

#include <cmath>
#include <vector>

#include "volest/diagnostics.hpp"
#include "volest/errors.hpp"
#include "volest/garch.hpp"
#include "volest/ols.hpp"
#include "volest/rng.hpp"
#include "volest/simulate.hpp"

using namespace volest;

TEST_CASE("arch_lm rejects strongly on GARCH data") {
    GarchParams params;
    params.omega = 2e-6;
    params.alpha1 = 0.25;
    params.alpha2 = 0.05;
    params.beta1 = 0.55;
    params.nu = 8.0;
    const auto returns = simulate_garch_returns(params, 4000, 11);
    const TestResult r = arch_lm_test(returns, 1);
    CHECK(r.p_value < 0.001);
    CHECK(*r.aux_p_value < 0.001);
}

TEST_CASE("arch_lm chi-squared form equals n_aux * R^2 of the auxiliary regression") {
    Rng rng(5);
    std::vector<double> e(400);
    for (double& v : e) v = rng.normal() * (1.0 + 0.3 * rng.uniform());
    const std::size_t q = 3;
    const TestResult r = arch_lm_test(e, q);

    std::vector<double> sq(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) sq[i] = e[i] * e[i];
    const std::size_t n_aux = e.size() - q;
    Matrix design(n_aux, q + 1, 0.0);
    std::vector<double> resp(n_aux);
    for (std::size_t t = 0; t < n_aux; ++t) {
        design(t, 0) = 1.0;
        for (std::size_t j = 1; j <= q; ++j) design(t, j) = sq[q + t - j];
        resp[t] = sq[q + t];
    }
    const OlsResult aux = ols_fit(design, resp);
    CHECK(*r.aux_statistic ==
          doctest::Approx(static_cast<double>(n_aux) * aux.r_squared).epsilon(1e-12));
}

TEST_CASE("arch_lm size on iid normal data is near the nominal 5%") {
    int rejections = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::for_stream(424242, static_cast<std::uint64_t>(t));
        std::vector<double> e(1000);
        for (double& v : e) v = rng.normal();
        if (arch_lm_test(e, 1).p_value < 0.05) ++rejections;
    }
    // Binomial(200, 0.05): mean 10, sd ~3.1.
    CHECK(rejections >= 3);
    CHECK(rejections <= 19);
}

TEST_CASE("arch_lm_test edge cases") {
    CHECK_THROWS_WITH_AS(arch_lm_test(std::vector<double>(50, 0.7), 1),
                         doctest::Contains("degenerate"), InvalidInput);
    CHECK_THROWS_AS(arch_lm_test({0.1, 0.2}, 1), InvalidInput);
    CHECK_THROWS_AS(arch_lm_test({0.1, 0.2, 0.3, 0.4}, 0), InvalidInput);
}

TEST_CASE("adf rejects iid noise and keeps random walks") {
    int walk_kept = 0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
        Rng rng = Rng::for_stream(31337, static_cast<std::uint64_t>(s));
        std::vector<double> noise(5000), walk(5000);
        double acc = 0.0;
        for (std::size_t i = 0; i < noise.size(); ++i) {
            noise[i] = rng.normal();
            acc += noise[i];
            walk[i] = acc;
        }
        CHECK(adf_test(noise, 1).p_value < 0.01);
        if (adf_test(walk, 1).p_value > 0.05) ++walk_kept;
    }
    CHECK(walk_kept >= seeds * 8 / 10);
}

TEST_CASE("adf_test input validation") {
    CHECK_THROWS_AS(adf_test({1.0, 2.0, 3.0}, 1), InvalidInput);
}
