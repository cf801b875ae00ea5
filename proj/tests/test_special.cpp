#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "volest/errors.hpp"
#include "volest/rng.hpp"
#include "volest/special.hpp"

using namespace volest;

TEST_CASE("norm_cdf basics and symmetry") {
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double x : {-3.7, -1.2, -0.1, 0.4, 1.7, 2.9, 6.0}) {
        CHECK(norm_cdf(x) + norm_cdf(-x) == doctest::Approx(1.0).epsilon(1e-14));
        if (x > 0.0) CHECK(norm_cdf(x) > norm_cdf(x - 0.5));
    }
}

TEST_CASE("norm_cdf agrees with quadrature of the density") {
    for (double x : {0.31, 1.0, 1.959964, 2.5, 4.0}) {
        CHECK(std::abs(norm_cdf(x) - oracle::norm_cdf_quadrature(x)) < 1e-12);
    }
    CHECK(norm_cdf(1.959964) == doctest::Approx(0.975000).epsilon(1e-6));
}

TEST_CASE("norm_ppf inverts norm_cdf") {
    for (double p : {1e-8, 0.025, 0.25, 0.5, 0.75, 0.975, 1.0 - 1e-8}) {
        CHECK(norm_cdf(norm_ppf(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK_THROWS_AS(norm_ppf(0.0), InvalidInput);
    CHECK_THROWS_AS(norm_ppf(1.0), InvalidInput);
}

TEST_CASE("chi2_sf closed forms") {
    CHECK(chi2_sf(0.0, 1.0) == 1.0);
    CHECK(chi2_sf(0.0, 180.0) == 1.0);
    // k = 2 is the exponential distribution.
    CHECK(chi2_sf(2.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(chi2_sf(-1.0, 2.0), InvalidInput);
    CHECK_THROWS_AS(chi2_sf(1.0, 0.0), InvalidInput);
}

TEST_CASE("chi2_sf(180, 180) matches a Monte Carlo tail frequency") {
    Rng rng(20240521);
    const int n = 1'000'000;
    int above = 0;
    for (int i = 0; i < n; ++i) {
        if (rng.chi_squared(180.0) > 180.0) ++above;
    }
    const double mc = static_cast<double>(above) / n;
    const double se = std::sqrt(mc * (1.0 - mc) / n);
    CHECK(std::abs(chi2_sf(180.0, 180.0) - mc) < 3.0 * se);
}

TEST_CASE("f_sf basics and the F-t identity") {
    CHECK(f_sf(0.0, 3, 10) == 1.0);
    for (double t : {0.3, 1.1, 2.2}) {
        for (double dof : {5.0, 30.0, 120.0}) {
            CHECK(std::abs(f_sf(t * t, 1.0, dof) - t_sf_two_sided(t, dof)) < 1e-10);
        }
    }
    CHECK_THROWS_AS(f_sf(1.0, 0.0, 10.0), InvalidInput);
}

TEST_CASE("f_sf(4.5122, 2, 120) matches a Monte Carlo oracle") {
    Rng rng(777);
    const int n = 400'000;
    int above = 0;
    for (int i = 0; i < n; ++i) {
        const double f = (rng.chi_squared(2.0) / 2.0) / (rng.chi_squared(120.0) / 120.0);
        if (f > 4.5122) ++above;
    }
    const double mc = static_cast<double>(above) / n;
    const double se = std::sqrt(mc * (1.0 - mc) / n);
    CHECK(std::abs(f_sf(4.5122, 2.0, 120.0) - mc) < 3.0 * se);
}

TEST_CASE("student_t_logpdf is symmetric and hits the normal limit") {
    CHECK(student_t_logpdf(1.3, 7.0) == student_t_logpdf(-1.3, 7.0));
    CHECK(std::abs(student_t_logpdf(0.0, 1e6) - (-0.918939)) < 5e-6);
    CHECK_THROWS_AS(student_t_logpdf(0.0, 2.0), InvalidInput);
}

TEST_CASE("student_t_logpdf matches a closed form with an independent log-gamma") {
    const double nu = 5.0;
    const double x = 1.0;
    const double s = std::sqrt(nu / (nu - 2.0));
    const double z = s * x;
    const double expected = std::log(s) + oracle::lgamma_lanczos(0.5 * (nu + 1.0)) -
                            oracle::lgamma_lanczos(0.5 * nu) -
                            0.5 * std::log(nu * 3.14159265358979323846) -
                            0.5 * (nu + 1.0) * std::log1p(z * z / nu);
    CHECK(std::abs(student_t_logpdf(x, nu) - expected) < 1e-10);
}

TEST_CASE("distribution tails are monotone and bounded") {
    double prev = 1.0;
    for (double x = 0.0; x <= 40.0; x += 0.5) {
        const double p = chi2_sf(x, 7.0);
        CHECK(p <= prev + 1e-15);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        prev = p;
    }
    prev = 1.0;
    for (double x = 0.0; x <= 20.0; x += 0.25) {
        const double p = f_sf(x, 3.0, 17.0);
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
}
