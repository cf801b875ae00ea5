#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "volest/errors.hpp"
#include "volest/ols.hpp"
#include "volest/rng.hpp"

using namespace volest;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace

TEST_CASE("exact line is recovered and flagged as a perfect fit") {
    std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> y;
    for (double v : x) y.push_back(1.0 + 2.0 * v);
    const OlsResult fit = ols_fit(design_with_intercept({&x}), y);
    CHECK(fit.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-12));
    for (double e : fit.residuals) CHECK(std::abs(e) < 1e-12);
    CHECK(fit.degenerate);
    CHECK(fit.f_stat == std::numeric_limits<double>::infinity());
    CHECK(fit.f_p_value == 0.0);
    CHECK(fit.r_squared == doctest::Approx(1.0));
}

TEST_CASE("constant response gives zero slope") {
    std::vector<double> x{0.3, -1.0, 2.0, 0.7, 1.4, -0.2};
    std::vector<double> y(x.size(), 4.5);
    const OlsResult fit = ols_fit(design_with_intercept({&x}), y);
    CHECK(fit.coefficients[0] == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(std::abs(fit.coefficients[1]) < 1e-12);
    CHECK(fit.degenerate);
}

TEST_CASE("five-point fit matches the normal-equation oracle") {
    const std::vector<double> x{0.5, 1.0, 2.0, 3.5, 5.0};
    const std::vector<double> y{1.1, 1.9, 3.2, 5.4, 6.9};
    const OlsResult fit = ols_fit(design_with_intercept({&x}), y);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < x.size(); ++i) rows.push_back({1.0, x[i]});
    const std::vector<double> beta = oracle::normal_equation_solve(rows, y);
    CHECK(std::abs(fit.coefficients[0] - beta[0]) < 1e-10);
    CHECK(std::abs(fit.coefficients[1] - beta[1]) < 1e-10);
}

TEST_CASE("residuals are orthogonal to every design column") {
    Rng rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 30 + static_cast<std::size_t>(rng.uniform() * 20);
        std::vector<double> x1(n), x2(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x1[i] = rng.normal();
            x2[i] = 0.4 * x1[i] + rng.normal();
            y[i] = 0.5 - 1.3 * x1[i] + 0.8 * x2[i] + 0.7 * rng.normal();
        }
        const Matrix design = design_with_intercept({&x1, &x2});
        const OlsResult fit = ols_fit(design, y);
        double scale = 0.0;
        for (double v : y) scale += v * v;
        for (std::size_t j = 0; j < design.cols(); ++j) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += design(i, j) * fit.residuals[i];
            CHECK(std::abs(dot) < 1e-8 * std::max(1.0, scale));
        }
        CHECK(fit.durbin_watson >= 0.0);
        CHECK(fit.durbin_watson <= 4.0);
        for (double p : fit.p_values) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("ols_fit rejects bad designs") {
    std::vector<double> x{1.0, 2.0, 3.0};
    std::vector<double> same = x;
    std::vector<double> y{1.0, 2.0, 3.0};
    // n <= p
    CHECK_THROWS_AS(ols_fit(from_rows({{1.0, 1.0}, {1.0, 2.0}}), {1.0, 2.0}), InvalidInput);
    // rank deficiency: duplicated column
    std::vector<double> y4{1.0, 2.0, 3.0, 4.0};
    std::vector<double> x4{1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(ols_fit(design_with_intercept({&x4, &x4}), y4), InvalidInput);
    // response length mismatch
    CHECK_THROWS_AS(ols_fit(design_with_intercept({&x}), y4), InvalidInput);
}
