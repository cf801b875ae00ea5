#include <doctest.h>

#include <cmath>
#include <vector>

#include "volest/errors.hpp"
#include "volest/series.hpp"

using namespace volest;

namespace {

std::vector<Date> sequential_dates(std::size_t n) {
    std::vector<Date> dates;
    Date d{2004, 1, 2};
    for (std::size_t i = 0; i < n; ++i) {
        dates.push_back(d);
        d = next_calendar_day(d);
    }
    return dates;
}

}  // namespace

TEST_CASE("compute_returns handles the basic cases") {
    const auto dates = sequential_dates(2);
    CHECK(compute_returns(dates, {100.0, 100.0}, ReturnKind::log).values[0] == 0.0);
    CHECK(compute_returns(dates, {100.0, 110.0}, ReturnKind::simple).values[0] ==
          doctest::Approx(0.10).epsilon(1e-14));
    // ln(1.1), frozen from an independent hand evaluation.
    CHECK(compute_returns(dates, {100.0, 110.0}, ReturnKind::log).values[0] ==
          doctest::Approx(0.0953101798043249).epsilon(1e-12));
}

TEST_CASE("compute_returns rejects bad input") {
    const auto dates = sequential_dates(3);
    CHECK_THROWS_AS(compute_returns(sequential_dates(1), {100.0}, ReturnKind::log), InvalidInput);
    CHECK_THROWS_AS(compute_returns(dates, {100.0, -3.0, 100.0}, ReturnKind::log), InvalidInput);
    CHECK_THROWS_AS(compute_returns(dates, {100.0, 0.0, 100.0}, ReturnKind::simple), InvalidInput);
    auto reversed = dates;
    std::swap(reversed[0], reversed[2]);
    CHECK_THROWS_AS(compute_returns(reversed, {1.0, 2.0, 3.0}, ReturnKind::log), InvalidInput);
}

TEST_CASE("log returns round-trip prices through cumulative exponentiation") {
    std::vector<double> prices{100.0};
    for (int i = 1; i <= 300; ++i) {
        prices.push_back(prices.back() * (1.0 + 0.01 * std::sin(0.7 * i) + 0.002 * (i % 5)));
    }
    const auto dates = sequential_dates(prices.size());
    const ReturnSeries r = compute_returns(dates, prices, ReturnKind::log);
    double level = prices.front();
    for (std::size_t i = 0; i < r.size(); ++i) {
        level *= std::exp(r.values[i]);
        CHECK(level == doctest::Approx(prices[i + 1]).epsilon(1e-12));
    }
}

TEST_CASE("date parsing and labels") {
    const Date d = parse_date("2005-01-03");
    CHECK(d.year == 2005);
    CHECK(period_label(d) == "2005.1");
    CHECK(to_iso_string(d) == "2005-01-03");
    CHECK(parse_date("2005/01/03") == d);
    CHECK_THROWS_AS(parse_date("2005-13-01"), DataError);
    CHECK_THROWS_AS(parse_date("2005-02-30"), DataError);
    CHECK_THROWS_AS(parse_date("20050203"), DataError);
    // Gregorian rules, including leap years.
    CHECK(next_calendar_day({2004, 2, 28}) == Date{2004, 2, 29});
    CHECK(next_calendar_day({2100, 2, 28}) == Date{2100, 3, 1});
    CHECK(next_calendar_day({2019, 12, 31}) == Date{2020, 1, 1});
}

TEST_CASE("ReturnSeries validation") {
    ReturnSeries s;
    s.dates = sequential_dates(3);
    s.values = {0.01, 0.02, -0.01};
    CHECK_NOTHROW(validate(s));
    s.values[1] = std::nan("");
    CHECK_THROWS_AS(validate(s), InvalidInput);
    s.values[1] = 0.0;
    s.dates[2] = s.dates[0];
    CHECK_THROWS_AS(validate(s), InvalidInput);
}
