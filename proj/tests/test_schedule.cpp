#include <doctest.h>

#include "volest/errors.hpp"
#include "volest/schedule.hpp"

using namespace volest;

TEST_CASE("reference schedule: 3853 returns, monthly anchors") {
    const auto points =
        build_schedule(3853, 253, 20, WindowMode::rolling, 252, 21);
    REQUIRE(points.size() == 180);
    CHECK(points[0].index == 1);
    CHECK(points[0].anchor_day == 253);
    CHECK(points[0].estimation_window.first_day() == 1);
    CHECK(points[0].estimation_window.last_day() == 252);
    CHECK(points[0].realized_window.first_day() == 253);
    CHECK(points[0].realized_window.last_day() == 273);
    CHECK(points.back().anchor_day == 253 + 179 * 20);
    CHECK(points.back().realized_window.last_day() <= 3853);
}

TEST_CASE("a series that fits exactly one point") {
    const auto points = build_schedule(273, 253, 20, WindowMode::increasing, 252, 21);
    REQUIRE(points.size() == 1);
    CHECK(points[0].estimation_window.first_day() == 1);
    CHECK(points[0].estimation_window.last_day() == 252);
    CHECK(points[0].realized_window.last_day() == 273);
}

TEST_CASE("rolling and increasing agree at the first anchor when it equals T+1") {
    const auto rolling = build_schedule(400, 253, 20, WindowMode::rolling, 252, 21);
    const auto increasing = build_schedule(400, 253, 20, WindowMode::increasing, 252, 21);
    CHECK(rolling[0].estimation_window == increasing[0].estimation_window);
}

TEST_CASE("schedule errors") {
    CHECK_THROWS_WITH_AS(build_schedule(100, 253, 20, WindowMode::rolling, 252, 21),
                         doctest::Contains("insufficient data"), InvalidInput);
    CHECK_THROWS_AS(build_schedule(1000, 253, 0, WindowMode::rolling, 252, 21), InvalidInput);
    CHECK_THROWS_AS(build_schedule(1000, 253, 20, WindowMode::rolling, 1, 21), InvalidInput);
    // Rolling window poking out on the left is also "insufficient".
    CHECK_THROWS_AS(build_schedule(1000, 100, 20, WindowMode::rolling, 252, 21), InvalidInput);
}

TEST_CASE("windows tile the series with no gap and no overlap") {
    for (std::size_t step : {5, 20, 21, 40}) {
        for (std::size_t realized_len : {5, 21}) {
            const auto points =
                build_schedule(1200, 260, step, WindowMode::rolling, 252, realized_len);
            REQUIRE(!points.empty());
            for (std::size_t i = 0; i < points.size(); ++i) {
                const SchedulePoint& p = points[i];
                CHECK(p.anchor_day == 260 + (p.index - 1) * step);
                CHECK(p.estimation_window.end == p.realized_window.begin);
                CHECK(p.realized_window.first_day() == p.anchor_day);
                CHECK(p.realized_window.size() == realized_len);
                CHECK(p.realized_window.last_day() <= 1200);
            }
        }
    }
}

TEST_CASE("increasing windows grow with the anchor") {
    const auto points = build_schedule(800, 100, 30, WindowMode::increasing, 2, 21);
    for (std::size_t i = 1; i < points.size(); ++i) {
        CHECK(points[i].estimation_window.first_day() == 1);
        CHECK(points[i].estimation_window.size() >
              points[i - 1].estimation_window.size());
    }
}
