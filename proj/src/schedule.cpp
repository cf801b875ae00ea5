#include "volest/schedule.hpp"

#include "volest/errors.hpp"

namespace volest {

IndexRange estimation_window_for(std::size_t anchor_day, WindowMode mode,
                                 std::size_t rolling_window) {
    if (anchor_day < 2) throw InvalidInput("estimation window: anchor day must be >= 2");
    if (mode == WindowMode::rolling) {
        if (rolling_window < 2) throw InvalidInput("estimation window: rolling length must be >= 2");
        if (anchor_day <= rolling_window) {
            throw InvalidInput("estimation window: rolling window extends before the series start");
        }
        return IndexRange{anchor_day - 1 - rolling_window, anchor_day - 1};
    }
    return IndexRange{0, anchor_day - 1};
}

std::vector<SchedulePoint> build_schedule(std::size_t series_len, std::size_t first_anchor,
                                          std::size_t step, WindowMode mode,
                                          std::size_t rolling_window, std::size_t realized_len) {
    if (step == 0) throw InvalidInput("build_schedule: step must be positive");
    if (realized_len < 1) throw InvalidInput("build_schedule: realized window must be nonempty");
    if (first_anchor < 2) throw InvalidInput("build_schedule: first anchor must be >= 2");
    if (mode == WindowMode::rolling && rolling_window < 2) {
        throw InvalidInput("build_schedule: rolling window must be >= 2");
    }
    const bool first_fits =
        series_len + 1 >= first_anchor + realized_len &&
        (mode == WindowMode::increasing || first_anchor > rolling_window);
    if (!first_fits) {
        throw InvalidInput("build_schedule: insufficient data for even one evaluation point");
    }

    std::vector<SchedulePoint> points;
    for (std::size_t i = 1;; ++i) {
        const std::size_t anchor = first_anchor + (i - 1) * step;
        if (anchor + realized_len - 1 > series_len) break;
        SchedulePoint p;
        p.index = i;
        p.anchor_day = anchor;
        p.estimation_window = estimation_window_for(anchor, mode, rolling_window);
        p.realized_window = IndexRange{anchor - 1, anchor - 1 + realized_len};
        points.push_back(p);
    }
    return points;
}

}  // namespace volest
