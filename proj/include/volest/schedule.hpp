// Monthly evaluation schedule: anchors, estimation windows, realized windows.
#pragma once

#include <cstddef>
#include <vector>

namespace volest {

/// Half-open range of 0-based indices into a return series.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;  // one past the last element

    std::size_t size() const { return end - begin; }
    /// 1-based inclusive bounds, the convention used in reports and tests.
    std::size_t first_day() const { return begin + 1; }
    std::size_t last_day() const { return end; }

    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

enum class WindowMode { rolling, increasing };

/// One evaluation point. The estimation window covers only data strictly
/// before the anchor day; the realized window starts at the anchor day and
/// immediately follows the estimation window with no gap.
struct SchedulePoint {
    std::size_t index = 0;       // 1-based evaluation counter
    std::size_t anchor_day = 0;  // 1-based trading-day offset into the series
    IndexRange estimation_window;
    IndexRange realized_window;
};

/// Estimation window implied by an anchor day and a window mode, as a
/// half-open 0-based range ending at anchor_day - 1 (1-based inclusive).
IndexRange estimation_window_for(std::size_t anchor_day, WindowMode mode,
                                 std::size_t rolling_window);

/// Build the maximal schedule whose windows fit in a series of length
/// series_len: anchors at first_anchor + (i-1)*step for i = 1, 2, ...
/// Rolling mode uses a trailing window of rolling_window returns; increasing
/// mode uses all returns before the anchor. The realized window spans
/// realized_len returns starting at the anchor day.
/// Throws InvalidInput("insufficient data...") when not even one point fits.
std::vector<SchedulePoint> build_schedule(std::size_t series_len, std::size_t first_anchor,
                                          std::size_t step, WindowMode mode,
                                          std::size_t rolling_window, std::size_t realized_len);

}  // namespace volest
