// Dated series, daily returns, and calendar labels.
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace volest {

/// Calendar date carried as a label. No holiday or weekday arithmetic is done
/// anywhere; dates exist for alignment and for report labels.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    friend auto operator<=>(const Date&, const Date&) = default;
};

/// Parse "YYYY-MM-DD" or "YYYY/MM/DD". Throws DataError on malformed input.
Date parse_date(const std::string& text);

std::string to_iso_string(const Date& d);

/// Next calendar day (proper Gregorian rules). Used only to fabricate labels
/// for synthetic data.
Date next_calendar_day(const Date& d);

/// Period label in the style "2005.1" (year.month, no zero padding).
std::string period_label(const Date& d);

enum class ReturnKind { log, simple };

/// Dated daily returns, the substrate of all estimation.
struct ReturnSeries {
    std::vector<Date> dates;
    std::vector<double> values;
    ReturnKind kind = ReturnKind::log;

    std::size_t size() const { return values.size(); }
};

/// Annualization convention; 252 trading days per year unless configured.
struct AnnualizationConvention {
    int trading_days_per_year = 252;
};

/// One evaluation date: realized volatility plus every estimator's output,
/// keyed by estimator id.
struct VolPoint {
    std::size_t index = 0;  // 1-based evaluation counter
    double realized = 0.0;  // annualized, fraction per year
    std::map<std::string, double> estimates;
};

/// Daily returns from a strictly positive dated price series.
/// log kind: ln(P_t / P_{t-1}); simple kind: P_t / P_{t-1} - 1.
/// Throws InvalidInput on non-positive prices or fewer than two observations.
ReturnSeries compute_returns(const std::vector<Date>& dates,
                             const std::vector<double>& prices,
                             ReturnKind kind);

/// Validate the ReturnSeries invariants (dates strictly increasing, finite
/// values, equal lengths). Throws InvalidInput on violation.
void validate(const ReturnSeries& series);

/// Validate the VolPoint invariants: every volatility nonnegative and finite.
void validate(const VolPoint& point);

}  // namespace volest
