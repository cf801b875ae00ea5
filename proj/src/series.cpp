#include "volest/series.hpp"

#include <charconv>
#include <cmath>

#include "volest/errors.hpp"

namespace volest {

namespace {

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return lengths[month - 1];
}

int parse_int_field(const std::string& text, std::size_t begin, std::size_t end) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end) {
        throw DataError("malformed date: '" + text + "'");
    }
    return value;
}

}  // namespace

Date parse_date(const std::string& text) {
    if (text.size() != 10 || (text[4] != '-' && text[4] != '/') || text[7] != text[4]) {
        throw DataError("malformed date: '" + text + "' (expected YYYY-MM-DD)");
    }
    Date d;
    d.year = parse_int_field(text, 0, 4);
    d.month = parse_int_field(text, 5, 7);
    d.day = parse_int_field(text, 8, 10);
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month)) {
        throw DataError("invalid calendar date: '" + text + "'");
    }
    return d;
}

std::string to_iso_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

Date next_calendar_day(const Date& d) {
    Date n = d;
    if (++n.day > days_in_month(n.year, n.month)) {
        n.day = 1;
        if (++n.month > 12) {
            n.month = 1;
            ++n.year;
        }
    }
    return n;
}

std::string period_label(const Date& d) {
    return std::to_string(d.year) + "." + std::to_string(d.month);
}

ReturnSeries compute_returns(const std::vector<Date>& dates,
                             const std::vector<double>& prices,
                             ReturnKind kind) {
    if (prices.size() < 2) throw InvalidInput("compute_returns: need at least two prices");
    if (dates.size() != prices.size()) {
        throw InvalidInput("compute_returns: dates and prices length mismatch");
    }
    ReturnSeries out;
    out.kind = kind;
    out.dates.reserve(prices.size() - 1);
    out.values.reserve(prices.size() - 1);
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !std::isfinite(prices[i])) {
            throw InvalidInput("compute_returns: prices must be strictly positive and finite");
        }
        if (i > 0 && !(dates[i - 1] < dates[i])) {
            throw InvalidInput("compute_returns: dates must be strictly increasing");
        }
    }
    for (std::size_t i = 1; i < prices.size(); ++i) {
        const double ratio = prices[i] / prices[i - 1];
        out.dates.push_back(dates[i]);
        out.values.push_back(kind == ReturnKind::log ? std::log(ratio) : ratio - 1.0);
    }
    return out;
}

void validate(const ReturnSeries& series) {
    if (series.dates.size() != series.values.size()) {
        throw InvalidInput("ReturnSeries: dates and values length mismatch");
    }
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (!std::isfinite(series.values[i])) {
            throw InvalidInput("ReturnSeries: values must be finite");
        }
        if (i > 0 && !(series.dates[i - 1] < series.dates[i])) {
            throw InvalidInput("ReturnSeries: dates must be strictly increasing");
        }
    }
}

void validate(const VolPoint& point) {
    if (!(point.realized >= 0.0) || !std::isfinite(point.realized)) {
        throw InvalidInput("VolPoint: realized volatility must be nonnegative and finite");
    }
    for (const auto& [id, vol] : point.estimates) {
        if (!(vol >= 0.0) || !std::isfinite(vol)) {
            throw InvalidInput("VolPoint: estimate '" + id +
                               "' must be nonnegative and finite");
        }
    }
}

}  // namespace volest
