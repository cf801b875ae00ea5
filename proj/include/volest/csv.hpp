// Strict CSV ingestion and byte-stable numeric formatting.
#pragma once

#include <string>
#include <vector>

#include "volest/option_chain.hpp"
#include "volest/series.hpp"

namespace volest {

struct DatedSeries {
    std::vector<Date> dates;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// Split one CSV line on commas. Quoting is not supported; the formats here
/// never need it.
std::vector<std::string> split_csv_line(const std::string& line);

/// Load a two-column dated series by header names. Rows are sorted by date;
/// duplicate dates and malformed rows raise DataError carrying the 1-based
/// line number.
DatedSeries load_series_csv(const std::string& path, const std::string& date_column,
                            const std::string& value_column);

/// Load an option chain body: header `strike,call_mid,put_mid`, one row per
/// strike, either side may be left empty. Context (spot/rate/maturity) comes
/// from the caller.
OptionChain load_chain_csv(const std::string& path, double spot, double rate, double maturity);

/// Render a double with 6 significant digits, locale-independent.
std::string format_g6(double value);

/// Write a whole file, replacing any previous content. Throws DataError on
/// failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace volest
