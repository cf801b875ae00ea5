#include "volest/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "volest/errors.hpp"

namespace volest {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& field, const std::string& path, std::size_t line_no) {
    double value = 0.0;
    const std::string text = strip(field);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw DataError(path + ": line " + std::to_string(line_no) + ": non-numeric value '" +
                        field + "'");
    }
    return value;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::string& path) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (strip(header[i]) == name) return i;
    }
    throw DataError(path + ": missing column '" + name + "' in header");
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    if (lines.empty()) throw DataError(path + ": empty file");
    return lines;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

DatedSeries load_series_csv(const std::string& path, const std::string& date_column,
                            const std::string& value_column) {
    const std::vector<std::string> lines = read_lines(path);
    const std::vector<std::string> header = split_csv_line(lines.front());
    const std::size_t date_idx = find_column(header, date_column, path);
    const std::size_t value_idx = find_column(header, value_column, path);

    DatedSeries series;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (strip(lines[i]).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(lines[i]);
        if (fields.size() != header.size()) {
            throw DataError(path + ": line " + std::to_string(i + 1) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        }
        Date date;
        try {
            date = parse_date(strip(fields[date_idx]));
        } catch (const DataError& e) {
            throw DataError(path + ": line " + std::to_string(i + 1) + ": " + e.what());
        }
        series.dates.push_back(date);
        series.values.push_back(parse_double(fields[value_idx], path, i + 1));
    }
    if (series.dates.empty()) throw DataError(path + ": no data rows");

    std::vector<std::size_t> order(series.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return series.dates[a] < series.dates[b]; });
    DatedSeries sorted;
    sorted.dates.reserve(series.size());
    sorted.values.reserve(series.size());
    for (std::size_t idx : order) {
        if (!sorted.dates.empty() && sorted.dates.back() == series.dates[idx]) {
            throw DataError(path + ": duplicate date " + to_iso_string(series.dates[idx]));
        }
        sorted.dates.push_back(series.dates[idx]);
        sorted.values.push_back(series.values[idx]);
    }
    return sorted;
}

OptionChain load_chain_csv(const std::string& path, double spot, double rate, double maturity) {
    const std::vector<std::string> lines = read_lines(path);
    const std::vector<std::string> header = split_csv_line(lines.front());
    const std::size_t strike_idx = find_column(header, "strike", path);
    const std::size_t call_idx = find_column(header, "call_mid", path);
    const std::size_t put_idx = find_column(header, "put_mid", path);

    std::vector<OptionQuote> quotes;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (strip(lines[i]).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(lines[i]);
        if (fields.size() != header.size()) {
            throw DataError(path + ": line " + std::to_string(i + 1) + ": field count mismatch");
        }
        OptionQuote q;
        q.strike = parse_double(fields[strike_idx], path, i + 1);
        if (!strip(fields[call_idx]).empty()) {
            q.call_mid = parse_double(fields[call_idx], path, i + 1);
        }
        if (!strip(fields[put_idx]).empty()) {
            q.put_mid = parse_double(fields[put_idx], path, i + 1);
        }
        quotes.push_back(q);
    }
    std::sort(quotes.begin(), quotes.end(),
              [](const OptionQuote& a, const OptionQuote& b) { return a.strike < b.strike; });
    try {
        return OptionChain(spot, rate, maturity, std::move(quotes));
    } catch (const InvalidInput& e) {
        throw DataError(path + ": " + e.what());
    }
}

std::string format_g6(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << content;
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace volest
