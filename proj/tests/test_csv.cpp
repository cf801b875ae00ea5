#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "volest/csv.hpp"
#include "volest/errors.hpp"

using namespace volest;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content) {
        path = (std::filesystem::temp_directory_path() / name).string();
        write_file(path, content);
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("out-of-order rows are sorted ascending") {
    TempFile f("volest_test_sorted.csv",
               "date,close\n2005-01-04,101.5\n2005-01-03,100.0\n");
    const DatedSeries s = load_series_csv(f.path, "date", "close");
    REQUIRE(s.size() == 2);
    CHECK(s.dates[0] == Date{2005, 1, 3});
    CHECK(s.values[0] == 100.0);
    CHECK(s.values[1] == 101.5);
}

TEST_CASE("malformed rows name the offending line") {
    TempFile f("volest_test_badrow.csv",
               "date,close\n2005-01-03,100.0\n2005-01-04,oops\n");
    CHECK_THROWS_WITH_AS(load_series_csv(f.path, "date", "close"), doctest::Contains("line 3"),
                         DataError);
}

TEST_CASE("duplicate dates are rejected") {
    TempFile f("volest_test_dup.csv",
               "date,close\n2005-01-03,100.0\n2005-01-03,101.0\n");
    CHECK_THROWS_WITH_AS(load_series_csv(f.path, "date", "close"),
                         doctest::Contains("duplicate"), DataError);
}

TEST_CASE("missing columns and files fail loudly") {
    TempFile f("volest_test_cols.csv", "date,price\n2005-01-03,100.0\n");
    CHECK_THROWS_AS(load_series_csv(f.path, "date", "close"), DataError);
    CHECK_THROWS_AS(load_series_csv("/nonexistent/nowhere.csv", "date", "close"), DataError);
}

TEST_CASE("field-count mismatches are rejected") {
    TempFile f("volest_test_fields.csv", "date,close\n2005-01-03,100.0,extra\n");
    CHECK_THROWS_WITH_AS(load_series_csv(f.path, "date", "close"), doctest::Contains("line 2"),
                         DataError);
}

TEST_CASE("option chains load with one-sided quotes and get sorted") {
    TempFile f("volest_test_chain.csv",
               "strike,call_mid,put_mid\n110,1.2,\n90,,0.8\n100,3.1,3.0\n");
    const OptionChain chain = load_chain_csv(f.path, 100.0, 0.0, 0.5);
    REQUIRE(chain.quotes().size() == 3);
    CHECK(chain.quotes()[0].strike == 90.0);
    CHECK(!chain.quotes()[0].call_mid.has_value());
    CHECK(*chain.quotes()[0].put_mid == 0.8);
    CHECK(*chain.quotes()[2].call_mid == 1.2);
    CHECK(!chain.quotes()[2].put_mid.has_value());
}

TEST_CASE("negative quotes in a chain file are a data error") {
    TempFile f("volest_test_chain_neg.csv", "strike,call_mid,put_mid\n90,1.0,-0.3\n100,2.0,2.0\n");
    CHECK_THROWS_AS(load_chain_csv(f.path, 100.0, 0.0, 0.5), DataError);
}

TEST_CASE("format_g6 renders six significant digits") {
    CHECK(format_g6(0.05) == "0.05");
    CHECK(format_g6(0.1234567) == "0.123457");
    CHECK(format_g6(1234567.0) == "1.23457e+06");
    CHECK(format_g6(0.0) == "0");
}
