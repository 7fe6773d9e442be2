#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "gts/errors.hpp"
#include "gts/market_data.hpp"

using namespace gts;

namespace {

const std::string kData = GTS_TEST_DATA_DIR;

std::string temp_file(const char* name) {
    return std::string("./") + name;
}

}  // namespace

TEST_CASE("date parsing and formatting") {
    const Date d = Date::parse("2023-08-15");
    CHECK(d.year == 2023);
    CHECK(d.month == 8);
    CHECK(d.day == 15);
    CHECK(d.iso() == "2023-08-15");
    CHECK(Date::parse("2020-01-02") < d);
    CHECK_THROWS_AS(Date::parse("08/15/2023"), ParseError);
    CHECK_THROWS_AS(Date::parse("2023-13-01"), ParseError);
}

TEST_CASE("well-formed price file loads in order") {
    const PriceSeries series = load_prices(kData + "/prices_small.csv");
    REQUIRE(series.size() == 3);
    CHECK(series.dropped_rows == 0);
    CHECK(series.dates.front().iso() == "2023-01-02");
    CHECK(series.close[0] == doctest::Approx(100.0));
    CHECK(series.close[2] == doctest::Approx(101.51));
}

TEST_CASE("unsorted rows come out date-sorted") {
    const PriceSeries series = load_prices(kData + "/prices_unsorted.csv");
    REQUIRE(series.size() == 4);
    for (std::size_t i = 1; i < series.size(); ++i)
        CHECK(series.dates[i - 1] < series.dates[i]);
}

TEST_CASE("missing close values are dropped and counted") {
    const PriceSeries series = load_prices(kData + "/prices_missing.csv");
    CHECK(series.size() == 3);
    CHECK(series.dropped_rows == 1);
}

TEST_CASE("malformed input raises ParseError with the line number") {
    try {
        load_prices(kData + "/prices_bad_close.csv");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
    CHECK_THROWS_AS(load_prices(kData + "/prices_duplicate.csv"), ParseError);
    CHECK_THROWS_AS(load_prices(kData + "/nonexistent.csv"), ParseError);
    CHECK_THROWS_AS(load_prices(kData + "/prices_small.csv", CsvSchema{"Date", "Nope"}),
                    ParseError);
}

TEST_CASE("alternate column names through the schema") {
    const PriceSeries series =
        load_prices(kData + "/prices_altcols.csv", CsvSchema{"day", "px"});
    REQUIRE(series.size() == 2);
    CHECK(series.close[1] == doctest::Approx(11.0));
}

TEST_CASE("log returns") {
    PriceSeries prices;
    prices.dates = {Date{2023, 1, 2}, Date{2023, 1, 3}, Date{2023, 1, 4}};
    prices.close = {100.0, 101.0, 101.0};
    const ReturnSeries returns = log_returns(prices);
    REQUIRE(returns.size() == 2);
    CHECK(returns.dates[0].iso() == "2023-01-03");
    CHECK(returns.returns[0] == doctest::Approx(100.0 * std::log(1.01)).epsilon(1e-14));
    CHECK(returns.returns[1] == 0.0);

    // scale invariance (power-of-two factor keeps it exact)
    PriceSeries scaled = prices;
    for (double& c : scaled.close) c *= 4.0;
    const ReturnSeries same = log_returns(scaled);
    for (std::size_t i = 0; i < same.size(); ++i)
        CHECK(same.returns[i] == returns.returns[i]);

    prices.close.resize(1);
    prices.dates.resize(1);
    CHECK_THROWS_AS(log_returns(prices), EmptySeriesError);
}

TEST_CASE("summary statistics") {
    ReturnSeries one;
    one.dates = {Date{2023, 1, 3}};
    one.returns = {0.5};
    const SummaryStats single = summary(one, 360.0);
    CHECK(single.variance == 0.0);
    CHECK(single.count == 1);

    ReturnSeries pair;
    pair.dates = {Date{2023, 1, 3}, Date{2023, 1, 4}};
    pair.returns = {-1.0, 1.0};
    const SummaryStats sym = summary(pair, 360.0);
    CHECK(sym.mean == 0.0);
    CHECK(sym.skewness == 0.0);
    CHECK(sym.variance == doctest::Approx(2.0));
    CHECK(sym.min == -1.0);
    CHECK(sym.max == 1.0);
    CHECK(sym.annualized_vol == doctest::Approx(std::sqrt(360.0 * 2.0) / 100.0));

    CHECK_THROWS_AS(summary(ReturnSeries{}, 360.0), EmptySeriesError);
}

TEST_CASE("round trip through the CSV writers") {
    const PriceSeries series = load_prices(kData + "/prices_small.csv");

    // serialize the parsed representation and load it again
    const std::string path = temp_file("roundtrip_prices.csv");
    {
        std::ofstream out(path);
        out << "Date,Adj Close\n";
        char buf[64];
        for (std::size_t i = 0; i < series.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", series.close[i]);
            out << series.dates[i].iso() << ',' << buf << '\n';
        }
    }
    const PriceSeries reloaded = load_prices(path);
    REQUIRE(reloaded.size() == series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        CHECK(reloaded.dates[i] == series.dates[i]);
        CHECK(reloaded.close[i] == series.close[i]);
    }

    const ReturnSeries returns = log_returns(series);
    const std::string rpath = temp_file("roundtrip_returns.csv");
    write_returns_csv(returns, rpath);
    std::ifstream in(rpath);
    std::string header;
    std::getline(in, header);
    CHECK(header == "date,return_pct");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == static_cast<int>(returns.size()));

    std::remove(path.c_str());
    std::remove(rpath.c_str());
}
