#pragma once

#include <string>
#include <vector>

namespace gts {

// Calendar date, ISO "YYYY-MM-DD" in files.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;
    std::string iso() const;
    static Date parse(const std::string& text);  // throws ParseError
};

struct PriceSeries {
    std::vector<Date> dates;   // strictly increasing
    std::vector<double> close; // positive
    long dropped_rows = 0;     // inputs discarded for a missing close

    std::size_t size() const { return close.size(); }
};

// Dated log returns in percent units.
struct ReturnSeries {
    std::vector<Date> dates;
    std::vector<double> returns;

    std::size_t size() const { return returns.size(); }
};

struct CsvSchema {
    std::string date_column = "Date";
    std::string close_column = "Adj Close";
};

// Reads a price CSV: header row with named columns, rows sorted by date on
// output, rows with an empty/NA close dropped and counted. Duplicate dates
// and malformed fields raise ParseError with the line number.
PriceSeries load_prices(const std::string& path, const CsvSchema& schema = {});

// y_i = 100 ln(P_i / P_{i-1}), dated at the later observation.
ReturnSeries log_returns(const PriceSeries& prices);

struct SummaryStats {
    double mean = 0.0;
    double variance = 0.0;        // sample variance, percent^2
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double min = 0.0;
    double max = 0.0;
    long count = 0;
    double annualized_vol = 0.0;  // sqrt(D * variance) / 100
};

SummaryStats summary(const ReturnSeries& returns, double days_per_year);

void write_returns_csv(const ReturnSeries& returns, const std::string& path);

}  // namespace gts
