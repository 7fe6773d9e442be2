#include "gts/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gts/errors.hpp"

namespace gts {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) != 0)) ++b;
    while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) != 0)) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool missing_value(const std::string& s) {
    return s.empty() || s == "null" || s == "NULL" || s == "NaN" || s == "nan" || s == "NA";
}

}  // namespace

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

Date Date::parse(const std::string& text) {
    Date d;
    int n = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%n", &d.year, &d.month, &d.day, &n) != 3 ||
        static_cast<std::size_t>(n) != text.size())
        throw ParseError("bad date '" + text + "' (expected YYYY-MM-DD)");
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31)
        throw ParseError("date out of range '" + text + "'");
    return d;
}

PriceSeries load_prices(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw EmptySeriesError("'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_csv(line);
    long date_col = -1, close_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == schema.date_column) date_col = static_cast<long>(i);
        if (header[i] == schema.close_column) close_col = static_cast<long>(i);
    }
    if (date_col < 0 || close_col < 0)
        throw ParseError("'" + path + "': header lacks column '" +
                         (date_col < 0 ? schema.date_column : schema.close_column) + "'");

    std::vector<std::pair<Date, double>> rows;
    long dropped = 0;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (static_cast<long>(fields.size()) <= std::max(date_col, close_col))
            throw ParseError(path + ":" + std::to_string(line_no) + ": too few fields");

        const std::string& close_text = fields[static_cast<std::size_t>(close_col)];
        if (missing_value(close_text)) {
            ++dropped;
            continue;
        }
        Date date;
        try {
            date = Date::parse(fields[static_cast<std::size_t>(date_col)]);
        } catch (const ParseError& e) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        double close = 0.0;
        const auto [ptr, ec] =
            std::from_chars(close_text.data(), close_text.data() + close_text.size(), close);
        if (ec != std::errc{} || ptr != close_text.data() + close_text.size())
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad close '" +
                             close_text + "'");
        if (!(close > 0.0))
            throw ParseError(path + ":" + std::to_string(line_no) + ": close must be positive");
        rows.emplace_back(date, close);
    }
    if (rows.empty()) throw EmptySeriesError("'" + path + "' has no usable rows");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first == rows[i - 1].first)
            throw ParseError("'" + path + "': duplicate date " + rows[i].first.iso());

    PriceSeries series;
    series.dropped_rows = dropped;
    series.dates.reserve(rows.size());
    series.close.reserve(rows.size());
    for (const auto& [date, close] : rows) {
        series.dates.push_back(date);
        series.close.push_back(close);
    }
    return series;
}

ReturnSeries log_returns(const PriceSeries& prices) {
    if (prices.size() < 2)
        throw EmptySeriesError("log_returns: need at least two prices");
    ReturnSeries out;
    out.dates.reserve(prices.size() - 1);
    out.returns.reserve(prices.size() - 1);
    for (std::size_t i = 1; i < prices.size(); ++i) {
        out.dates.push_back(prices.dates[i]);
        out.returns.push_back(100.0 * std::log(prices.close[i] / prices.close[i - 1]));
    }
    return out;
}

SummaryStats summary(const ReturnSeries& returns, double days_per_year) {
    if (returns.size() == 0) throw EmptySeriesError("summary: empty return series");
    const auto n = static_cast<double>(returns.size());
    SummaryStats s;
    s.count = static_cast<long>(returns.size());
    s.mean = std::accumulate(returns.returns.begin(), returns.returns.end(), 0.0) / n;
    s.min = *std::min_element(returns.returns.begin(), returns.returns.end());
    s.max = *std::max_element(returns.returns.begin(), returns.returns.end());

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double y : returns.returns) {
        const double d = y - s.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    s.variance = returns.size() > 1 ? m2 * n / (n - 1.0) : 0.0;
    s.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    s.excess_kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
    s.annualized_vol = std::sqrt(days_per_year * s.variance) / 100.0;
    return s;
}

void write_returns_csv(const ReturnSeries& returns, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << "date,return_pct\n";
    char buf[64];
    for (std::size_t i = 0; i < returns.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", returns.returns[i]);
        out << returns.dates[i].iso() << ',' << buf << '\n';
    }
}

}  // namespace gts
