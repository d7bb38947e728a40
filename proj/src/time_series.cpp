#include "webts/time_series.hpp"

#include <cctype>

#include "webts/errors.hpp"

namespace webts {

Period Period::next() const {
    Period p = *this;
    if (++p.month > 12) {
        p.month = 1;
        ++p.year;
    }
    return p;
}

std::string Period::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

Period parse_period(const std::string& text) {
    if (text.size() != 7 || text[4] != '-')
        throw domain_error("malformed period '" + text + "', expected YYYY-MM");
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u})
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw domain_error("malformed period '" + text + "', expected YYYY-MM");
    Period p;
    p.year = std::stoi(text.substr(0, 4));
    p.month = std::stoi(text.substr(5, 2));
    if (p.month < 1 || p.month > 12)
        throw domain_error("month out of range in period '" + text + "'");
    return p;
}

TimeSeries difference(const TimeSeries& series) {
    if (series.values.size() < 2)
        throw degenerate_series_error("cannot difference series '" + series.label +
                                      "' of length " + std::to_string(series.values.size()));
    TimeSeries out;
    out.label = series.label;
    out.start_period = series.start_period.next();
    out.diff_order = series.diff_order + 1;
    out.values.reserve(series.values.size() - 1);
    for (std::size_t t = 1; t < series.values.size(); ++t)
        out.values.push_back(series.values[t] - series.values[t - 1]);
    return out;
}

}  // namespace webts
