#pragma once

#include <string>
#include <vector>

namespace webts {

// Calendar period at monthly granularity (the default frequency).
// Ordinal arithmetic keeps equally-spaced indexing trivial.
struct Period {
    int year = 0;
    int month = 1;  // 1..12

    long ordinal() const { return static_cast<long>(year) * 12 + (month - 1); }
    Period next() const;
    std::string str() const;  // "YYYY-MM"

    bool operator==(const Period&) const = default;
    auto operator<=>(const Period& other) const { return ordinal() <=> other.ordinal(); }
};

// Parses "YYYY-MM"; throws webts::domain_error on malformed input.
Period parse_period(const std::string& text);

struct TimeSeries {
    std::string label;
    Period start_period;
    std::vector<double> values;
    int diff_order = 0;

    std::size_t size() const { return values.size(); }
};

// First difference: result[t] = s[t+1] - s[t]. Length shrinks by one,
// diff_order goes up by one, start advances one period.
TimeSeries difference(const TimeSeries& series);

}  // namespace webts
