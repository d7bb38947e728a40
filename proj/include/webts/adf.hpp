#pragma once

#include <map>
#include <string>
#include <vector>

#include "webts/dataset.hpp"
#include "webts/time_series.hpp"

namespace webts {

struct AdfResult {
    double statistic = 0.0;  // t-ratio on the lagged level
    std::map<SignifLevel, double> critical_values;
    DetermSpec spec = DetermSpec::Constant;
    int lags = 0;
    long n_effective = 0;
    SignifLevel level = SignifLevel::Pct10;
    bool reject_unit_root = false;  // statistic < critical value (left tail)
};

struct StationarityRecord {
    std::string variable;
    bool initially_stationary = false;
    int diff_order_applied = 0;
    bool resolved = true;  // false when max_diff_order was hit without rejection
    std::vector<AdfResult> passes;
};

// Response-surface critical values: cv = b_inf + b1/n + b2/n^2.
struct CriticalValueRow {
    DetermSpec spec;
    SignifLevel level;
    double b_inf, b1, b2;
};

using CriticalValueTable = std::vector<CriticalValueRow>;

const CriticalValueTable& builtin_critical_value_table();

// Loads a table from the plain-text format shipped in data/ (columns:
// spec level b_inf b1 b2, '#' comments). Throws parse_error on bad rows.
CriticalValueTable load_critical_value_table(const std::string& path);

double mackinnon_critical_value(long n_effective, DetermSpec spec, SignifLevel level,
                                const CriticalValueTable& table = builtin_critical_value_table());

// Dickey-Fuller regression of the differenced series on the lagged level,
// deterministic terms and lagged differences; statistic is the t-ratio on
// the lagged level.
AdfResult adf_test(const TimeSeries& series, DetermSpec spec, int lags, SignifLevel level,
                   const CriticalValueTable& table = builtin_critical_value_table());

// Differences until the ADF test rejects the unit root or max_diff_order is
// reached; returns the transformed series plus the full per-pass record.
std::pair<TimeSeries, StationarityRecord> ensure_stationary(const TimeSeries& series,
                                                            const AnalysisConfig& config);

}  // namespace webts
