#include "webts/adf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "webts/errors.hpp"
#include "webts/ols.hpp"

namespace webts {

// MacKinnon response-surface coefficients for the single-series test,
// no deterministic terms / constant / constant+trend.
const CriticalValueTable& builtin_critical_value_table() {
    static const CriticalValueTable table = {
        {DetermSpec::None, SignifLevel::Pct1, -2.5658, -1.960, -10.04},
        {DetermSpec::None, SignifLevel::Pct5, -1.9393, -0.398, 0.0},
        {DetermSpec::None, SignifLevel::Pct10, -1.6156, -0.181, 0.0},
        {DetermSpec::Constant, SignifLevel::Pct1, -3.4336, -5.999, -29.25},
        {DetermSpec::Constant, SignifLevel::Pct5, -2.8621, -2.738, -8.36},
        {DetermSpec::Constant, SignifLevel::Pct10, -2.5671, -1.438, -4.48},
        {DetermSpec::ConstantTrend, SignifLevel::Pct1, -3.9638, -8.353, -47.44},
        {DetermSpec::ConstantTrend, SignifLevel::Pct5, -3.4126, -4.039, -17.83},
        {DetermSpec::ConstantTrend, SignifLevel::Pct10, -3.1279, -2.418, -7.58},
    };
    return table;
}

CriticalValueTable load_critical_value_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw configuration_error("cannot open critical-value table '" + path + "'");
    CriticalValueTable table;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string spec_text, level_text;
        CriticalValueRow row{};
        if (!(ss >> spec_text)) continue;  // blank line
        if (!(ss >> level_text >> row.b_inf >> row.b1 >> row.b2))
            throw parse_error("bad critical-value row", lineno);
        row.spec = parse_determ_spec(spec_text);
        row.level = parse_signif_level(level_text);
        table.push_back(row);
    }
    if (table.empty()) throw configuration_error("critical-value table '" + path + "' is empty");
    return table;
}

double mackinnon_critical_value(long n_effective, DetermSpec spec, SignifLevel level,
                                const CriticalValueTable& table) {
    if (n_effective < 10)
        throw insufficient_observations_error("critical values need n_effective >= 10");
    for (const auto& row : table) {
        if (row.spec == spec && row.level == level) {
            const double n = static_cast<double>(n_effective);
            return row.b_inf + row.b1 / n + row.b2 / (n * n);
        }
    }
    throw configuration_error("no critical-value row for spec=" + to_string(spec) +
                              " level=" + to_string(level));
}

AdfResult adf_test(const TimeSeries& series, DetermSpec spec, int lags, SignifLevel level,
                   const CriticalValueTable& table) {
    if (lags < 0) throw configuration_error("adf_test: lags must be >= 0");
    const auto& y = series.values;
    const std::size_t n = y.size();

    bool constant_series = true;
    for (std::size_t i = 1; i < n; ++i)
        if (y[i] != y[0]) constant_series = false;
    if (n > 0 && constant_series)
        throw degenerate_series_error("adf_test: series '" + series.label + "' is constant");

    // Test regression runs over t = 1+lags .. n-1.
    const long n_eff = static_cast<long>(n) - 1 - lags;
    long params = 1 + lags;  // lagged level + lagged differences
    if (spec == DetermSpec::Constant) params += 1;
    if (spec == DetermSpec::ConstantTrend) params += 2;
    if (n_eff <= params)
        throw insufficient_observations_error(
            "adf_test: effective sample " + std::to_string(n_eff) + " too small for " +
            std::to_string(params) + " parameters");

    std::vector<double> dy(n - 1);
    for (std::size_t t = 1; t < n; ++t) dy[t - 1] = y[t] - y[t - 1];

    const std::size_t offset = static_cast<std::size_t>(lags);
    std::vector<double> response(dy.begin() + offset, dy.end());

    std::vector<NamedSeries> regressors;
    std::vector<double> lagged_level(n_eff);
    for (long i = 0; i < n_eff; ++i) lagged_level[i] = y[offset + i];
    regressors.emplace_back("y_lag1", std::move(lagged_level));
    for (int q = 1; q <= lags; ++q) {
        std::vector<double> lag_dy(n_eff);
        for (long i = 0; i < n_eff; ++i) lag_dy[i] = dy[offset + i - q];
        regressors.emplace_back("d_lag" + std::to_string(q), std::move(lag_dy));
    }
    if (spec == DetermSpec::ConstantTrend) {
        std::vector<double> trend(n_eff);
        for (long i = 0; i < n_eff; ++i) trend[i] = static_cast<double>(i + 1);
        regressors.emplace_back("trend", std::move(trend));
    }

    const bool intercept = spec != DetermSpec::None;
    const auto fit = fit_ols(regressors, response, intercept);
    const auto* rho = fit.find_coefficient("y_lag1");

    AdfResult result;
    result.statistic = rho->t_statistic;
    result.spec = spec;
    result.lags = lags;
    result.n_effective = n_eff;
    result.level = level;
    // The response surface is tabulated for n >= 10; clamp tiny fixtures.
    const long n_cv = std::max(n_eff, 10L);
    for (auto lv : {SignifLevel::Pct1, SignifLevel::Pct5, SignifLevel::Pct10})
        result.critical_values[lv] = mackinnon_critical_value(n_cv, spec, lv, table);
    result.reject_unit_root = result.statistic < result.critical_values.at(level);
    return result;
}

std::pair<TimeSeries, StationarityRecord> ensure_stationary(const TimeSeries& series,
                                                            const AnalysisConfig& config) {
    StationarityRecord record;
    record.variable = series.label;

    TimeSeries current = series;
    while (true) {
        AdfResult pass = adf_test(current, config.adf_spec, config.adf_lags, config.adf_level);
        record.passes.push_back(pass);
        if (pass.reject_unit_root) {
            record.diff_order_applied = current.diff_order - series.diff_order;
            record.initially_stationary = record.diff_order_applied == 0;
            record.resolved = true;
            return {std::move(current), std::move(record)};
        }
        if (current.diff_order - series.diff_order >= config.max_diff_order) {
            record.diff_order_applied = current.diff_order - series.diff_order;
            record.initially_stationary = false;
            record.resolved = false;
            return {std::move(current), std::move(record)};
        }
        current = difference(current);
    }
}

}  // namespace webts
