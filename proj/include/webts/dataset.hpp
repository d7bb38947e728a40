#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "webts/time_series.hpp"

namespace webts {

struct SegmentDimension {
    std::string name;
    std::vector<std::string> levels;  // ordered, unique, >= 2 for real dimensions
};

// The three dimensions the methodology ships with by default.
std::vector<SegmentDimension> default_dimensions();

// Per-period, per-dimension, per-level visitor and page-view counts plus the
// grand page-view total. Counts stay integral so additivity is exact.
struct SegmentedDataset {
    std::vector<Period> periods;
    std::vector<SegmentDimension> dimensions;
    // counts[d][l][t]: dimension d, level l, period t
    std::vector<std::vector<std::vector<std::int64_t>>> visits;
    std::vector<std::vector<std::vector<std::int64_t>>> pageviews;
    std::vector<std::int64_t> total_pageviews;

    std::optional<std::size_t> dimension_index(const std::string& name) const;

    TimeSeries visits_series(std::size_t dim, std::size_t level) const;
    TimeSeries pageviews_series(std::size_t dim, std::size_t level) const;
    TimeSeries total_series() const;
};

struct DatasetViolation {
    std::string message;
    std::string dimension;  // empty when not dimension-specific
    std::string level;      // empty when not level-specific
    std::optional<Period> period;

    std::string str() const;
};

// Every violated invariant, with coordinates. Empty result means the dataset
// is internally consistent. Violations are data, not exceptions.
std::vector<DatasetViolation> validate_dataset(const SegmentedDataset& dataset);

enum class DetermSpec { None, Constant, ConstantTrend };
enum class SignifLevel { Pct1, Pct5, Pct10 };

std::string to_string(DetermSpec spec);
std::string to_string(SignifLevel level);
DetermSpec parse_determ_spec(const std::string& text);
SignifLevel parse_signif_level(const std::string& text);

struct AnalysisConfig {
    double alpha = 0.05;
    double r2_threshold = 0.5;
    int max_diff_order = 2;
    DetermSpec adf_spec = DetermSpec::Constant;
    int adf_lags = 0;
    SignifLevel adf_level = SignifLevel::Pct10;
    int bg_lags = 2;

    void validate() const;  // throws configuration_error
};

}  // namespace webts
