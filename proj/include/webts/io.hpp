#pragma once

#include <iosfwd>
#include <string>

#include "webts/dataset.hpp"
#include "webts/pipeline.hpp"
#include "webts/time_series.hpp"

namespace webts {

enum class ReportFormat { Text, Json };

// Long-format CSV with mandatory header
// period,dimension,level,visits,pageviews. Totals are computed by summation;
// the parsed dataset is checked with validate_dataset and rejected on any
// violation.
SegmentedDataset parse_dataset(std::istream& in);
SegmentedDataset parse_dataset_string(const std::string& text);

// Inverse of parse_dataset; parse(write(ds)) reproduces ds exactly.
std::string write_dataset_csv(const SegmentedDataset& dataset);

// Regression-package-style text report or its stable JSON mirror.
std::string render_report(const AnalysisReport& report, ReportFormat format);

// JSON (de)serialization of the full report; render(Json) emits exactly this.
std::string report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const std::string& json_text);

// period,actual_pageviews,fitted,residual rows for external plotting.
std::string emit_plot_data(const ComposedModel& composed, const SegmentedDataset& dataset);

}  // namespace webts
