#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "webts/adf.hpp"
#include "webts/dataset.hpp"
#include "webts/diagnostics.hpp"
#include "webts/ols.hpp"

namespace webts {

enum class Verdict { Pass, Fail, Waived, NotApplicable };
std::string to_string(Verdict v);

struct LedgerStep {
    std::string name;
    Verdict verdict = Verdict::NotApplicable;
    double statistic = 0.0;
    double p = 0.0;  // or the compared quantity (R-squared for step 1)
    std::string note;
};

enum class OverallVerdict { Pass, FailWithNote, Fail };
std::string to_string(OverallVerdict v);

// The seven model-quality checks, each reproducible from its stored
// statistic and the configured alpha / R-squared threshold.
struct ValidationLedger {
    std::vector<LedgerStep> steps;  // always 7, in checklist order
    OverallVerdict overall = OverallVerdict::Fail;

    const LedgerStep& step(int number) const { return steps.at(number - 1); }
};

struct ComposedModel {
    std::string dimension;
    std::vector<std::pair<std::string, double>> slopes;  // carried from segment fits
    RegressionResult intercept_fit;      // restricted: only C(1) estimated
    RegressionResult unrestricted_fit;   // free slopes; joint-significance and BPG host
    std::string equation;
    ValidationLedger ledger;
};

struct PreparedLevel {
    TimeSeries processed_visits;
    StationarityRecord record;
};

using PreparedSegments = std::map<std::string, PreparedLevel>;

struct DimensionAnalysis {
    std::string dimension;
    PreparedSegments prepared;
    std::map<std::string, RegressionResult> segment_fits;
    std::optional<ComposedModel> composed;
    std::string error;  // non-empty when this dimension failed
};

struct AnalysisReport {
    std::vector<DimensionAnalysis> dimensions;
    Period first_period, last_period;
    long n_periods = 0;
    std::int64_t total_pageviews_sum = 0;
    AnalysisConfig config;
};

// Thrown by run_analysis when the dataset fails validate_dataset.
struct dataset_validation_error : std::runtime_error {
    explicit dataset_validation_error(std::vector<DatasetViolation> v);
    std::vector<DatasetViolation> violations;
};

// Stationarity screening of each level's visits series (Table-1-shaped).
PreparedSegments prepare_segment_series(const SegmentedDataset& dataset,
                                        const SegmentDimension& dimension,
                                        const AnalysisConfig& config);

// Per-level fundamental models: page views on (processed) visits. When the
// visits were differenced, the page-view series is differenced to the same
// order and the result is flagged.
std::map<std::string, RegressionResult> fit_segment_models(const SegmentedDataset& dataset,
                                                           const SegmentDimension& dimension,
                                                           const PreparedSegments& prepared,
                                                           const AnalysisConfig& config);

// Total model: segment slopes fixed, one intercept re-estimated on the raw
// (undifferenced) level visits; ledger produced by validate_model.
ComposedModel compose_total_model(const std::map<std::string, RegressionResult>& segment_fits,
                                  const SegmentedDataset& dataset,
                                  const SegmentDimension& dimension,
                                  const AnalysisConfig& config);

ValidationLedger validate_model(const ComposedModel& composed,
                                const std::map<std::string, RegressionResult>& segment_fits,
                                const AnalysisConfig& config);

// Full pipeline: prepare -> fit -> compose -> validate per requested
// dimension. Per-dimension failures are captured in the report; an invalid
// dataset is rejected up front with dataset_validation_error.
AnalysisReport run_analysis(const SegmentedDataset& dataset, const AnalysisConfig& config,
                            const std::vector<std::string>& dimension_names = {});

}  // namespace webts
