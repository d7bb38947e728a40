#include "webts/pipeline.hpp"

#include <cmath>
#include <cstdio>

#include "webts/errors.hpp"

namespace webts {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Waived: return "waived";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

std::string to_string(OverallVerdict v) {
    switch (v) {
        case OverallVerdict::Pass: return "pass";
        case OverallVerdict::FailWithNote: return "fail-with-note";
        case OverallVerdict::Fail: return "fail";
    }
    return "?";
}

dataset_validation_error::dataset_validation_error(std::vector<DatasetViolation> v)
    : std::runtime_error("dataset failed validation with " + std::to_string(v.size()) +
                         " violation(s), first: " + (v.empty() ? "" : v.front().str())),
      violations(std::move(v)) {}

PreparedSegments prepare_segment_series(const SegmentedDataset& dataset,
                                        const SegmentDimension& dimension,
                                        const AnalysisConfig& config) {
    const auto d = dataset.dimension_index(dimension.name);
    if (!d)
        throw configuration_error("dimension '" + dimension.name + "' not present in dataset");
    PreparedSegments out;
    for (std::size_t l = 0; l < dataset.dimensions[*d].levels.size(); ++l) {
        auto series = dataset.visits_series(*d, l);
        auto [processed, record] = ensure_stationary(series, config);
        out.emplace(dataset.dimensions[*d].levels[l],
                    PreparedLevel{std::move(processed), std::move(record)});
    }
    return out;
}

std::map<std::string, RegressionResult> fit_segment_models(const SegmentedDataset& dataset,
                                                           const SegmentDimension& dimension,
                                                           const PreparedSegments& prepared,
                                                           const AnalysisConfig& config) {
    (void)config;
    const auto d = dataset.dimension_index(dimension.name);
    if (!d)
        throw configuration_error("dimension '" + dimension.name + "' not present in dataset");
    std::map<std::string, RegressionResult> out;
    for (std::size_t l = 0; l < dataset.dimensions[*d].levels.size(); ++l) {
        const auto& level = dataset.dimensions[*d].levels[l];
        const auto it = prepared.find(level);
        if (it == prepared.end())
            throw configuration_error("no prepared series for level '" + level + "'");
        const auto& visits = it->second.processed_visits;

        // Match the dependent variable's differencing to the regressor's.
        TimeSeries pv = dataset.pageviews_series(*d, l);
        for (int i = 0; i < it->second.record.diff_order_applied; ++i) pv = difference(pv);

        auto fit = fit_ols({{level, visits.values}}, pv.values, /*include_intercept=*/true);
        fit.used_differenced_inputs = it->second.record.diff_order_applied > 0;
        out.emplace(level, std::move(fit));
    }
    return out;
}

static std::string format_slope(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

ComposedModel compose_total_model(const std::map<std::string, RegressionResult>& segment_fits,
                                  const SegmentedDataset& dataset,
                                  const SegmentDimension& dimension,
                                  const AnalysisConfig& config) {
    const auto d = dataset.dimension_index(dimension.name);
    if (!d)
        throw configuration_error("dimension '" + dimension.name + "' not present in dataset");

    ComposedModel model;
    model.dimension = dimension.name;

    std::vector<NamedSeries> raw_visits;
    std::vector<std::pair<std::string, double>> fixed;
    for (std::size_t l = 0; l < dataset.dimensions[*d].levels.size(); ++l) {
        const auto& level = dataset.dimensions[*d].levels[l];
        const auto it = segment_fits.find(level);
        if (it == segment_fits.end())
            throw configuration_error("no segment fit for level '" + level + "'");
        const auto* slope = it->second.find_coefficient(level);
        if (!slope)
            throw configuration_error("segment fit for '" + level + "' has no slope row");
        raw_visits.emplace_back(level, dataset.visits_series(*d, l).values);
        fixed.emplace_back(level, slope->estimate);
        model.slopes.emplace_back(level, slope->estimate);
    }

    const auto total = dataset.total_series();
    model.intercept_fit = fit_restricted(fixed, raw_visits, total.values);
    model.unrestricted_fit = fit_ols(raw_visits, total.values, /*include_intercept=*/true);

    model.equation = "PAGEVIEWS = ";
    for (const auto& [level, slope] : model.slopes)
        model.equation += format_slope(slope) + "*" + level + " + ";
    model.equation += "C(1)";

    model.ledger = validate_model(model, segment_fits, config);
    return model;
}

ValidationLedger validate_model(const ComposedModel& composed,
                                const std::map<std::string, RegressionResult>& segment_fits,
                                const AnalysisConfig& config) {
    config.validate();
    ValidationLedger ledger;
    ledger.steps.resize(7);

    bool any_differenced = false;
    for (const auto& [level, fit] : segment_fits)
        if (fit.used_differenced_inputs) any_differenced = true;

    // 1. Fit strength of the composed model.
    {
        auto& s = ledger.steps[0];
        s.name = "fit_strength";
        s.statistic = composed.intercept_fit.r_squared;
        s.p = config.r2_threshold;
        if (s.statistic > config.r2_threshold)
            s.verdict = Verdict::Pass;
        else if (any_differenced) {
            s.verdict = Verdict::Waived;
            s.note = "low R-squared waived: differenced inputs in segment models";
        } else
            s.verdict = Verdict::Fail;
    }

    // 2. Joint significance, judged on the free-slope auxiliary fit (the
    //    composed fit estimates no slopes of its own).
    {
        auto& s = ledger.steps[1];
        s.name = "joint_significance";
        const auto& aux = composed.unrestricted_fit;
        if (aux.perfect_fit) {
            s.verdict = Verdict::Pass;
            s.note = "perfect fit";
        } else if (aux.f_statistic) {
            s.statistic = *aux.f_statistic;
            s.p = *aux.f_p;
            s.verdict = s.p < config.alpha ? Verdict::Pass : Verdict::Fail;
        } else {
            s.verdict = Verdict::NotApplicable;
            s.note = "no F-statistic available";
        }
    }

    // 3. Individual significance: strict majority of segment slopes.
    {
        auto& s = ledger.steps[2];
        s.name = "individual_significance";
        long significant = 0;
        long total = 0;
        for (const auto& [level, fit] : segment_fits) {
            const auto* row = fit.find_coefficient(level);
            if (!row) continue;
            ++total;
            if (fit.perfect_fit || (std::isfinite(row->p_value) && row->p_value < config.alpha))
                ++significant;
        }
        s.statistic = static_cast<double>(significant);
        s.p = static_cast<double>(total);
        s.verdict = (total > 0 && 2 * significant > total) ? Verdict::Pass : Verdict::Fail;
    }

    // 4. Coefficient signs: every visitor-count slope positive by default.
    {
        auto& s = ledger.steps[3];
        s.name = "coefficient_signs";
        long failing = 0;
        for (const auto& [level, slope] : composed.slopes)
            if (!(slope > 0.0)) ++failing;
        s.statistic = static_cast<double>(failing);
        s.verdict = failing == 0 ? Verdict::Pass : Verdict::Fail;
    }

    const auto& fit = composed.intercept_fit;
    const bool degenerate = fit.perfect_fit || fit.sum_squared_resid == 0.0;

    // 5. No serial correlation (Breusch-Godfrey).
    {
        auto& s = ledger.steps[4];
        s.name = "no_serial_correlation";
        if (degenerate) {
            s.verdict = Verdict::NotApplicable;
            s.note = "zero residuals";
        } else {
            try {
                const auto bg = breusch_godfrey(fit, config.bg_lags);
                s.statistic = bg.obs_r_squared;
                s.p = bg.chi2_p;
                s.verdict = s.p >= config.alpha ? Verdict::Pass : Verdict::Fail;
            } catch (const std::runtime_error& e) {
                s.verdict = Verdict::NotApplicable;
                s.note = e.what();
            }
        }
    }

    // 6. Homoscedasticity (Breusch-Pagan-Godfrey on the free-slope fit; the
    //    composed fit has no slope regressors for the auxiliary regression).
    {
        auto& s = ledger.steps[5];
        s.name = "homoscedasticity";
        const auto& aux = composed.unrestricted_fit;
        if (aux.perfect_fit || aux.sum_squared_resid == 0.0) {
            s.verdict = Verdict::NotApplicable;
            s.note = "zero residuals";
        } else {
            try {
                const auto bpg = breusch_pagan_godfrey(aux);
                s.statistic = bpg.obs_r_squared;
                s.p = bpg.chi2_p;
                s.verdict = s.p >= config.alpha ? Verdict::Pass : Verdict::Fail;
            } catch (const std::runtime_error& e) {
                s.verdict = Verdict::NotApplicable;
                s.note = e.what();
            }
        }
    }

    // 7. Residual normality (Jarque-Bera).
    {
        auto& s = ledger.steps[6];
        s.name = "residual_normality";
        if (degenerate) {
            s.verdict = Verdict::NotApplicable;
            s.note = "zero residuals";
        } else {
            try {
                const auto jb = jarque_bera(fit.residuals);
                s.statistic = jb.jb_statistic;
                s.p = jb.p;
                s.verdict = s.p >= config.alpha ? Verdict::Pass : Verdict::Fail;
            } catch (const std::runtime_error& e) {
                s.verdict = Verdict::NotApplicable;
                s.note = e.what();
            }
        }
    }

    int fails = 0;
    int diagnostic_fails = 0;
    for (int i = 0; i < 7; ++i) {
        if (ledger.steps[i].verdict == Verdict::Fail) {
            ++fails;
            if (i >= 4) ++diagnostic_fails;
        }
    }
    if (fails == 0)
        ledger.overall = OverallVerdict::Pass;
    else if (fails == 1 && diagnostic_fails == 1)
        ledger.overall = OverallVerdict::FailWithNote;
    else
        ledger.overall = OverallVerdict::Fail;
    return ledger;
}

AnalysisReport run_analysis(const SegmentedDataset& dataset, const AnalysisConfig& config,
                            const std::vector<std::string>& dimension_names) {
    config.validate();
    auto violations = validate_dataset(dataset);
    if (!violations.empty()) throw dataset_validation_error(std::move(violations));

    AnalysisReport report;
    report.config = config;
    report.first_period = dataset.periods.front();
    report.last_period = dataset.periods.back();
    report.n_periods = static_cast<long>(dataset.periods.size());
    for (auto v : dataset.total_pageviews) report.total_pageviews_sum += v;

    std::vector<std::string> names = dimension_names;
    if (names.empty())
        for (const auto& dim : dataset.dimensions) names.push_back(dim.name);

    for (const auto& name : names) {
        DimensionAnalysis da;
        da.dimension = name;
        try {
            const auto d = dataset.dimension_index(name);
            if (!d) throw configuration_error("dimension '" + name + "' not present in dataset");
            const auto& dim = dataset.dimensions[*d];
            da.prepared = prepare_segment_series(dataset, dim, config);
            da.segment_fits = fit_segment_models(dataset, dim, da.prepared, config);
            da.composed = compose_total_model(da.segment_fits, dataset, dim, config);
        } catch (const std::runtime_error& e) {
            da.error = e.what();
        }
        report.dimensions.push_back(std::move(da));
    }
    return report;
}

}  // namespace webts
