#include "webts/dataset.hpp"

#include <algorithm>
#include <set>

#include "webts/errors.hpp"

namespace webts {

std::vector<SegmentDimension> default_dimensions() {
    return {
        {"source", {"search", "direct", "referral"}},
        {"speed", {"unknown", "dsl", "cable", "t1", "dialup", "oc3"}},
        {"type", {"new", "returning"}},
    };
}

std::optional<std::size_t> SegmentedDataset::dimension_index(const std::string& name) const {
    for (std::size_t d = 0; d < dimensions.size(); ++d)
        if (dimensions[d].name == name) return d;
    return std::nullopt;
}

static TimeSeries make_series(const std::string& label, const std::vector<Period>& periods,
                              const std::vector<std::int64_t>& counts) {
    TimeSeries s;
    s.label = label;
    s.start_period = periods.empty() ? Period{} : periods.front();
    s.values.assign(counts.begin(), counts.end());
    return s;
}

TimeSeries SegmentedDataset::visits_series(std::size_t dim, std::size_t level) const {
    return make_series(dimensions[dim].name + "/" + dimensions[dim].levels[level] + "/visits",
                       periods, visits[dim][level]);
}

TimeSeries SegmentedDataset::pageviews_series(std::size_t dim, std::size_t level) const {
    return make_series(dimensions[dim].name + "/" + dimensions[dim].levels[level] + "/pageviews",
                       periods, pageviews[dim][level]);
}

TimeSeries SegmentedDataset::total_series() const {
    return make_series("total_pageviews", periods, total_pageviews);
}

std::string DatasetViolation::str() const {
    std::string out = message;
    if (!dimension.empty()) out += " [dimension " + dimension + (level.empty() ? "" : "/" + level) + "]";
    if (period) out += " [period " + period->str() + "]";
    return out;
}

std::vector<DatasetViolation> validate_dataset(const SegmentedDataset& ds) {
    std::vector<DatasetViolation> out;
    const std::size_t n = ds.periods.size();

    if (n == 0) out.push_back({"dataset has no periods", "", "", std::nullopt});
    for (std::size_t t = 1; t < n; ++t)
        if (ds.periods[t].ordinal() != ds.periods[t - 1].ordinal() + 1)
            out.push_back({"periods not consecutive", "", "", ds.periods[t]});
    if (ds.total_pageviews.size() != n)
        out.push_back({"total_pageviews length differs from period count", "", "", std::nullopt});

    for (std::size_t d = 0; d < ds.dimensions.size(); ++d) {
        const auto& dim = ds.dimensions[d];
        std::set<std::string> seen(dim.levels.begin(), dim.levels.end());
        if (seen.size() != dim.levels.size())
            out.push_back({"duplicate level labels", dim.name, "", std::nullopt});
        if (dim.levels.size() < 2)
            out.push_back({"dimension has fewer than 2 levels", dim.name, "", std::nullopt});
        if (d >= ds.visits.size() || d >= ds.pageviews.size() ||
            ds.visits[d].size() != dim.levels.size() || ds.pageviews[d].size() != dim.levels.size()) {
            out.push_back({"missing count series for dimension", dim.name, "", std::nullopt});
            continue;
        }
        for (std::size_t l = 0; l < dim.levels.size(); ++l) {
            if (ds.visits[d][l].size() != n || ds.pageviews[d][l].size() != n) {
                out.push_back({"series length differs from period count", dim.name, dim.levels[l],
                               std::nullopt});
                continue;
            }
            for (std::size_t t = 0; t < n; ++t) {
                if (ds.visits[d][l][t] < 0)
                    out.push_back({"negative visit count", dim.name, dim.levels[l], ds.periods[t]});
                if (ds.pageviews[d][l][t] < 0)
                    out.push_back({"negative pageview count", dim.name, dim.levels[l], ds.periods[t]});
            }
        }
    }

    // Additivity: per period and dimension, level page views must sum to the
    // total exactly. Integer arithmetic, no tolerance.
    if (ds.total_pageviews.size() == n) {
        for (std::size_t d = 0; d < ds.dimensions.size(); ++d) {
            if (d >= ds.pageviews.size() || ds.pageviews[d].size() != ds.dimensions[d].levels.size())
                continue;
            bool lengths_ok = true;
            for (const auto& lv : ds.pageviews[d])
                if (lv.size() != n) lengths_ok = false;
            if (!lengths_ok) continue;
            for (std::size_t t = 0; t < n; ++t) {
                std::int64_t sum = 0;
                for (const auto& lv : ds.pageviews[d]) sum += lv[t];
                if (sum != ds.total_pageviews[t])
                    out.push_back({"level pageviews sum to " + std::to_string(sum) + ", total is " +
                                       std::to_string(ds.total_pageviews[t]),
                                   ds.dimensions[d].name, "", ds.periods[t]});
            }
        }
    }

    // Each dimension partitions the same visitors: per-period visit totals
    // must agree across dimensions.
    std::vector<std::int64_t> reference;
    std::string reference_dim;
    for (std::size_t d = 0; d < ds.dimensions.size(); ++d) {
        if (d >= ds.visits.size() || ds.visits[d].size() != ds.dimensions[d].levels.size()) continue;
        bool lengths_ok = true;
        for (const auto& lv : ds.visits[d])
            if (lv.size() != n) lengths_ok = false;
        if (!lengths_ok) continue;
        std::vector<std::int64_t> totals(n, 0);
        for (const auto& lv : ds.visits[d])
            for (std::size_t t = 0; t < n; ++t) totals[t] += lv[t];
        if (reference.empty()) {
            reference = std::move(totals);
            reference_dim = ds.dimensions[d].name;
        } else {
            for (std::size_t t = 0; t < n; ++t)
                if (totals[t] != reference[t])
                    out.push_back({"visit total " + std::to_string(totals[t]) + " disagrees with " +
                                       reference_dim + " total " + std::to_string(reference[t]),
                                   ds.dimensions[d].name, "", ds.periods[t]});
        }
    }

    return out;
}

std::string to_string(DetermSpec spec) {
    switch (spec) {
        case DetermSpec::None: return "none";
        case DetermSpec::Constant: return "constant";
        case DetermSpec::ConstantTrend: return "constant+trend";
    }
    return "?";
}

std::string to_string(SignifLevel level) {
    switch (level) {
        case SignifLevel::Pct1: return "1%";
        case SignifLevel::Pct5: return "5%";
        case SignifLevel::Pct10: return "10%";
    }
    return "?";
}

DetermSpec parse_determ_spec(const std::string& text) {
    if (text == "none") return DetermSpec::None;
    if (text == "constant") return DetermSpec::Constant;
    if (text == "constant+trend" || text == "trend") return DetermSpec::ConstantTrend;
    throw configuration_error("unknown deterministic spec '" + text + "'");
}

SignifLevel parse_signif_level(const std::string& text) {
    if (text == "1" || text == "1%") return SignifLevel::Pct1;
    if (text == "5" || text == "5%") return SignifLevel::Pct5;
    if (text == "10" || text == "10%") return SignifLevel::Pct10;
    throw configuration_error("unknown significance level '" + text + "', expected 1, 5 or 10");
}

void AnalysisConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw configuration_error("alpha must be in (0,1)");
    if (!(r2_threshold > 0.0 && r2_threshold < 1.0))
        throw configuration_error("r2_threshold must be in (0,1)");
    if (max_diff_order < 0) throw configuration_error("max_diff_order must be >= 0");
    if (adf_lags < 0) throw configuration_error("adf_lags must be >= 0");
    if (bg_lags < 1) throw configuration_error("bg_lags must be >= 1");
}

}  // namespace webts
