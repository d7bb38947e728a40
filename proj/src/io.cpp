#include "webts/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "webts/errors.hpp"

namespace webts {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::int64_t parse_count(const std::string& text, const char* what, long lineno) {
    if (text.empty()) throw parse_error(std::string("empty ") + what, lineno);
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(text, &pos);
        if (pos != text.size()) throw parse_error(std::string("malformed ") + what + " '" + text + "'", lineno);
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error(std::string("malformed ") + what + " '" + text + "'", lineno);
    }
}

}  // namespace

SegmentedDataset parse_dataset(std::istream& in) {
    std::string line;
    long lineno = 0;

    if (!std::getline(in, line)) throw parse_error("missing header", 1);
    ++lineno;
    {
        auto header = split_csv_line(line);
        const std::vector<std::string> expected = {"period", "dimension", "level", "visits",
                                                   "pageviews"};
        if (header != expected)
            throw parse_error("bad header, expected period,dimension,level,visits,pageviews", 1);
    }

    std::vector<std::string> dim_order;
    std::map<std::string, std::vector<std::string>> level_order;
    // cell[(dim, level, period ordinal)] = (visits, pageviews)
    std::map<std::tuple<std::string, std::string, long>, std::pair<std::int64_t, std::int64_t>>
        cells;
    std::map<long, Period> period_set;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 5)
            throw parse_error("expected 5 fields, got " + std::to_string(fields.size()), lineno);
        Period period;
        try {
            period = parse_period(fields[0]);
        } catch (const domain_error& e) {
            throw parse_error(e.what(), lineno);
        }
        const std::string& dim = fields[1];
        const std::string& level = fields[2];
        if (dim.empty()) throw parse_error("empty dimension name", lineno);
        if (level.empty()) throw parse_error("empty level name", lineno);
        const std::int64_t visits = parse_count(fields[3], "visits", lineno);
        const std::int64_t pageviews = parse_count(fields[4], "pageviews", lineno);

        if (std::find(dim_order.begin(), dim_order.end(), dim) == dim_order.end())
            dim_order.push_back(dim);
        auto& levels = level_order[dim];
        if (std::find(levels.begin(), levels.end(), level) == levels.end())
            levels.push_back(level);

        const auto key = std::make_tuple(dim, level, period.ordinal());
        if (!cells.emplace(key, std::make_pair(visits, pageviews)).second)
            throw parse_error("duplicate row for " + period.str() + "," + dim + "," + level,
                              lineno);
        period_set.emplace(period.ordinal(), period);
    }
    if (cells.empty()) throw parse_error("no data rows", lineno + 1);

    SegmentedDataset ds;
    for (const auto& [ord, p] : period_set) ds.periods.push_back(p);

    for (const auto& dim : dim_order) {
        SegmentDimension sd;
        sd.name = dim;
        sd.levels = level_order[dim];
        ds.dimensions.push_back(sd);
        std::vector<std::vector<std::int64_t>> v, pv;
        for (const auto& level : sd.levels) {
            std::vector<std::int64_t> vl, pvl;
            for (const auto& p : ds.periods) {
                const auto it = cells.find(std::make_tuple(dim, level, p.ordinal()));
                if (it == cells.end())
                    throw domain_error("missing row for " + p.str() + "," + dim + "," + level);
                vl.push_back(it->second.first);
                pvl.push_back(it->second.second);
            }
            v.push_back(std::move(vl));
            pv.push_back(std::move(pvl));
        }
        ds.visits.push_back(std::move(v));
        ds.pageviews.push_back(std::move(pv));
    }

    // Totals come from the first dimension; validate_dataset then enforces
    // agreement of every other dimension.
    ds.total_pageviews.assign(ds.periods.size(), 0);
    for (const auto& lv : ds.pageviews.front())
        for (std::size_t t = 0; t < lv.size(); ++t) ds.total_pageviews[t] += lv[t];

    auto violations = validate_dataset(ds);
    if (!violations.empty()) throw dataset_validation_error(std::move(violations));
    return ds;
}

SegmentedDataset parse_dataset_string(const std::string& text) {
    std::istringstream in(text);
    return parse_dataset(in);
}

std::string write_dataset_csv(const SegmentedDataset& ds) {
    std::string out = "period,dimension,level,visits,pageviews\n";
    for (std::size_t d = 0; d < ds.dimensions.size(); ++d)
        for (std::size_t l = 0; l < ds.dimensions[d].levels.size(); ++l)
            for (std::size_t t = 0; t < ds.periods.size(); ++t)
                out += ds.periods[t].str() + "," + ds.dimensions[d].name + "," +
                       ds.dimensions[d].levels[l] + "," + std::to_string(ds.visits[d][l][t]) +
                       "," + std::to_string(ds.pageviews[d][l][t]) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

namespace {

// Report number format: 7 significant digits, plain integers above 1e7.
std::string fmt_stat(double x) {
    if (std::isnan(x)) return "NA";
    char buf[48];
    if (std::abs(x) >= 1e7)
        std::snprintf(buf, sizeof(buf), "%.0f", x);
    else
        std::snprintf(buf, sizeof(buf), "%.7g", x);
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void summary_row(std::string& out, const std::string& left_name, double left,
                 const std::string& right_name, double right) {
    out += pad(left_name, 22) + pad(fmt_stat(left), 14) + pad(right_name, 26) + fmt_stat(right) +
           "\n";
}

void regression_block(std::string& out, const std::string& dependent, const std::string& method,
                      const RegressionResult& fit) {
    out += "Dependent Variable: " + dependent + "\n";
    out += "Method: " + method + "\n";
    out += "Included observations: " + std::to_string(fit.n) + "\n";
    out += pad("", 16) + pad("Coefficient", 14) + pad("Std. Error", 14) + pad("t-Statistic", 14) +
           "Prob.\n";
    for (const auto& row : fit.coefficients)
        out += pad(row.name, 16) + pad(fmt_stat(row.estimate), 14) +
               pad(fmt_stat(row.std_error), 14) + pad(fmt_stat(row.t_statistic), 14) +
               (std::isnan(row.p_value) ? "NA" : fmt_stat(row.p_value)) + "\n";
    summary_row(out, "R-squared", fit.r_squared, "Mean dependent var", fit.summary.mean_dependent);
    summary_row(out, "Adjusted R-squared", fit.adjusted_r_squared, "S.D. dependent var",
                fit.summary.sd_dependent);
    summary_row(out, "S.E. of regression", fit.summary.se_of_regression, "Akaike info criterion",
                fit.summary.aic);
    summary_row(out, "Sum squared resid", fit.sum_squared_resid, "Schwarz criterion",
                fit.summary.schwarz);
    summary_row(out, "Log likelihood", fit.summary.log_likelihood, "Hannan-Quinn criter.",
                fit.summary.hannan_quinn);
    if (fit.f_statistic)
        summary_row(out, "F-statistic", *fit.f_statistic, "Prob(F-statistic)", *fit.f_p);
    out += pad("Durbin-Watson stat", 22) + fmt_stat(fit.durbin_watson_stat) + "\n";
    if (fit.perfect_fit) out += "Perfect fit: likelihood-based statistics unavailable\n";
}

void render_dimension_text(std::string& out, const DimensionAnalysis& da,
                           const AnalysisConfig& config) {
    out += "================================================================\n";
    out += "Dimension: " + da.dimension + "\n";
    out += "================================================================\n";
    if (!da.error.empty()) {
        out += "ERROR: " + da.error + "\n\n";
        return;
    }

    out += "Stationarity screening (ADF, spec " + to_string(config.adf_spec) + ", lags " +
           std::to_string(config.adf_lags) + ", " + to_string(config.adf_level) + " level)\n";
    out += pad("  Level", 16) + pad("Stationary", 12) + pad("Diff", 6) + pad("Statistic", 12) +
           "Critical\n";
    for (const auto& [level, prep] : da.prepared) {
        const auto& rec = prep.record;
        const auto& last = rec.passes.back();
        out += pad("  " + level, 16) + pad(rec.initially_stationary ? "Yes" : "No", 12) +
               pad(std::to_string(rec.diff_order_applied), 6) + pad(fmt_stat(last.statistic), 12) +
               fmt_stat(last.critical_values.at(last.level)) +
               (rec.resolved ? "" : "  [unresolved at max diff order]") + "\n";
    }
    out += "\n";

    for (const auto& [level, fit] : da.segment_fits) {
        regression_block(out, "PAGEVIEWS(" + level + ")" +
                                  (fit.used_differenced_inputs ? " [differenced]" : ""),
                         "Least Squares", fit);
        out += "\n";
    }

    if (!da.composed) return;
    const auto& cm = *da.composed;
    out += "Composed model\n";
    out += cm.equation + "\n";
    regression_block(out, "PAGEVIEWS", "Least Squares (fixed segment slopes)", cm.intercept_fit);
    out += "\n";

    const auto& fit = cm.intercept_fit;
    if (!fit.perfect_fit) {
        try {
            const auto bg = breusch_godfrey(fit, config.bg_lags);
            out += "Breusch-Godfrey Serial Correlation LM Test:\n";
            out += pad("F-statistic", 22) + pad(fmt_stat(bg.f_statistic), 14) +
                   pad("Prob. F(" + std::to_string(bg.f_dof1) + "," + std::to_string(bg.f_dof2) +
                           ")",
                       26) +
                   fmt_stat(bg.f_p) + "\n";
            out += pad("Obs*R-squared", 22) + pad(fmt_stat(bg.obs_r_squared), 14) +
                   pad("Prob. Chi-Square(" + std::to_string(bg.chi2_dof) + ")", 26) +
                   fmt_stat(bg.chi2_p) + "\n\n";
        } catch (const std::runtime_error&) {
        }
        try {
            const auto bpg = breusch_pagan_godfrey(cm.unrestricted_fit);
            out += "Heteroskedasticity Test: Breusch-Pagan-Godfrey\n";
            out += pad("F-statistic", 22) + pad(fmt_stat(bpg.f_statistic), 14) +
                   pad("Prob. F(" + std::to_string(bpg.f_dof1) + "," +
                           std::to_string(bpg.f_dof2) + ")",
                       26) +
                   fmt_stat(bpg.f_p) + "\n";
            out += pad("Obs*R-squared", 22) + pad(fmt_stat(bpg.obs_r_squared), 14) +
                   pad("Prob. Chi-Square(" + std::to_string(bpg.chi2_dof) + ")", 26) +
                   fmt_stat(bpg.chi2_p) + "\n";
            out += pad("Scaled explained SS", 22) + pad(fmt_stat(bpg.scaled_explained_ss), 14) +
                   pad("Prob. Chi-Square(" + std::to_string(bpg.chi2_dof) + ")", 26) +
                   fmt_stat(bpg.scaled_p) + "\n\n";
        } catch (const std::runtime_error&) {
        }
        try {
            const auto jb = jarque_bera(fit.residuals);
            out += "Jarque-Bera: " + fmt_stat(jb.jb_statistic) + " Prob: " + fmt_stat(jb.p) +
                   "\n\n";
        } catch (const std::runtime_error&) {
        }
    }

    out += "Validation ledger:\n";
    int i = 0;
    for (const auto& step : cm.ledger.steps) {
        ++i;
        out += "  " + std::to_string(i) + ". " + pad(step.name, 26) + pad(to_string(step.verdict), 16);
        if (step.verdict != Verdict::NotApplicable)
            out += "statistic " + fmt_stat(step.statistic) + "  p/ref " + fmt_stat(step.p);
        if (!step.note.empty()) out += "  (" + step.note + ")";
        out += "\n";
    }
    out += "  Overall: " + to_string(cm.ledger.overall) + "\n\n";
}

}  // namespace

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json jnum(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double dnum(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json to_json(const TimeSeries& s) {
    return {{"label", s.label},
            {"start", s.start_period.str()},
            {"diff_order", s.diff_order},
            {"values", s.values}};
}

TimeSeries timeseries_from_json(const json& j) {
    TimeSeries s;
    s.label = j.at("label").get<std::string>();
    s.start_period = parse_period(j.at("start").get<std::string>());
    s.diff_order = j.at("diff_order").get<int>();
    s.values = j.at("values").get<std::vector<double>>();
    return s;
}

json to_json(const SummaryBlock& s) {
    return {{"se_of_regression", jnum(s.se_of_regression)},
            {"log_likelihood", jnum(s.log_likelihood)},
            {"aic", jnum(s.aic)},
            {"schwarz", jnum(s.schwarz)},
            {"hannan_quinn", jnum(s.hannan_quinn)},
            {"mean_dependent", jnum(s.mean_dependent)},
            {"sd_dependent", jnum(s.sd_dependent)},
            {"likelihood_available", s.likelihood_available}};
}

SummaryBlock summary_from_json(const json& j) {
    SummaryBlock s;
    s.se_of_regression = dnum(j.at("se_of_regression"));
    s.log_likelihood = dnum(j.at("log_likelihood"));
    s.aic = dnum(j.at("aic"));
    s.schwarz = dnum(j.at("schwarz"));
    s.hannan_quinn = dnum(j.at("hannan_quinn"));
    s.mean_dependent = dnum(j.at("mean_dependent"));
    s.sd_dependent = dnum(j.at("sd_dependent"));
    s.likelihood_available = j.at("likelihood_available").get<bool>();
    return s;
}

json to_json(const RegressionResult& r) {
    json coefs = json::array();
    for (const auto& c : r.coefficients)
        coefs.push_back({{"name", c.name},
                         {"estimate", jnum(c.estimate)},
                         {"std_error", jnum(c.std_error)},
                         {"t_statistic", jnum(c.t_statistic)},
                         {"p_value", jnum(c.p_value)}});
    json design = json::array();
    for (std::size_t j = 0; j < r.design.k(); ++j)
        design.push_back({{"name", r.design.column_names[j]}, {"values", r.design.columns[j]}});
    return {{"coefficients", coefs},
            {"n", r.n},
            {"k", r.k},
            {"residuals", r.residuals},
            {"fitted", r.fitted},
            {"r_squared", jnum(r.r_squared)},
            {"adjusted_r_squared", jnum(r.adjusted_r_squared)},
            {"sum_squared_resid", jnum(r.sum_squared_resid)},
            {"summary", to_json(r.summary)},
            {"durbin_watson", jnum(r.durbin_watson_stat)},
            {"f_statistic", r.f_statistic ? json(*r.f_statistic) : json(nullptr)},
            {"f_p", r.f_p ? json(*r.f_p) : json(nullptr)},
            {"intercept_included", r.intercept_included},
            {"used_differenced_inputs", r.used_differenced_inputs},
            {"perfect_fit", r.perfect_fit},
            {"design", design},
            {"response", r.response}};
}

RegressionResult regression_from_json(const json& j) {
    RegressionResult r;
    for (const auto& c : j.at("coefficients")) {
        CoefficientRow row;
        row.name = c.at("name").get<std::string>();
        row.estimate = dnum(c.at("estimate"));
        row.std_error = dnum(c.at("std_error"));
        row.t_statistic = dnum(c.at("t_statistic"));
        row.p_value = dnum(c.at("p_value"));
        r.coefficients.push_back(std::move(row));
    }
    r.n = j.at("n").get<long>();
    r.k = j.at("k").get<long>();
    r.residuals = j.at("residuals").get<std::vector<double>>();
    r.fitted = j.at("fitted").get<std::vector<double>>();
    r.r_squared = dnum(j.at("r_squared"));
    r.adjusted_r_squared = dnum(j.at("adjusted_r_squared"));
    r.sum_squared_resid = dnum(j.at("sum_squared_resid"));
    r.summary = summary_from_json(j.at("summary"));
    r.durbin_watson_stat = dnum(j.at("durbin_watson"));
    if (!j.at("f_statistic").is_null()) r.f_statistic = j.at("f_statistic").get<double>();
    if (!j.at("f_p").is_null()) r.f_p = j.at("f_p").get<double>();
    r.intercept_included = j.at("intercept_included").get<bool>();
    r.used_differenced_inputs = j.at("used_differenced_inputs").get<bool>();
    r.perfect_fit = j.at("perfect_fit").get<bool>();
    for (const auto& col : j.at("design"))
        r.design.add_column(col.at("name").get<std::string>(),
                            col.at("values").get<std::vector<double>>());
    r.response = j.at("response").get<std::vector<double>>();
    return r;
}

json to_json(const AdfResult& a) {
    json cv;
    for (const auto& [level, value] : a.critical_values) cv[to_string(level)] = jnum(value);
    return {{"statistic", jnum(a.statistic)},
            {"critical_values", cv},
            {"spec", to_string(a.spec)},
            {"lags", a.lags},
            {"n_effective", a.n_effective},
            {"level", to_string(a.level)},
            {"reject_unit_root", a.reject_unit_root}};
}

AdfResult adf_from_json(const json& j) {
    AdfResult a;
    a.statistic = dnum(j.at("statistic"));
    for (const auto& [key, value] : j.at("critical_values").items())
        a.critical_values[parse_signif_level(key)] = dnum(value);
    a.spec = parse_determ_spec(j.at("spec").get<std::string>());
    a.lags = j.at("lags").get<int>();
    a.n_effective = j.at("n_effective").get<long>();
    a.level = parse_signif_level(j.at("level").get<std::string>());
    a.reject_unit_root = j.at("reject_unit_root").get<bool>();
    return a;
}

json to_json(const StationarityRecord& r) {
    json passes = json::array();
    for (const auto& p : r.passes) passes.push_back(to_json(p));
    return {{"variable", r.variable},
            {"initially_stationary", r.initially_stationary},
            {"diff_order_applied", r.diff_order_applied},
            {"resolved", r.resolved},
            {"passes", passes}};
}

StationarityRecord record_from_json(const json& j) {
    StationarityRecord r;
    r.variable = j.at("variable").get<std::string>();
    r.initially_stationary = j.at("initially_stationary").get<bool>();
    r.diff_order_applied = j.at("diff_order_applied").get<int>();
    r.resolved = j.at("resolved").get<bool>();
    for (const auto& p : j.at("passes")) r.passes.push_back(adf_from_json(p));
    return r;
}

json to_json(const ValidationLedger& l) {
    json steps = json::array();
    for (const auto& s : l.steps)
        steps.push_back({{"name", s.name},
                         {"verdict", to_string(s.verdict)},
                         {"statistic", jnum(s.statistic)},
                         {"p", jnum(s.p)},
                         {"note", s.note}});
    return {{"steps", steps}, {"overall", to_string(l.overall)}};
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "pass") return Verdict::Pass;
    if (s == "fail") return Verdict::Fail;
    if (s == "waived") return Verdict::Waived;
    if (s == "not-applicable") return Verdict::NotApplicable;
    throw configuration_error("unknown verdict '" + s + "'");
}

OverallVerdict overall_from_string(const std::string& s) {
    if (s == "pass") return OverallVerdict::Pass;
    if (s == "fail-with-note") return OverallVerdict::FailWithNote;
    if (s == "fail") return OverallVerdict::Fail;
    throw configuration_error("unknown overall verdict '" + s + "'");
}

ValidationLedger ledger_from_json(const json& j) {
    ValidationLedger l;
    for (const auto& s : j.at("steps")) {
        LedgerStep step;
        step.name = s.at("name").get<std::string>();
        step.verdict = verdict_from_string(s.at("verdict").get<std::string>());
        step.statistic = dnum(s.at("statistic"));
        step.p = dnum(s.at("p"));
        step.note = s.at("note").get<std::string>();
        l.steps.push_back(std::move(step));
    }
    l.overall = overall_from_string(j.at("overall").get<std::string>());
    return l;
}

json to_json(const ComposedModel& c) {
    json slopes = json::array();
    for (const auto& [name, value] : c.slopes)
        slopes.push_back({{"name", name}, {"estimate", jnum(value)}});
    return {{"dimension", c.dimension},
            {"slopes", slopes},
            {"intercept_fit", to_json(c.intercept_fit)},
            {"unrestricted_fit", to_json(c.unrestricted_fit)},
            {"equation", c.equation},
            {"ledger", to_json(c.ledger)}};
}

ComposedModel composed_from_json(const json& j) {
    ComposedModel c;
    c.dimension = j.at("dimension").get<std::string>();
    for (const auto& s : j.at("slopes"))
        c.slopes.emplace_back(s.at("name").get<std::string>(), dnum(s.at("estimate")));
    c.intercept_fit = regression_from_json(j.at("intercept_fit"));
    c.unrestricted_fit = regression_from_json(j.at("unrestricted_fit"));
    c.equation = j.at("equation").get<std::string>();
    c.ledger = ledger_from_json(j.at("ledger"));
    return c;
}

json to_json(const AnalysisConfig& c) {
    return {{"alpha", c.alpha},
            {"r2_threshold", c.r2_threshold},
            {"max_diff_order", c.max_diff_order},
            {"adf_spec", to_string(c.adf_spec)},
            {"adf_lags", c.adf_lags},
            {"adf_level", to_string(c.adf_level)},
            {"bg_lags", c.bg_lags}};
}

AnalysisConfig config_from_json(const json& j) {
    AnalysisConfig c;
    c.alpha = j.at("alpha").get<double>();
    c.r2_threshold = j.at("r2_threshold").get<double>();
    c.max_diff_order = j.at("max_diff_order").get<int>();
    c.adf_spec = parse_determ_spec(j.at("adf_spec").get<std::string>());
    c.adf_lags = j.at("adf_lags").get<int>();
    c.adf_level = parse_signif_level(j.at("adf_level").get<std::string>());
    c.bg_lags = j.at("bg_lags").get<int>();
    return c;
}

json to_json(const AnalysisReport& r) {
    json dims = json::array();
    for (const auto& da : r.dimensions) {
        json prepared = json::array();
        for (const auto& [level, prep] : da.prepared)
            prepared.push_back({{"level", level},
                                {"processed_visits", to_json(prep.processed_visits)},
                                {"record", to_json(prep.record)}});
        json fits = json::array();
        for (const auto& [level, fit] : da.segment_fits)
            fits.push_back({{"level", level}, {"fit", to_json(fit)}});
        dims.push_back({{"dimension", da.dimension},
                        {"prepared", prepared},
                        {"segment_fits", fits},
                        {"composed", da.composed ? to_json(*da.composed) : json(nullptr)},
                        {"error", da.error}});
    }
    return {{"dimensions", dims},
            {"first_period", r.first_period.str()},
            {"last_period", r.last_period.str()},
            {"n_periods", r.n_periods},
            {"total_pageviews_sum", r.total_pageviews_sum},
            {"config", to_json(r.config)}};
}

}  // namespace

std::string report_to_json(const AnalysisReport& report) { return to_json(report).dump(2); }

AnalysisReport report_from_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    AnalysisReport r;
    for (const auto& jd : j.at("dimensions")) {
        DimensionAnalysis da;
        da.dimension = jd.at("dimension").get<std::string>();
        for (const auto& jp : jd.at("prepared"))
            da.prepared.emplace(jp.at("level").get<std::string>(),
                                PreparedLevel{timeseries_from_json(jp.at("processed_visits")),
                                              record_from_json(jp.at("record"))});
        for (const auto& jf : jd.at("segment_fits"))
            da.segment_fits.emplace(jf.at("level").get<std::string>(),
                                    regression_from_json(jf.at("fit")));
        if (!jd.at("composed").is_null()) da.composed = composed_from_json(jd.at("composed"));
        da.error = jd.at("error").get<std::string>();
        r.dimensions.push_back(std::move(da));
    }
    r.first_period = parse_period(j.at("first_period").get<std::string>());
    r.last_period = parse_period(j.at("last_period").get<std::string>());
    r.n_periods = j.at("n_periods").get<long>();
    r.total_pageviews_sum = j.at("total_pageviews_sum").get<std::int64_t>();
    r.config = config_from_json(j.at("config"));
    return r;
}

std::string render_report(const AnalysisReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) return report_to_json(report);
    std::string out;
    out += "Web traffic decomposition report\n";
    out += "Sample: " + report.first_period.str() + " .. " + report.last_period.str() + " (" +
           std::to_string(report.n_periods) + " periods)\n";
    out += "Total page views: " + std::to_string(report.total_pageviews_sum) + "\n";
    out += "Config: alpha " + fmt_stat(report.config.alpha) + ", R-squared threshold " +
           fmt_stat(report.config.r2_threshold) + ", max diff order " +
           std::to_string(report.config.max_diff_order) + ", BG lags " +
           std::to_string(report.config.bg_lags) + "\n\n";
    for (const auto& da : report.dimensions) render_dimension_text(out, da, report.config);
    return out;
}

std::string emit_plot_data(const ComposedModel& composed, const SegmentedDataset& dataset) {
    const auto& fit = composed.intercept_fit;
    std::string out = "period,actual_pageviews,fitted,residual\n";
    for (std::size_t t = 0; t < dataset.periods.size(); ++t)
        out += dataset.periods[t].str() + "," + std::to_string(dataset.total_pageviews[t]) + "," +
               fmt_stat(fit.fitted[t]) + "," + fmt_stat(fit.residuals[t]) + "\n";
    return out;
}

}  // namespace webts
