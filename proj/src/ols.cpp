#include "webts/ols.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "webts/distributions.hpp"
#include "webts/errors.hpp"

namespace webts {

namespace {

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double centered_sst(const std::vector<double>& y) {
    const double m = mean_of(y);
    double s = 0.0;
    for (double v : y) s += (v - m) * (v - m);
    return s;
}

bool is_perfect_fit(double ssr, double sst) { return ssr <= 1e-12 * std::max(sst, 1.0); }

}  // namespace

const CoefficientRow* RegressionResult::find_coefficient(const std::string& name) const {
    for (const auto& row : coefficients)
        if (row.name == name) return &row;
    return nullptr;
}

SummaryBlock summarize_fit(long n, long k, double ssr, const std::vector<double>& response) {
    if (n <= k) throw insufficient_observations_error("summarize_fit: need n > k");
    if (ssr < 0.0) throw domain_error("summarize_fit: negative ssr");
    SummaryBlock s;
    s.mean_dependent = mean_of(response);
    s.sd_dependent = response.size() > 1
                         ? std::sqrt(centered_sst(response) / static_cast<double>(response.size() - 1))
                         : 0.0;
    s.se_of_regression = std::sqrt(ssr / static_cast<double>(n - k));
    if (ssr <= 0.0) {
        s.likelihood_available = false;
        s.log_likelihood = s.aic = s.schwarz = s.hannan_quinn =
            std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(k);
    s.log_likelihood = -(dn / 2.0) * (1.0 + std::log(2.0 * std::numbers::pi) + std::log(ssr / dn));
    s.aic = (-2.0 * s.log_likelihood + 2.0 * dk) / dn;
    s.schwarz = (-2.0 * s.log_likelihood + dk * std::log(dn)) / dn;
    s.hannan_quinn = (-2.0 * s.log_likelihood + 2.0 * dk * std::log(std::log(dn))) / dn;
    return s;
}

double durbin_watson(const std::vector<double>& residuals) {
    if (residuals.size() < 2)
        throw insufficient_observations_error("durbin_watson: need at least 2 residuals");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        den += residuals[t] * residuals[t];
        if (t > 0) {
            const double d = residuals[t] - residuals[t - 1];
            num += d * d;
        }
    }
    if (den == 0.0) throw degenerate_residuals_error("durbin_watson: all residuals are zero");
    return num / den;
}

static RegressionResult finish_fit(DesignMatrix design, std::vector<double> response,
                                   std::vector<double> beta,
                                   const std::vector<std::vector<double>>* xtx_inverse,
                                   bool intercept_included) {
    RegressionResult r;
    const std::size_t n = response.size();
    const std::size_t k = design.k();
    r.n = static_cast<long>(n);
    r.k = static_cast<long>(k);
    r.intercept_included = intercept_included;

    r.fitted.assign(n, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) r.fitted[i] += beta[j] * design.columns[j][i];
    r.residuals.resize(n);
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r.residuals[i] = response[i] - r.fitted[i];
        ssr += r.residuals[i] * r.residuals[i];
    }
    r.sum_squared_resid = ssr;

    const double sst = centered_sst(response);
    r.perfect_fit = is_perfect_fit(ssr, sst);
    r.r_squared = sst > 0.0 ? 1.0 - ssr / sst : (r.perfect_fit ? 1.0 : 0.0);
    if (r.perfect_fit) r.r_squared = 1.0;
    r.adjusted_r_squared =
        n > k ? 1.0 - (1.0 - r.r_squared) * static_cast<double>(n - 1) / static_cast<double>(n - k)
              : r.r_squared;

    r.summary = summarize_fit(r.n, r.k, r.perfect_fit ? 0.0 : ssr, response);

    const double sigma2 = r.perfect_fit ? 0.0 : ssr / static_cast<double>(n - k);
    for (std::size_t j = 0; j < k; ++j) {
        CoefficientRow row;
        row.name = design.column_names[j];
        row.estimate = beta[j];
        row.std_error = xtx_inverse ? std::sqrt(sigma2 * (*xtx_inverse)[j][j]) : 0.0;
        if (row.std_error > 0.0) {
            row.t_statistic = row.estimate / row.std_error;
            row.p_value = student_t_two_sided_p(row.t_statistic, static_cast<int>(n - k));
        } else {
            row.t_statistic = std::numeric_limits<double>::quiet_NaN();
            row.p_value = std::numeric_limits<double>::quiet_NaN();
        }
        r.coefficients.push_back(std::move(row));
    }

    r.durbin_watson_stat =
        r.perfect_fit ? std::numeric_limits<double>::quiet_NaN() : durbin_watson(r.residuals);

    if (intercept_included && k >= 2 && !r.perfect_fit && sst > 0.0) {
        const double f = (r.r_squared / static_cast<double>(k - 1)) /
                         ((1.0 - r.r_squared) / static_cast<double>(n - k));
        r.f_statistic = f;
        r.f_p = f_upper_p(f, static_cast<int>(k - 1), static_cast<int>(n - k));
    }

    r.design = std::move(design);
    r.response = std::move(response);
    return r;
}

RegressionResult fit_ols(const std::vector<NamedSeries>& regressors,
                         const std::vector<double>& response, bool include_intercept) {
    if (regressors.empty() && !include_intercept)
        throw configuration_error("fit_ols: no regressors and no intercept");
    const std::size_t n = response.size();
    DesignMatrix X;
    for (const auto& [name, values] : regressors) {
        if (values.size() != n)
            throw configuration_error("fit_ols: regressor '" + name + "' length mismatch");
        X.add_column(name, values);
    }
    if (include_intercept) X.add_column("C", std::vector<double>(n, 1.0));
    auto sol = least_squares_solve(X, response);
    return finish_fit(std::move(X), response, std::move(sol.beta), &sol.xtx_inverse,
                      include_intercept);
}

RegressionResult fit_restricted(const std::vector<std::pair<std::string, double>>& fixed_slopes,
                                const std::vector<NamedSeries>& regressors,
                                const std::vector<double>& response) {
    if (fixed_slopes.size() != regressors.size())
        throw configuration_error("fit_restricted: slope/regressor count mismatch");
    const std::size_t n = response.size();
    if (n < 2) throw insufficient_observations_error("fit_restricted: need n >= 2");

    // One slope per regressor, matched by name.
    std::vector<double> adjusted = response;
    for (const auto& [name, slope] : fixed_slopes) {
        const std::vector<double>* series = nullptr;
        for (const auto& [rname, values] : regressors)
            if (rname == name) series = &values;
        if (!series)
            throw configuration_error("fit_restricted: no regressor named '" + name + "'");
        if (series->size() != n)
            throw configuration_error("fit_restricted: regressor '" + name + "' length mismatch");
        for (std::size_t i = 0; i < n; ++i) adjusted[i] -= slope * (*series)[i];
    }

    const double intercept = mean_of(adjusted);

    RegressionResult r;
    r.n = static_cast<long>(n);
    r.k = 1;
    r.intercept_included = true;
    r.residuals.resize(n);
    r.fitted.resize(n);
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r.residuals[i] = adjusted[i] - intercept;
        r.fitted[i] = response[i] - r.residuals[i];
        ssr += r.residuals[i] * r.residuals[i];
    }
    r.sum_squared_resid = ssr;

    const double sst = centered_sst(response);
    r.perfect_fit = is_perfect_fit(ssr, sst);
    r.r_squared = sst > 0.0 ? 1.0 - ssr / sst : (r.perfect_fit ? 1.0 : 0.0);
    if (r.perfect_fit) r.r_squared = 1.0;
    r.adjusted_r_squared = r.r_squared;  // k = 1: penalty cancels

    r.summary = summarize_fit(r.n, r.k, r.perfect_fit ? 0.0 : ssr, response);

    CoefficientRow row;
    row.name = "C(1)";
    row.estimate = intercept;
    const double sigma2 = r.perfect_fit ? 0.0 : ssr / static_cast<double>(n - 1);
    row.std_error = std::sqrt(sigma2 / static_cast<double>(n));
    if (row.std_error > 0.0) {
        row.t_statistic = row.estimate / row.std_error;
        row.p_value = student_t_two_sided_p(row.t_statistic, static_cast<int>(n - 1));
    } else {
        row.t_statistic = std::numeric_limits<double>::quiet_NaN();
        row.p_value = std::numeric_limits<double>::quiet_NaN();
    }
    r.coefficients.push_back(std::move(row));

    r.durbin_watson_stat =
        r.perfect_fit ? std::numeric_limits<double>::quiet_NaN() : durbin_watson(r.residuals);

    DesignMatrix design;
    design.add_column("C(1)", std::vector<double>(n, 1.0));
    r.design = std::move(design);
    r.response = response;
    return r;
}

}  // namespace webts
