#include "webts/diagnostics.hpp"

#include <cmath>

#include "webts/distributions.hpp"
#include "webts/errors.hpp"

namespace webts {

namespace {

void require_live_residuals(const RegressionResult& fit, const char* who) {
    if (fit.residuals.empty())
        throw degenerate_residuals_error(std::string(who) + ": fit carries no residuals");
    double ss = 0.0;
    for (double e : fit.residuals) ss += e * e;
    if (ss == 0.0 || fit.perfect_fit)
        throw degenerate_residuals_error(std::string(who) + ": residuals are all zero");
}

// Auxiliary regression reusing the fit's own design columns verbatim
// (including its constant, if any).
RegressionResult aux_fit(const DesignMatrix& design, const std::vector<double>& response) {
    std::vector<NamedSeries> regressors;
    for (std::size_t j = 0; j < design.k(); ++j)
        regressors.emplace_back(design.column_names[j], design.columns[j]);
    return fit_ols(regressors, response, /*include_intercept=*/false);
}

}  // namespace

LmTestResult breusch_godfrey(const RegressionResult& fit, int lags) {
    if (lags < 1) throw configuration_error("breusch_godfrey: lags must be >= 1");
    require_live_residuals(fit, "breusch_godfrey");
    const long n = fit.n;
    const long k = fit.k;
    if (n <= k + lags)
        throw insufficient_observations_error("breusch_godfrey: need n > k + lags");

    std::vector<NamedSeries> regressors;
    for (std::size_t j = 0; j < fit.design.k(); ++j)
        regressors.emplace_back(fit.design.column_names[j], fit.design.columns[j]);
    for (int q = 1; q <= lags; ++q) {
        std::vector<double> lagged(n, 0.0);  // pre-sample residuals zero-filled
        for (long t = q; t < n; ++t) lagged[t] = fit.residuals[t - q];
        regressors.emplace_back("resid_lag" + std::to_string(q), std::move(lagged));
    }
    const auto aux = fit_ols(regressors, fit.residuals, /*include_intercept=*/false);

    LmTestResult r;
    r.lags = lags;
    r.chi2_dof = lags;
    r.f_dof1 = lags;
    r.f_dof2 = n - k - lags;
    r.obs_r_squared = static_cast<double>(n) * aux.r_squared;
    r.chi2_p = chi_square_upper_p(r.obs_r_squared, r.chi2_dof);
    r.f_statistic = (aux.r_squared / lags) /
                    ((1.0 - aux.r_squared) / static_cast<double>(r.f_dof2));
    r.f_p = f_upper_p(r.f_statistic, r.f_dof1, static_cast<int>(r.f_dof2));
    return r;
}

HeteroTestResult breusch_pagan_godfrey(const RegressionResult& fit) {
    require_live_residuals(fit, "breusch_pagan_godfrey");
    const long n = fit.n;
    const long k = fit.k;
    if (k < 2)
        throw configuration_error(
            "breusch_pagan_godfrey: fit has no slope regressors for the auxiliary regression");
    if (n <= k) throw insufficient_observations_error("breusch_pagan_godfrey: need n > k");

    std::vector<double> squared(fit.residuals.size());
    for (std::size_t i = 0; i < squared.size(); ++i)
        squared[i] = fit.residuals[i] * fit.residuals[i];
    const auto aux = aux_fit(fit.design, squared);

    HeteroTestResult r;
    r.chi2_dof = static_cast<int>(k - 1);
    r.f_dof1 = static_cast<int>(k - 1);
    r.f_dof2 = n - k;
    r.obs_r_squared = static_cast<double>(n) * aux.r_squared;
    r.chi2_p = chi_square_upper_p(r.obs_r_squared, r.chi2_dof);
    r.f_statistic = (aux.r_squared / r.f_dof1) /
                    ((1.0 - aux.r_squared) / static_cast<double>(r.f_dof2));
    r.f_p = f_upper_p(r.f_statistic, r.f_dof1, static_cast<int>(r.f_dof2));

    double mean_sq = 0.0;
    for (double s : squared) mean_sq += s;
    mean_sq /= static_cast<double>(n);
    double tss = 0.0;
    for (double s : squared) tss += (s - mean_sq) * (s - mean_sq);
    const double ess = tss - aux.sum_squared_resid;
    const double sigma2 = fit.sum_squared_resid / static_cast<double>(n);
    r.scaled_explained_ss = ess / (2.0 * sigma2 * sigma2);
    r.scaled_p = chi_square_upper_p(std::max(r.scaled_explained_ss, 0.0), r.chi2_dof);
    return r;
}

NormalityResult jarque_bera(const std::vector<double>& residuals) {
    const std::size_t n = residuals.size();
    if (n < 4) throw insufficient_observations_error("jarque_bera: need at least 4 residuals");
    double mean = 0.0;
    for (double e : residuals) mean += e;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double e : residuals) {
        const double d = e - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (m2 == 0.0) throw degenerate_residuals_error("jarque_bera: zero-variance residuals");

    NormalityResult r;
    r.skewness = m3 / std::pow(m2, 1.5);
    r.kurtosis = m4 / (m2 * m2);
    r.jb_statistic = (static_cast<double>(n) / 6.0) *
                     (r.skewness * r.skewness + (r.kurtosis - 3.0) * (r.kurtosis - 3.0) / 4.0);
    r.p = chi_square_upper_p(r.jb_statistic, 2);
    return r;
}

SignCheckResult sign_check(const RegressionResult& fit,
                           const std::map<std::string, Sign>& expected) {
    SignCheckResult result;
    result.overall_pass = true;
    for (const auto& [name, sign] : expected) {
        const auto* row = fit.find_coefficient(name);
        if (!row) throw configuration_error("sign_check: no coefficient named '" + name + "'");
        SignCheckEntry entry;
        entry.name = name;
        entry.estimate = row->estimate;
        entry.expected = sign;
        entry.pass = sign == Sign::Positive ? row->estimate > 0.0 : row->estimate < 0.0;
        result.overall_pass = result.overall_pass && entry.pass;
        result.slopes.push_back(std::move(entry));
    }
    return result;
}

}  // namespace webts
