#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "webts/linalg.hpp"

namespace webts {

struct CoefficientRow {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double t_statistic = 0.0;
    double p_value = 0.0;
};

// The summary block econometrics packages print under a coefficient table.
struct SummaryBlock {
    double se_of_regression = 0.0;
    double log_likelihood = 0.0;
    double aic = 0.0;
    double schwarz = 0.0;
    double hannan_quinn = 0.0;
    double mean_dependent = 0.0;
    double sd_dependent = 0.0;
    bool likelihood_available = true;  // false for perfect fits (ssr = 0)
};

struct RegressionResult {
    std::vector<CoefficientRow> coefficients;
    long n = 0;
    long k = 0;
    std::vector<double> residuals;
    std::vector<double> fitted;
    double r_squared = 0.0;
    double adjusted_r_squared = 0.0;
    double sum_squared_resid = 0.0;
    SummaryBlock summary;
    double durbin_watson_stat = 0.0;  // NaN when residuals are degenerate
    std::optional<double> f_statistic;
    std::optional<double> f_p;
    bool intercept_included = false;
    bool used_differenced_inputs = false;
    bool perfect_fit = false;

    // Carried so residual diagnostics can rebuild their auxiliary regressions.
    DesignMatrix design;
    std::vector<double> response;

    const CoefficientRow* find_coefficient(const std::string& name) const;
};

using NamedSeries = std::pair<std::string, std::vector<double>>;

// OLS with the full regression summary block. Intercept column is named C when
// included; p-values use Student-t with n-k dof.
RegressionResult fit_ols(const std::vector<NamedSeries>& regressors,
                         const std::vector<double>& response, bool include_intercept);

// Fixed-slope fit: only the intercept C(1) is estimated, as
// mean(response - sum slope_s * regressor_s). R-squared is computed against
// the response's own total sum of squares.
RegressionResult fit_restricted(const std::vector<std::pair<std::string, double>>& fixed_slopes,
                                const std::vector<NamedSeries>& regressors,
                                const std::vector<double>& response);

SummaryBlock summarize_fit(long n, long k, double ssr, const std::vector<double>& response);

// Sum of squared successive differences over sum of squares; in [0,4].
double durbin_watson(const std::vector<double>& residuals);

}  // namespace webts
