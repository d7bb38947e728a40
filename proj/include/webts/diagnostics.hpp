#pragma once

#include <map>
#include <string>
#include <vector>

#include "webts/ols.hpp"

namespace webts {

struct LmTestResult {
    double f_statistic = 0.0;
    double f_p = 0.0;
    double obs_r_squared = 0.0;
    double chi2_p = 0.0;
    int lags = 0;
    int f_dof1 = 0;
    long f_dof2 = 0;
    int chi2_dof = 0;
};

struct HeteroTestResult {
    double f_statistic = 0.0;
    double f_p = 0.0;
    double obs_r_squared = 0.0;
    double chi2_p = 0.0;
    double scaled_explained_ss = 0.0;
    double scaled_p = 0.0;
    int f_dof1 = 0;
    long f_dof2 = 0;
    int chi2_dof = 0;
};

struct NormalityResult {
    double skewness = 0.0;
    double kurtosis = 0.0;  // raw, not excess
    double jb_statistic = 0.0;
    double p = 0.0;
};

enum class Sign { Positive, Negative };

struct SignCheckEntry {
    std::string name;
    double estimate = 0.0;
    Sign expected = Sign::Positive;
    bool pass = false;
};

struct SignCheckResult {
    std::vector<SignCheckEntry> slopes;
    bool overall_pass = false;
};

// Breusch-Godfrey serial-correlation LM test: residuals regressed on the
// original design plus q lagged residuals (pre-sample lags zero-filled,
// keeping n constant).
LmTestResult breusch_godfrey(const RegressionResult& fit, int lags);

// Breusch-Pagan-Godfrey: squared residuals on the original design.
HeteroTestResult breusch_pagan_godfrey(const RegressionResult& fit);

// Jarque-Bera with moment divisor n and raw kurtosis; p is the chi-square(2)
// upper tail.
NormalityResult jarque_bera(const std::vector<double>& residuals);

// Strict sign test: a zero estimate fails either expectation.
SignCheckResult sign_check(const RegressionResult& fit,
                           const std::map<std::string, Sign>& expected);

}  // namespace webts
