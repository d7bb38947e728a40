#pragma once

namespace webts {

// Standard normal CDF.
double normal_cdf(double x);

// Student-t CDF, dof >= 1.
double student_t_cdf(double x, int dof);

// Two-sided p-value 2*(1 - F(|t|)) at the given degrees of freedom.
double student_t_two_sided_p(double t, int dof);

// Chi-square CDF (regularized lower incomplete gamma), x >= 0, dof >= 1.
double chi_square_cdf(double x, int dof);
double chi_square_upper_p(double x, int dof);

// F-distribution CDF via the regularized incomplete beta, x >= 0.
double f_cdf(double x, int d1, int d2);
double f_upper_p(double x, int d1, int d2);

// Exposed for cross-checks: regularized P(a,x) and I_x(a,b).
double regularized_gamma_p(double a, double x);
double regularized_beta(double x, double a, double b);

}  // namespace webts
