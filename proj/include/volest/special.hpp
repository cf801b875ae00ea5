// Special functions and distribution tails used by every p-value in the library.
#pragma once

namespace volest {

/// Standard normal CDF. Absolute error below 1e-15 (delegates to erfc).
double norm_cdf(double x);

/// Standard normal density.
double norm_pdf(double x);

/// Inverse standard normal CDF (Wichura's AS 241, ~1e-15 relative).
/// Requires 0 < p < 1.
double norm_ppf(double p);

/// Regularized lower incomplete gamma P(a, x). Requires a > 0, x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b). Requires a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// Upper-tail chi-squared probability P(X > x) with k degrees of freedom.
double chi2_sf(double x, double k);

/// Upper-tail F probability P(F > x) with (d1, d2) degrees of freedom.
double f_sf(double x, double d1, double d2);

/// Two-sided Student-t p-value P(|T| > t) with nu degrees of freedom.
double t_sf_two_sided(double t, double nu);

/// Log density of the standardized (unit-variance) Student-t distribution.
/// Requires nu > 2 so the variance rescaling is defined.
double student_t_logpdf(double x, double nu);

/// Log density of the standard normal distribution.
double normal_logpdf(double x);

}  // namespace volest
