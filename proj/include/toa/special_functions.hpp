#pragma once

namespace toa::special {

/**
 * Regularized lower incomplete gamma P(a, x).
 *
 * Power series x^a e^-x / Gamma(a+1) * sum x^k / ((a+1)...(a+k)) when
 * x < 1 or x < a, otherwise 1 - igamc(a, x). Same split as Cephes igam.
 */
double igam(double a, double x);

/**
 * Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
 *
 * Legendre continued fraction evaluated with the three-term recurrence
 * (with rescaling) for x >= max(1, a); via the series otherwise.
 * NIST SP 800-22 p-values are igamc(dof / 2, chi2 / 2).
 */
double igamc(double a, double x);

/// Complementary error function; the C++ standard library's std::erfc.
double erfc(double x);

/// Standard normal CDF, 0.5 * erfc(-x / sqrt 2).
double normal_cdf(double x);

}  // namespace toa::special
