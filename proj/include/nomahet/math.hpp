#pragma once

namespace nomahet {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double reg_lower_gamma(double a, double x);

// CDF of the noncentral chi-square distribution with 2 degrees of freedom
// and noncentrality lambda, evaluated as a Poisson mixture of Erlang CDFs.
double ncx2_cdf(double x, double lambda);

// p-quantile of the same distribution, found by bisection on the CDF down
// to a relative interval width of 1e-9.
double ncx2_quantile(double p, double lambda);

}  // namespace nomahet
