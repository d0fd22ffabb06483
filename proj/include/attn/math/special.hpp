#pragma once

#include <cstddef>

namespace attn::math {

/// log of the modified Bessel function I_nu(z), nu > -1, z >= 0.
///
/// Evaluated entirely in log space so it stays finite far beyond the
/// overflow range of I_nu itself (z up to ~1e7, nu up to ~1e6).
/// Small arguments use the power series with term-wise log-sum-exp;
/// large arguments switch to the uniform (large-order) or Hankel
/// (large-argument) asymptotic expansions.
double log_bessel_i(double nu, double z);

/// Standard normal density, CDF and quantile.
double norm_pdf(double x);
double norm_cdf(double x);
/// Inverse of norm_cdf (Wichura's AS 241, full double precision).
double norm_quantile(double p);

/// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

/// Noncentral chi-squared log density with df degrees of freedom and
/// noncentrality ncp, at x > 0.
double ncchi2_logpdf(double x, double df, double ncp);

/// Noncentral chi-squared CDF. Robust for the very large df/ncp values
/// produced by daily-frequency square-root diffusion transitions.
double ncchi2_cdf(double x, double df, double ncp);

/// Regularized incomplete gamma P(a, x) (used by test oracles as well).
double gamma_p(double a, double x);

} // namespace attn::math
