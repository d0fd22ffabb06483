#pragma once

#include "attn/core.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace attn::estimate {

struct CirFit {
  double a = 0.0;
  double b = 0.0;
  double sigma_I = 0.0;
  double loglik = 0.0;
  bool converged = false;
  int iterations = 0;
};

struct LagCriterion {
  int lag = 0;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
};

struct PriceFit {
  double mu = 0.0;
  double sigma_P = 0.0;
  double tau = 0.0;  // selected lag times delta
  int lag = 0;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  bool sigma_zero = false;  // all returns equal mu*delta exactly
  std::vector<LagCriterion> criterion_table;
};

struct CmleResult {
  double mu = 0.0;
  double sigma_P = 0.0;
  double loglik = 0.0;
  bool sigma_zero = false;
};

struct ResidualResult {
  std::vector<double> values;
  int n_clamped = 0;  // transition CDF hit 0 or 1 and was clamped
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// Log transition density of the square-root attention process over one
/// step delta, computed fully in log space.
double cir_logdensity(double y_next, double y_prev, double a, double b, double sigma_I,
                      double delta);

/// Sum of log transition densities along a positive series; -inf when
/// any transition is numerically impossible.
double cir_loglik(std::span<const double> series, double a, double b, double sigma_I,
                  double delta);

/// Maximum likelihood fit of (a, b, sigma_I) subject to 2ab >= sigma_I^2.
/// Simplex search over log-parameters, initialised by conditional least
/// squares unless an explicit starting point is given. Series shorter
/// than 30 observations are rejected.
CirFit fit_cir_mle(std::span<const double> series, double delta,
                   std::optional<std::array<double, 3>> init = std::nullopt);

/// Trapezoid estimates z_j of the integrated delayed attention over each
/// return interval: z_j = delta/2 * (y_{j-k} + y_{j-1-k}), j = 1..N.
/// `proxy` holds y_{-m_lag}..y_N.
std::vector<double> integrated_interest(std::span<const double> proxy, int m_lag, int k,
                                        double delta, int n_returns);

/// Closed-form conditional MLE of drift and volatility scale given the
/// integrated attention weights.
CmleResult fit_price_cmle(std::span<const double> returns, std::span<const double> z,
                          double delta);

/// Fit every candidate lag 0..M and keep the conditional-likelihood
/// maximiser; ties go to the smallest lag.
PriceFit select_lag(const SeriesPair& series);

/// Transition-CDF transform of consecutive observations mapped through
/// the standard normal quantile; standard normal iff the fit is right.
ResidualResult generalized_residuals(std::span<const double> series, const CirFit& fit,
                                     double delta);

/// One-sample Kolmogorov-Smirnov test against the standard normal, with
/// the asymptotic p-value (Kolmogorov series).
KsResult ks_test_normal(std::span<const double> residuals);

} // namespace attn::estimate
