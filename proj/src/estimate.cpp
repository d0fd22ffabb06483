#include "attn/estimate.hpp"

#include "attn/math/neldermead.hpp"
#include "attn/math/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace attn::estimate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct TransitionScheme {
  double c;  // 2a / (sigma^2 (1 - e^{-a delta}))
  double q;  // 2ab/sigma^2 - 1
  double edt;
};

TransitionScheme transition_scheme(double a, double b, double sigma_I, double delta) {
  const double edt = std::exp(-a * delta);
  const double denom = -std::expm1(-a * delta);  // 1 - e^{-a delta}, accurate near 0
  TransitionScheme s;
  s.c = 2.0 * a / (sigma_I * sigma_I * denom);
  s.q = 2.0 * a * b / (sigma_I * sigma_I) - 1.0;
  s.edt = edt;
  return s;
}

// Neumaier compensated summation.
struct Accum {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

} // namespace

double cir_logdensity(double y_next, double y_prev, double a, double b, double sigma_I,
                      double delta) {
  if (!(y_next > 0.0) || !(y_prev > 0.0))
    throw std::domain_error("cir_logdensity: observations must be positive");
  if (!(sigma_I > 0.0) || !(delta > 0.0))
    throw std::domain_error("cir_logdensity: sigma_I and delta must be positive");
  const TransitionScheme s = transition_scheme(a, b, sigma_I, delta);
  if (!(s.q + 1.0 > 0.0))
    throw std::domain_error("cir_logdensity: 2ab/sigma_I^2 must be positive");
  const double u = s.c * y_prev * s.edt;
  const double v = s.c * y_next;
  const double lb = math::log_bessel_i(s.q, 2.0 * std::sqrt(u * v));
  const double value = std::log(s.c) - (u + v) + 0.5 * s.q * std::log(v / u) + lb;
  return std::isnan(value) ? -kInf : value;
}

double cir_loglik(std::span<const double> series, double a, double b, double sigma_I,
                  double delta) {
  if (series.size() < 2) throw std::invalid_argument("cir_loglik: need at least two observations");
  for (double y : series)
    if (!(y > 0.0)) throw std::domain_error("cir_loglik: nonpositive observation");
  Accum acc;
  for (std::size_t j = 0; j + 1 < series.size(); ++j) {
    const double term = cir_logdensity(series[j + 1], series[j], a, b, sigma_I, delta);
    if (term == -kInf) return -kInf;
    acc.add(term);
  }
  return acc.value();
}

namespace {

// Conditional least squares on y_{j+1} ~ alpha + beta y_j; moment-matched
// starting point for the likelihood search.
std::array<double, 3> cls_init(std::span<const double> y, double delta) {
  const std::size_t n = y.size() - 1;
  double mx = 0.0, my = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    mx += y[j];
    my += y[j + 1];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sxx += (y[j] - mx) * (y[j] - mx);
    sxy += (y[j] - mx) * (y[j + 1] - my);
  }
  double beta = sxx > 0.0 ? sxy / sxx : 0.0;
  double alpha = my - beta * mx;
  double a0, b0;
  if (beta > 1e-6 && beta < 1.0 - 1e-8) {
    a0 = -std::log(beta) / delta;
    b0 = alpha / (1.0 - beta);
  } else {
    a0 = 1.0;
    b0 = my;
  }
  if (!(b0 > 0.0)) b0 = my > 0.0 ? my : 1.0;
  if (!(a0 > 0.0) || !std::isfinite(a0)) a0 = 1.0;
  double s2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double e = y[j + 1] - alpha - beta * y[j];
    s2 += e * e / y[j];
  }
  double sig0 = std::sqrt(s2 / (static_cast<double>(n) * delta));
  if (!(sig0 > 0.0) || !std::isfinite(sig0)) sig0 = 0.1;
  // Start inside the Feller region.
  const double cap = std::sqrt(2.0 * a0 * b0);
  if (sig0 > 0.99 * cap) sig0 = 0.99 * cap;
  return {a0, b0, sig0};
}

} // namespace

CirFit fit_cir_mle(std::span<const double> series, double delta,
                   std::optional<std::array<double, 3>> init) {
  if (series.size() < 30)
    throw std::invalid_argument("fit_cir_mle: need at least 30 observations");
  for (double y : series)
    if (!(y > 0.0)) throw std::domain_error("fit_cir_mle: nonpositive observation");

  const std::array<double, 3> start = init ? *init : cls_init(series, delta);
  const double n = static_cast<double>(series.size() - 1);

  auto objective = [&](const std::vector<double>& t) -> double {
    const double a = std::exp(t[0]), b = std::exp(t[1]), s = std::exp(t[2]);
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(s)) return kInf;
    double penalty = 0.0;
    const double gap = s * s - 2.0 * a * b;  // Feller violation when positive
    if (gap > 0.0) penalty = 1e3 * n * (1.0 + gap / (s * s));
    double ll;
    try {
      ll = cir_loglik(series, a, b, s, delta);
    } catch (const std::domain_error&) {
      return kInf;
    }
    if (ll == -kInf) return kInf;
    return -ll + penalty;
  };

  std::vector<double> t0 = {std::log(start[0]), std::log(start[1]), std::log(start[2])};
  auto run1 = math::nelder_mead(t0, 0.15, 1e-11, 400, objective);
  auto run2 = math::nelder_mead(run1.x, 0.02, 1e-12, 300, objective);

  CirFit fit;
  fit.a = std::exp(run2.x[0]);
  fit.b = std::exp(run2.x[1]);
  fit.sigma_I = std::exp(run2.x[2]);
  fit.iterations = run1.iterations + run2.iterations;
  fit.converged = run2.converged && std::isfinite(run2.value);
  fit.loglik = -run2.value;
  if (!std::isfinite(fit.loglik)) fit.converged = false;
  return fit;
}

std::vector<double> integrated_interest(std::span<const double> proxy, int m_lag, int k,
                                        double delta, int n_returns) {
  if (k < 0 || k > m_lag)
    throw std::domain_error("integrated_interest: lag outside the available history");
  if (static_cast<int>(proxy.size()) != m_lag + n_returns + 1)
    throw std::invalid_argument("integrated_interest: proxy length mismatch");
  std::vector<double> z(static_cast<std::size_t>(n_returns));
  for (int j = 1; j <= n_returns; ++j) {
    const double y1 = proxy[static_cast<std::size_t>(j - k + m_lag)];
    const double y0 = proxy[static_cast<std::size_t>(j - 1 - k + m_lag)];
    const double v = 0.5 * delta * (y1 + y0);
    if (!(v > 0.0)) throw std::domain_error("integrated_interest: nonpositive attention value");
    z[static_cast<std::size_t>(j - 1)] = v;
  }
  return z;
}

CmleResult fit_price_cmle(std::span<const double> returns, std::span<const double> z,
                          double delta) {
  if (returns.size() != z.size() || returns.size() < 2)
    throw std::invalid_argument("fit_price_cmle: need equal lengths of at least 2");
  const double n = static_cast<double>(returns.size());
  Accum num, den;
  for (std::size_t j = 0; j < returns.size(); ++j) {
    if (!(z[j] > 0.0)) throw std::domain_error("fit_price_cmle: nonpositive weight z");
    num.add(returns[j] / z[j]);
    den.add(1.0 / z[j]);
  }
  CmleResult out;
  out.mu = num.value() / (delta * den.value());
  Accum ss;
  for (std::size_t j = 0; j < returns.size(); ++j) {
    const double d = returns[j] - out.mu * delta;
    ss.add(d * d / z[j]);
  }
  out.sigma_P = std::sqrt(ss.value() / n);
  if (out.sigma_P == 0.0) {
    out.sigma_zero = true;
    out.loglik = kInf;
    return out;
  }
  Accum lz;
  for (double zj : z) lz.add(std::log(2.0 * M_PI * zj));
  out.loglik = -n * std::log(out.sigma_P) - 0.5 * lz.value() - 0.5 * n;
  return out;
}

PriceFit select_lag(const SeriesPair& series) {
  const int n = series.n_returns();
  const int m = series.max_lag();
  if (n < 1) throw std::invalid_argument("select_lag: need at least two log prices");
  std::vector<double> returns(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    returns[static_cast<std::size_t>(j)] =
        series.log_prices[static_cast<std::size_t>(j + 1)] -
        series.log_prices[static_cast<std::size_t>(j)];

  PriceFit fit;
  const double q_params = 2.0;  // mu and sigma_P
  double best = -kInf;
  for (int lag = 0; lag <= m; ++lag) {
    const auto z = integrated_interest(series.proxy, m, lag, series.delta, n);
    const auto res = fit_price_cmle(returns, z, series.delta);
    LagCriterion row;
    row.lag = lag;
    row.loglik = res.loglik;
    row.aic = 2.0 * q_params - 2.0 * res.loglik;
    row.bic = q_params * std::log(static_cast<double>(n)) - 2.0 * res.loglik;
    fit.criterion_table.push_back(row);
    if (res.loglik > best) {  // strict: ties keep the smaller lag
      best = res.loglik;
      fit.mu = res.mu;
      fit.sigma_P = res.sigma_P;
      fit.sigma_zero = res.sigma_zero;
      fit.lag = lag;
      fit.loglik = res.loglik;
      fit.aic = row.aic;
      fit.bic = row.bic;
    }
  }
  fit.tau = fit.lag * series.delta;
  return fit;
}

ResidualResult generalized_residuals(std::span<const double> series, const CirFit& fit,
                                     double delta) {
  if (series.size() < 2)
    throw std::invalid_argument("generalized_residuals: need at least two observations");
  const TransitionScheme s = transition_scheme(fit.a, fit.b, fit.sigma_I, delta);
  const double df = 2.0 * (s.q + 1.0);
  if (!(df > 0.0)) throw std::domain_error("generalized_residuals: invalid fitted parameters");
  ResidualResult out;
  out.values.reserve(series.size() - 1);
  constexpr double lo = 1e-12, hi = 1.0 - 1e-12;
  for (std::size_t j = 0; j + 1 < series.size(); ++j) {
    const double ncp = 2.0 * s.c * series[j] * s.edt;
    double p = math::ncchi2_cdf(2.0 * s.c * series[j + 1], df, ncp);
    if (p <= 0.0 || p >= 1.0) {
      p = std::clamp(p, lo, hi);
      ++out.n_clamped;
    }
    out.values.push_back(math::norm_quantile(p));
  }
  return out;
}

KsResult ks_test_normal(std::span<const double> residuals) {
  if (residuals.size() < 10) throw std::invalid_argument("ks_test_normal: need at least 10 points");
  std::vector<double> x(residuals.begin(), residuals.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = math::norm_cdf(x[i]);
    const double up = (static_cast<double>(i) + 1.0) / n - f;
    const double dn = f - static_cast<double>(i) / n;
    d = std::max({d, up, dn});
  }
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    sign = -sign;
    if (std::abs(term) < 1e-16) break;
  }
  p = std::clamp(2.0 * p, 0.0, 1.0);
  return {d, p};
}

} // namespace attn::estimate
