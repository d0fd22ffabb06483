#pragma once

#include <string>
#include <vector>

namespace attn {

/// Real-world model parameters. Time unit is years throughout.
struct ModelParams {
  double a = 0.0;        // attention mean-reversion speed (1/years)
  double b = 0.0;        // attention long-run mean (proxy units)
  double sigma_I = 0.0;  // attention volatility
  double mu = 0.0;       // log-price drift (1/years)
  double sigma_P = 0.0;  // price volatility scale
  double tau = 0.0;      // delay (years)
  double r = 0.0;        // risk-free rate (1/years)

  double feller_ratio() const { return 2.0 * a * b / (sigma_I * sigma_I); }
};

/// Deterministic attention history on [-L, 0], piecewise linear between
/// knots. Times strictly increase, the last knot sits at 0, values are
/// strictly positive.
struct InterestHistory {
  std::vector<double> times;   // in [-L, 0], ascending, back() == 0
  std::vector<double> values;  // > 0

  double length() const { return times.empty() ? 0.0 : -times.front(); }

  static InterestHistory constant(double value, double length);
};

/// Risk-neutral attention parameters and the change-of-measure pair
/// that generated them.
struct RNParams {
  double a_tilde = 0.0;
  double b_tilde = 0.0;
  double lambda_a = 0.0;
  double lambda_ab = 0.0;
};

/// Aligned uniform-grid observations: log prices x_0..x_N and the
/// attention proxy y_{-M}..y_N (the proxy carries M extra leading points
/// that provide the pre-sample history).
struct SeriesPair {
  double delta = 0.0;
  std::vector<double> log_prices;
  std::vector<double> proxy;
  std::string start_date;  // calendar tag for x_0; metadata only

  int n_returns() const { return static_cast<int>(log_prices.size()) - 1; }
  int max_lag() const { return static_cast<int>(proxy.size() - log_prices.size()); }
};

struct OptionQuote {
  double strike = 0.0;
  double expiry = 0.0;      // years from valuation
  double bid = 0.0;
  double ask = 0.0;
  double underlying = 0.0;  // index level at quote time
  bool is_call = true;
};

/// Every violated invariant, with the offending value in the message.
/// An empty result means the pair (params, history) is accepted by the
/// whole pipeline.
std::vector<std::string> validate_params(const ModelParams& p, const InterestHistory& h);

/// Invariant check for a history alone (used by loaders as well).
std::vector<std::string> validate_history(const InterestHistory& h);

/// Piecewise-linear evaluation of the history at t in [-L, 0]; exact at
/// the knots. Throws std::domain_error outside the range.
double eval_history(const InterestHistory& h, double t);

/// Exact integral of the piecewise-linear interpolant over [s, t] with
/// -L <= s <= t <= 0 (sum of trapezoids, no quadrature error).
double integrate_history(const InterestHistory& h, double s, double t);

} // namespace attn
