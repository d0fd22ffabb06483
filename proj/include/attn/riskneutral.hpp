#pragma once

#include "attn/core.hpp"

#include <complex>
#include <optional>

namespace attn::rn {

using Complex = std::complex<double>;

/// Map change-of-measure parameters to the risk-neutral attention
/// parameters: a_tilde = a + lambda_a, b_tilde = (ab - lambda_ab)/a_tilde.
/// Requires lambda_a > -a and lambda_ab <= ab - sigma_I^2/2; throws
/// std::domain_error naming the violated inequality otherwise.
RNParams to_risk_neutral(const ModelParams& p, double lambda_a, double lambda_ab);

/// Heston-style exponents. With
///   d = sqrt(a_tilde^2 + sigma_P^2 sigma_I^2 (i*lambda + lambda^2)),
///   g = (a_tilde - d) / (a_tilde + d),
/// returns
///   A(u) = a_tilde*b_tilde/sigma_I^2 * ((a_tilde-d)u - 2 log((1-g e^{-du})/(1-g))),
///   B(u) = (a_tilde-d)/sigma_I^2 * (1-e^{-du})/(1-g e^{-du}).
/// Principal-branch complex log in the (a_tilde - d) representation.
std::pair<Complex, Complex> charfn_AB(Complex lambda, const RNParams& rn, double sigma_P,
                                      double sigma_I, double u);

/// Same A via a rotation-counted continuous log; agrees with charfn_AB
/// for the zero-correlation dynamics here and serves as a branch-cut
/// cross-check on long horizons.
Complex charfn_A_rotation_counted(Complex lambda, const RNParams& rn, double sigma_P,
                                  double sigma_I, double u);

/// Everything a conditional characteristic function evaluation needs:
/// risk-neutral parameters, volatility scales, rate, delay, the
/// deterministic attention history and the state at time s. For s > 0
/// the attention state that the branch requires must be supplied
/// (interest_lag = I_{s-tau} when s >= tau; interest_now = I_s for the
/// general filtration when s < t - tau).
struct CharFnContext {
  RNParams rn;
  double sigma_P = 0.0;
  double sigma_I = 0.0;
  double r = 0.0;
  double tau = 0.0;
  InterestHistory history;
  double s = 0.0;
  double x_s = 0.0;
  std::optional<double> interest_lag;
  std::optional<double> interest_now;
};

/// Conditional characteristic function of the log price given the
/// delayed information set (prices to s, attention to s - tau).
/// Accepts complex arguments with Im(lambda) in (-4, 1] as required by
/// damped transform pricing.
Complex charfn_delayed(Complex lambda, const CharFnContext& ctx, double t);

/// Conditional characteristic function given the full information set.
/// For t - tau <= s < t the realized integral of the delayed attention
/// over [s, t] must be supplied unless it is determined by the history;
/// for s < t - tau the realized integral over [s, s + tau] is needed
/// instead. At s = 0 both functions coincide and need no extra inputs.
Complex charfn_general(Complex lambda, const CharFnContext& ctx, double t,
                       std::optional<double> path_integral = std::nullopt);

} // namespace attn::rn
