#include "attn/riskneutral.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace attn::rn {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_lambda_domain(Complex lambda) {
  const double im = lambda.imag();
  if (!(im > -4.0 && im <= 1.0))
    throw std::domain_error("charfn: Im(lambda) must lie in (-4, 1]");
}

void check_finite(Complex v, const char* where) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::runtime_error(std::string("charfn: non-finite value in ") + where);
}

} // namespace

RNParams to_risk_neutral(const ModelParams& p, double lambda_a, double lambda_ab) {
  std::ostringstream err;
  if (!(lambda_a > -p.a)) {
    err << "to_risk_neutral: lambda_a=" << lambda_a << " violates lambda_a > -a (a=" << p.a << ")";
    throw std::domain_error(err.str());
  }
  const double bound = p.a * p.b - 0.5 * p.sigma_I * p.sigma_I;
  if (!(lambda_ab <= bound)) {
    err << "to_risk_neutral: lambda_ab=" << lambda_ab
        << " violates lambda_ab <= a*b - sigma_I^2/2 (=" << bound << ")";
    throw std::domain_error(err.str());
  }
  RNParams rn;
  rn.lambda_a = lambda_a;
  rn.lambda_ab = lambda_ab;
  rn.a_tilde = p.a + lambda_a;
  rn.b_tilde = (p.a * p.b - lambda_ab) / rn.a_tilde;
  return rn;
}

std::pair<Complex, Complex> charfn_AB(Complex lambda, const RNParams& rn, double sigma_P,
                                      double sigma_I, double u) {
  if (!(u >= 0.0)) throw std::domain_error("charfn_AB: horizon must be nonnegative");
  const double at = rn.a_tilde;
  const double bt = rn.b_tilde;
  const double s2 = sigma_I * sigma_I;
  const Complex w = kI * lambda + lambda * lambda;
  if (w == Complex{0.0, 0.0}) return {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
  const Complex d = std::sqrt(Complex{at * at, 0.0} + sigma_P * sigma_P * s2 * w);
  const Complex g = (at - d) / (at + d);
  const Complex e = std::exp(-d * u);
  const Complex log_ratio = std::log((1.0 - g * e) / (1.0 - g));
  const Complex A = at * bt / s2 * ((at - d) * u - 2.0 * log_ratio);
  const Complex B = (at - d) / s2 * (1.0 - e) / (1.0 - g * e);
  check_finite(A, "A");
  check_finite(B, "B");
  return {A, B};
}

Complex charfn_A_rotation_counted(Complex lambda, const RNParams& rn, double sigma_P,
                                  double sigma_I, double u) {
  const double at = rn.a_tilde;
  const double bt = rn.b_tilde;
  const double s2 = sigma_I * sigma_I;
  const Complex w = kI * lambda + lambda * lambda;
  if (w == Complex{0.0, 0.0}) return Complex{0.0, 0.0};
  const Complex d = std::sqrt(Complex{at * at, 0.0} + sigma_P * sigma_P * s2 * w);
  const Complex g = (at - d) / (at + d);

  // Walk s from 0 to u in steps small enough that the phase of
  // 1 - g e^{-ds} cannot jump by pi, unwinding the log as we go.
  const int n = 1 + static_cast<int>(std::ceil(std::abs(d.imag()) * u / 2.0));
  double winding = 0.0;
  double prev_arg = std::arg(1.0 - g);
  for (int k = 1; k <= n; ++k) {
    const double s = u * static_cast<double>(k) / static_cast<double>(n);
    const double cur_arg = std::arg(1.0 - g * std::exp(-d * s));
    double diff = cur_arg - prev_arg;
    while (diff > M_PI) diff -= 2.0 * M_PI;
    while (diff < -M_PI) diff += 2.0 * M_PI;
    winding += diff;
    prev_arg = cur_arg;
  }
  const Complex num = 1.0 - g * std::exp(-d * u);
  const Complex den = 1.0 - g;
  const Complex log_ratio{std::log(std::abs(num) / std::abs(den)), winding};
  return at * bt / s2 * ((at - d) * u - 2.0 * log_ratio);
}

Complex charfn_delayed(Complex lambda, const CharFnContext& ctx, double t) {
  check_lambda_domain(lambda);
  const double s = ctx.s;
  const double tau = ctx.tau;
  if (t < s) throw std::domain_error("charfn_delayed: t < s");
  if (t == s) return Complex{1.0, 0.0};

  if (t <= tau) {
    // Log price is conditionally normal; the variance driver is the
    // deterministic history integral.
    const double z = integrate_history(ctx.history, s - tau, t - tau);
    const Complex w = kI * lambda + lambda * lambda;
    const Complex expo =
        kI * lambda * (ctx.x_s + ctx.r * (t - s)) - 0.5 * ctx.sigma_P * ctx.sigma_P * w * z;
    const Complex v = std::exp(expo);
    check_finite(v, "lognormal branch");
    return v;
  }
  if (s >= tau) {
    double i_lag;
    if (s - tau <= 0.0) {
      i_lag = eval_history(ctx.history, s - tau);
    } else if (ctx.interest_lag) {
      i_lag = *ctx.interest_lag;
    } else {
      throw std::domain_error("charfn_delayed: I_{s-tau} required for s > tau");
    }
    const auto [A, B] = charfn_AB(lambda, ctx.rn, ctx.sigma_P, ctx.sigma_I, t - s);
    const Complex v = std::exp(kI * lambda * (ctx.x_s + ctx.r * (t - s)) + A + i_lag * B);
    check_finite(v, "heston branch");
    return v;
  }
  // s < tau < t: propagate to tau with the deterministic-variance factor.
  const auto [A, B] = charfn_AB(lambda, ctx.rn, ctx.sigma_P, ctx.sigma_I, t - tau);
  const double i0 = eval_history(ctx.history, 0.0);
  const Complex head = std::exp(kI * lambda * ctx.r * (t - tau) + A + i0 * B);
  check_finite(head, "composite branch");
  return head * charfn_delayed(lambda, ctx, tau);
}

Complex charfn_general(Complex lambda, const CharFnContext& ctx, double t,
                       std::optional<double> path_integral) {
  check_lambda_domain(lambda);
  const double s = ctx.s;
  const double tau = ctx.tau;
  if (t < s) throw std::domain_error("charfn_general: t < s");
  if (t == s) return Complex{1.0, 0.0};

  const Complex w = kI * lambda + lambda * lambda;
  if (s >= t - tau) {
    double z;
    if (path_integral) {
      z = *path_integral;
    } else if (t <= tau) {
      z = integrate_history(ctx.history, s - tau, t - tau);
    } else {
      throw std::domain_error(
          "charfn_general: realized integral of delayed attention over [s,t] required");
    }
    const Complex v = std::exp(kI * lambda * (ctx.x_s + ctx.r * (t - s)) -
                               0.5 * ctx.sigma_P * ctx.sigma_P * w * z);
    check_finite(v, "conditional normal branch");
    return v;
  }
  // s < t - tau.
  double i_now;
  if (s == 0.0) {
    i_now = eval_history(ctx.history, 0.0);
  } else if (ctx.interest_now) {
    i_now = *ctx.interest_now;
  } else {
    throw std::domain_error("charfn_general: I_s required for s > 0");
  }
  double z_past;
  if (path_integral) {
    z_past = *path_integral;
  } else if (s == 0.0) {
    z_past = integrate_history(ctx.history, -tau, 0.0);
  } else {
    throw std::domain_error(
        "charfn_general: realized integral of delayed attention over [s, s+tau] required");
  }
  const Complex mid = std::exp(kI * lambda * (ctx.x_s + ctx.r * tau) -
                               0.5 * ctx.sigma_P * ctx.sigma_P * w * z_past);
  const auto [A, B] = charfn_AB(lambda, ctx.rn, ctx.sigma_P, ctx.sigma_I, t - s - tau);
  const Complex head = std::exp(kI * lambda * ctx.r * (t - s - tau) + A + i_now * B);
  const Complex v = head * mid;
  check_finite(v, "general composite branch");
  return v;
}

} // namespace attn::rn
