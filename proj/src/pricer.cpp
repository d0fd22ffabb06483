#include "attn/pricer.hpp"

#include "attn/math/fft.hpp"
#include "attn/math/special.hpp"
#include "attn/sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace attn::pricer {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

void check_grid(const FourierGrid& g) {
  if (!(g.alpha > 0.0)) throw std::invalid_argument("fourier: alpha must be positive");
  if (g.n_points < 256 || (g.n_points & (g.n_points - 1)) != 0)
    throw std::invalid_argument("fourier: n_points must be a power of two >= 256");
  if (!(g.eta > 0.0)) throw std::invalid_argument("fourier: eta must be positive");
}

// Four-point Lagrange cubic on a uniform grid.
double interp_cubic(const std::vector<double>& ys, double k_min, double dk, double k) {
  const double pos = (k - k_min) / dk;
  const long n = static_cast<long>(ys.size());
  long i1 = static_cast<long>(std::floor(pos));
  i1 = std::clamp(i1, 1l, n - 3);
  const double x = pos - static_cast<double>(i1);
  const double ym1 = ys[static_cast<std::size_t>(i1 - 1)];
  const double y0 = ys[static_cast<std::size_t>(i1)];
  const double y1 = ys[static_cast<std::size_t>(i1 + 1)];
  const double y2 = ys[static_cast<std::size_t>(i1 + 2)];
  return ym1 * (-x * (x - 1.0) * (x - 2.0) / 6.0) + y0 * ((x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0) +
         y1 * (-(x + 1.0) * x * (x - 2.0) / 2.0) + y2 * ((x + 1.0) * x * (x - 1.0) / 6.0);
}

// One damped-transform pass: call values on the log-strike grid,
// interpolated to the requested strikes.
std::vector<double> fourier_pass(const rn::CharFnContext& ctx, std::span<const double> strikes,
                                 double T, double alpha, int n, double eta) {
  const double lambda_k = 2.0 * M_PI / (static_cast<double>(n) * eta);
  const double k_min = ctx.x_s - 0.5 * static_cast<double>(n) * lambda_k;
  const double discount = std::exp(-ctx.r * (T - ctx.s));

  std::vector<Complex> a(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double v = eta * static_cast<double>(j);
    const Complex lam = Complex{v, -(alpha + 1.0)};
    const Complex phi = rn::charfn_general(lam, ctx, T);
    if (!std::isfinite(phi.real()) || !std::isfinite(phi.imag())) {
      std::ostringstream os;
      os << "fourier: characteristic function not finite at v=" << v;
      throw std::runtime_error(os.str());
    }
    const Complex denom = Complex{alpha * alpha + alpha - v * v, (2.0 * alpha + 1.0) * v};
    const double simpson = (j == 0) ? 1.0 / 3.0 : ((j % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0);
    a[static_cast<std::size_t>(j)] =
        std::exp(-kI * v * k_min) * discount * phi / denom * eta * simpson;
  }
  math::fft(a);

  std::vector<double> grid_vals(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    const double k = k_min + lambda_k * static_cast<double>(u);
    grid_vals[static_cast<std::size_t>(u)] =
        std::exp(-alpha * k) / M_PI * a[static_cast<std::size_t>(u)].real();
  }
  std::vector<double> out;
  out.reserve(strikes.size());
  for (double strike : strikes)
    out.push_back(interp_cubic(grid_vals, k_min, lambda_k, std::log(strike)));
  return out;
}

} // namespace

const char* PriceResult::method_name(Method m) {
  switch (m) {
    case Method::fourier: return "fourier";
    case Method::lognormal: return "lognormal";
    case Method::mc: return "mc";
    case Method::black_scholes: return "black_scholes";
  }
  return "?";
}

std::vector<PriceResult> price_call_fourier(const rn::CharFnContext& ctx,
                                            std::span<const double> strikes, double T,
                                            const FourierGrid& grid) {
  check_grid(grid);
  if (!(T > ctx.s)) throw std::domain_error("fourier: expiry must exceed the state time");
  for (double k : strikes)
    if (!(k > 0.0)) throw std::domain_error("fourier: strikes must be positive");

  const auto coarse = fourier_pass(ctx, strikes, T, grid.alpha, grid.n_points, grid.eta);
  // Halve eta, double n: same frequency range, finer sampling.
  const auto fine = fourier_pass(ctx, strikes, T, grid.alpha, 2 * grid.n_points, 0.5 * grid.eta);

  const double spot = std::exp(ctx.x_s);
  std::vector<PriceResult> out(strikes.size());
  for (std::size_t i = 0; i < strikes.size(); ++i) {
    PriceResult& r = out[i];
    r.method = Method::fourier;
    r.err_estimate = std::abs(fine[i] - coarse[i]);
    r.value = std::clamp(fine[i], 0.0, spot);
  }
  return out;
}

PriceResult price_lognormal(const rn::CharFnContext& ctx, double strike, double T, bool is_call) {
  if (T > ctx.tau)
    throw std::domain_error(
        "price_lognormal: expiry exceeds the delay window; use the fourier method");
  if (!(strike > 0.0) || !(T > 0.0)) throw std::domain_error("price_lognormal: bad inputs");
  const double total_var =
      ctx.sigma_P * ctx.sigma_P * integrate_history(ctx.history, -ctx.tau, T - ctx.tau);
  const double spot = std::exp(ctx.x_s);
  const double disc = std::exp(-ctx.r * T);
  PriceResult res;
  res.method = Method::lognormal;
  res.err_estimate = 1e-12 * spot;
  const double sd = std::sqrt(total_var);
  if (sd == 0.0) {
    const double fwd = spot - strike * disc;
    res.value = is_call ? std::max(fwd, 0.0) : std::max(-fwd, 0.0);
    return res;
  }
  const double d1 = (std::log(spot / strike) + ctx.r * T + 0.5 * total_var) / sd;
  const double d2 = d1 - sd;
  if (is_call)
    res.value = spot * math::norm_cdf(d1) - strike * disc * math::norm_cdf(d2);
  else
    res.value = strike * disc * math::norm_cdf(-d2) - spot * math::norm_cdf(-d1);
  return res;
}

PriceResult price_put(const PriceResult& call, double S0, double strike, double T, double r) {
  PriceResult res;
  res.method = call.method;
  res.err_estimate = call.err_estimate;
  const double parity = call.value - S0 + strike * std::exp(-r * T);
  res.value = std::max(parity, 0.0);
  res.floored = parity < -call.err_estimate;
  return res;
}

std::vector<PriceResult> price_mc_batch(const ModelParams& p, const RNParams& rnp,
                                        const InterestHistory& h, bool is_call, double S0,
                                        std::span<const double> strikes, double T, long n_paths,
                                        std::uint64_t seed, int steps_per_year) {
  if (!(T > 0.0) || n_paths < 2 || !(S0 > 0.0))
    throw std::invalid_argument("price_mc: bad inputs");
  const int n_steps = std::max(8, static_cast<int>(std::lround(T * steps_per_year)));
  const double dt = T / n_steps;
  const double disc = std::exp(-p.r * T);
  const double s2 = p.sigma_P * p.sigma_P;

  ModelParams ip = p;
  ip.a = rnp.a_tilde;
  ip.b = rnp.b_tilde;
  auto violations = validate_params(ip, h);
  if (!violations.empty()) throw std::domain_error("price_mc: " + violations.front());

  std::uint64_t state = seed;
  math::Rng interest_rng(math::splitmix64(state));
  math::Rng price_rng(math::splitmix64(state));

  // Grid values of the delayed attention that are fixed by the history.
  std::vector<double> delayed(static_cast<std::size_t>(n_steps + 1), 0.0);
  int first_random = n_steps + 1;
  for (int j = 0; j <= n_steps; ++j) {
    const double t = j * dt - p.tau;
    if (t <= 0.0) {
      delayed[static_cast<std::size_t>(j)] = eval_history(h, std::max(t, h.times.front()));
    } else {
      first_random = j;
      break;
    }
  }

  std::vector<double> sum(strikes.size(), 0.0), sum2(strikes.size(), 0.0);
  const double i0 = eval_history(h, 0.0);
  for (long path = 0; path < n_paths; ++path) {
    if (first_random <= n_steps) {
      // Simulate attention forward and pick it up at the delayed times.
      double y = i0;
      double sim_time = 0.0;
      for (int j = first_random; j <= n_steps; ++j) {
        const double target = j * dt - p.tau;
        while (sim_time < target - 1e-15) {
          const double step = std::min(dt, target - sim_time);
          y = sim::cir_step(y, ip, step, interest_rng);
          sim_time += step;
        }
        delayed[static_cast<std::size_t>(j)] = y;
      }
    }
    double z = 0.0;
    for (int j = 1; j <= n_steps; ++j)
      z += 0.5 * dt *
           (delayed[static_cast<std::size_t>(j - 1)] + delayed[static_cast<std::size_t>(j)]);
    // Given the attention path the terminal log price is exactly normal.
    const double x_T = p.r * T - 0.5 * s2 * z + p.sigma_P * std::sqrt(z) * price_rng.normal();
    const double terminal = S0 * std::exp(x_T);
    for (std::size_t i = 0; i < strikes.size(); ++i) {
      const double payoff =
          is_call ? std::max(terminal - strikes[i], 0.0) : std::max(strikes[i] - terminal, 0.0);
      sum[i] += payoff;
      sum2[i] += payoff * payoff;
    }
  }

  const double n = static_cast<double>(n_paths);
  std::vector<PriceResult> out(strikes.size());
  for (std::size_t i = 0; i < strikes.size(); ++i) {
    const double mean = sum[i] / n;
    const double var = std::max(0.0, sum2[i] / n - mean * mean);
    out[i].method = Method::mc;
    out[i].value = disc * mean;
    out[i].err_estimate = disc * std::sqrt(var / n);
  }
  return out;
}

PriceResult price_mc(const ModelParams& p, const RNParams& rnp, const InterestHistory& h,
                     bool is_call, double S0, double strike, double T, long n_paths,
                     std::uint64_t seed, int steps_per_year) {
  const double k[1] = {strike};
  return price_mc_batch(p, rnp, h, is_call, S0, k, T, n_paths, seed, steps_per_year)[0];
}

PriceResult price_black_scholes(double S0, double strike, double sigma, double r, double T,
                                bool is_call) {
  if (!(S0 > 0.0) || !(strike > 0.0) || !(sigma >= 0.0) || !(T >= 0.0))
    throw std::domain_error("black_scholes: bad inputs");
  PriceResult res;
  res.method = Method::black_scholes;
  res.err_estimate = 0.0;
  const double disc = std::exp(-r * T);
  const double sd = sigma * std::sqrt(T);
  if (sd == 0.0) {
    const double fwd = S0 - strike * disc;
    res.value = is_call ? std::max(fwd, 0.0) : std::max(-fwd, 0.0);
    return res;
  }
  const double d1 = (std::log(S0 / strike) + (r + 0.5 * sigma * sigma) * T) / sd;
  const double d2 = d1 - sd;
  if (is_call)
    res.value = S0 * math::norm_cdf(d1) - strike * disc * math::norm_cdf(d2);
  else
    res.value = strike * disc * math::norm_cdf(-d2) - S0 * math::norm_cdf(-d1);
  return res;
}

double fit_bs_sigma(std::span<const double> log_returns, double delta) {
  if (log_returns.size() < 2 || !(delta > 0.0))
    throw std::invalid_argument("fit_bs_sigma: need at least two returns");
  const double n = static_cast<double>(log_returns.size());
  double mean = 0.0;
  for (double r : log_returns) mean += r;
  mean /= n;
  double ss = 0.0;
  for (double r : log_returns) ss += (r - mean) * (r - mean);
  return std::sqrt(ss / (n * delta));
}

} // namespace attn::pricer
