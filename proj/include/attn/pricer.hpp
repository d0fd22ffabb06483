#pragma once

#include "attn/core.hpp"
#include "attn/riskneutral.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace attn::pricer {

/// Damped-transform tuning. The log-strike grid spacing implied by the
/// pair (n_points, eta) is 2*pi / (n_points * eta).
struct FourierGrid {
  double alpha = 1.5;   // damping
  int n_points = 4096;  // power of two, >= 256
  double eta = 0.25;    // frequency spacing
};

enum class Method { fourier, lognormal, mc, black_scholes };

struct PriceResult {
  double value = 0.0;
  Method method = Method::fourier;
  double err_estimate = 0.0;  // MC stderr or grid-refinement delta
  bool floored = false;       // parity floor bound beyond err_estimate

  static const char* method_name(Method m);
};

/// European calls from the damped Fourier transform of the conditional
/// characteristic function at s = 0, evaluated on an FFT log-strike grid
/// and cubically interpolated to the requested strikes. err_estimate is
/// the change under halving eta (with the frequency range held fixed).
std::vector<PriceResult> price_call_fourier(const rn::CharFnContext& ctx,
                                            std::span<const double> strikes, double T,
                                            const FourierGrid& grid = {});

/// Closed form for expiries inside the delay window (T <= tau), where the
/// price is lognormal with total variance sigma_P^2 * integral of the
/// delayed history.
PriceResult price_lognormal(const rn::CharFnContext& ctx, double strike, double T, bool is_call);

/// Put from an already-priced call through put-call parity, floored at 0.
PriceResult price_put(const PriceResult& call, double S0, double strike, double T, double r);

/// Monte Carlo oracle: exact attention transitions under the risk-neutral
/// parameters, log price drawn from its conditional normal law.
PriceResult price_mc(const ModelParams& p, const RNParams& rn, const InterestHistory& h,
                     bool is_call, double S0, double strike, double T, long n_paths,
                     std::uint64_t seed, int steps_per_year = 360);

/// Batch variant sharing one simulated path set across strikes.
std::vector<PriceResult> price_mc_batch(const ModelParams& p, const RNParams& rn,
                                        const InterestHistory& h, bool is_call, double S0,
                                        std::span<const double> strikes, double T, long n_paths,
                                        std::uint64_t seed, int steps_per_year = 360);

/// Textbook Black-Scholes (baseline comparator).
PriceResult price_black_scholes(double S0, double strike, double sigma, double r, double T,
                                bool is_call);

/// Gaussian MLE of the constant diffusion volatility from log returns.
double fit_bs_sigma(std::span<const double> log_returns, double delta);

} // namespace attn::pricer
