#pragma once

#include "attn/core.hpp"
#include "attn/math/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace attn::sim {

/// One joint realization on a uniform grid: attention values I_{-M..N}
/// (M leading points taken from the deterministic history) and log
/// prices X_{0..N}.
struct PathPair {
  double delta = 0.0;
  int m_lag = 0;
  std::vector<double> interest;   // size m_lag + n + 1
  std::vector<double> log_price;  // size n + 1

  SeriesPair to_series(const std::string& start_date = "") const {
    return SeriesPair{delta, log_price, interest, start_date};
  }
};

/// Aggregated estimator statistics for one (horizon, parameter) pair.
struct ExperimentCell {
  double horizon = 0.0;
  std::string parameter;
  int count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  std::vector<double> raw;  // per-replication estimates (not serialized)
};

struct ExperimentSummary {
  std::vector<ExperimentCell> cells;
  int replications_requested = 0;
  int failures = 0;

  std::string to_csv() const;  // horizon,parameter,count,mean,std,q1,median,q3
};

/// Exact one-step transition of the square-root attention process:
/// a draw from the noncentral chi-squared transition law, sampled through
/// its Gamma-Poisson mixture (valid for any degrees of freedom).
/// Throws on non-finite output; never clamps.
double cir_step(double y, const ModelParams& p, double dt, math::Rng& rng);

/// Attention value at grid time j*delta - tau: deterministic history for
/// nonpositive times, linear interpolation of the simulated grid
/// otherwise. Lags that are grid multiples resolve to exact grid values.
double delayed_interest(const std::vector<double>& interest, int m_lag, double delta,
                        const InterestHistory& h, int j, double tau);

/// Simulate the attention path from phi_I(0) by exact transitions and the
/// log price by its conditional normal increments, using two independent
/// generator streams derived from the seed. Deterministic given the seed.
PathPair simulate_pair(const ModelParams& p, const InterestHistory& h, int n_steps,
                       double delta, std::uint64_t seed, double x0 = 0.0);

/// Same dynamics under a risk-neutral parameter set: attention mean
/// reversion (a_tilde, b_tilde) and per-step log-price drift
/// r*delta - sigma_P^2/2 * J instead of mu*delta.
PathPair simulate_pair_risk_neutral(const ModelParams& p, const RNParams& rn,
                                    const InterestHistory& h, int n_steps, double delta,
                                    std::uint64_t seed, double x0 = 0.0);

/// Full estimation experiment: for each horizon simulate, run the
/// square-root MLE, the lag scan and the conditional MLE, and aggregate
/// the six estimators over `replications` runs. Replication r uses the
/// seed (seed XOR r); per-replication estimator failures are recorded
/// and skipped. `threads` <= 0 means hardware concurrency.
ExperimentSummary run_experiment(const ModelParams& true_params, const InterestHistory& h,
                                 const std::vector<double>& horizons, double delta,
                                 int replications, std::uint64_t seed, double x0 = 0.0,
                                 int threads = 0);

} // namespace attn::sim
