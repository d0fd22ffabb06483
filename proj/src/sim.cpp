#include "attn/sim.hpp"

#include "attn/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace attn::sim {

namespace {

double quantile_linear(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * (static_cast<double>(v.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - w) + v[hi] * w;
}

enum class Drift { real_world, risk_neutral };

PathPair simulate_impl(const ModelParams& p, const RNParams* rn, const InterestHistory& h,
                       int n_steps, double delta, std::uint64_t seed, double x0, Drift drift) {
  auto violations = validate_params(p, h);
  if (!violations.empty())
    throw std::domain_error("simulate_pair: " + violations.front());
  if (!(delta > 0.0) || n_steps < 0) throw std::domain_error("simulate_pair: bad grid");

  ModelParams interest_params = p;
  if (rn != nullptr) {
    interest_params.a = rn->a_tilde;
    interest_params.b = rn->b_tilde;
  }

  std::uint64_t state = seed;
  math::Rng interest_rng(math::splitmix64(state));
  math::Rng price_rng(math::splitmix64(state));

  PathPair path;
  path.delta = delta;
  path.m_lag = static_cast<int>(std::floor(h.length() / delta + 1e-9));

  path.interest.resize(static_cast<std::size_t>(path.m_lag + n_steps + 1));
  for (int j = -path.m_lag; j <= 0; ++j)
    path.interest[static_cast<std::size_t>(j + path.m_lag)] =
        eval_history(h, std::max(j * delta, h.times.front()));
  for (int j = 1; j <= n_steps; ++j) {
    const double prev = path.interest[static_cast<std::size_t>(j - 1 + path.m_lag)];
    path.interest[static_cast<std::size_t>(j + path.m_lag)] =
        cir_step(prev, interest_params, delta, interest_rng);
  }

  path.log_price.resize(static_cast<std::size_t>(n_steps + 1));
  path.log_price[0] = x0;
  for (int j = 1; j <= n_steps; ++j) {
    const double i1 = delayed_interest(path.interest, path.m_lag, delta, h, j, p.tau);
    const double i0 = delayed_interest(path.interest, path.m_lag, delta, h, j - 1, p.tau);
    const double big_j = 0.5 * delta * (i0 + i1);
    const double m = (drift == Drift::real_world)
                         ? p.mu * delta
                         : p.r * delta - 0.5 * p.sigma_P * p.sigma_P * big_j;
    const double s = p.sigma_P * std::sqrt(big_j);
    path.log_price[static_cast<std::size_t>(j)] =
        path.log_price[static_cast<std::size_t>(j - 1)] + m + s * price_rng.normal();
  }
  return path;
}

} // namespace

double delayed_interest(const std::vector<double>& interest, int m_lag, double delta,
                        const InterestHistory& h, int j, double tau) {
  const double t = j * delta - tau;
  if (t <= 0.0) return eval_history(h, std::max(t, h.times.front()));
  const double pos = t / delta;
  const double rounded = std::round(pos);
  if (std::abs(pos - rounded) < 1e-9)
    return interest[static_cast<std::size_t>(static_cast<int>(rounded) + m_lag)];
  const int lo = static_cast<int>(std::floor(pos));
  const double w = pos - lo;
  const double v0 = interest[static_cast<std::size_t>(lo + m_lag)];
  const double v1 = interest[static_cast<std::size_t>(lo + 1 + m_lag)];
  return v0 * (1.0 - w) + v1 * w;
}

double cir_step(double y, const ModelParams& p, double dt, math::Rng& rng) {
  if (!(y > 0.0)) throw std::domain_error("cir_step: state must be positive");
  if (!(dt > 0.0)) throw std::domain_error("cir_step: step must be positive");
  const double sig2 = p.sigma_I * p.sigma_I;
  const double c = 2.0 * p.a / (sig2 * -std::expm1(-p.a * dt));
  const double df = 4.0 * p.a * p.b / sig2;
  const double pois_mean = c * y * std::exp(-p.a * dt);  // = ncp / 2
  const long k = rng.poisson(pois_mean);
  const double chi = 2.0 * rng.gamma(0.5 * df + static_cast<double>(k));
  const double next = chi / (2.0 * c);
  if (!std::isfinite(next) || !(next > 0.0))
    throw std::runtime_error("cir_step: non-finite or nonpositive transition draw");
  return next;
}

PathPair simulate_pair(const ModelParams& p, const InterestHistory& h, int n_steps, double delta,
                       std::uint64_t seed, double x0) {
  return simulate_impl(p, nullptr, h, n_steps, delta, seed, x0, Drift::real_world);
}

PathPair simulate_pair_risk_neutral(const ModelParams& p, const RNParams& rn,
                                    const InterestHistory& h, int n_steps, double delta,
                                    std::uint64_t seed, double x0) {
  return simulate_impl(p, &rn, h, n_steps, delta, seed, x0, Drift::risk_neutral);
}

ExperimentSummary run_experiment(const ModelParams& true_params, const InterestHistory& h,
                                 const std::vector<double>& horizons, double delta,
                                 int replications, std::uint64_t seed, double x0, int threads) {
  if (replications < 1) throw std::invalid_argument("run_experiment: replications < 1");
  if (!(delta > 0.0)) throw std::domain_error("run_experiment: delta must be positive");
  const double lag_ratio = true_params.tau / delta;
  if (std::abs(lag_ratio - std::round(lag_ratio)) > 1e-9)
    throw std::domain_error("run_experiment: tau must be a grid multiple");
  for (double t : horizons) {
    const double steps = t / delta;
    if (std::abs(steps - std::round(steps)) > 1e-9)
      throw std::domain_error("run_experiment: horizons must be grid multiples");
  }

  struct RepResult {
    bool ok = false;
    double est[6] = {0, 0, 0, 0, 0, 0};  // a, b, sigma_I, mu, sigma_P, tau
  };

  ExperimentSummary summary;
  summary.replications_requested = replications;
  const char* names[6] = {"a", "b", "sigma_I", "mu", "sigma_P", "tau"};

  int n_threads = threads > 0 ? threads
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  n_threads = std::min(n_threads, replications);

  for (double horizon : horizons) {
    const int n_steps = static_cast<int>(std::llround(horizon / delta));
    std::vector<RepResult> results(static_cast<std::size_t>(replications));
    std::atomic<int> next{0};

    auto worker = [&] {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= replications) break;
        const std::uint64_t rep_seed = seed ^ static_cast<std::uint64_t>(r);
        RepResult& out = results[static_cast<std::size_t>(r)];
        try {
          const PathPair path = simulate_pair(true_params, h, n_steps, delta, rep_seed, x0);
          const std::span<const double> attention(path.interest.data() + path.m_lag,
                                                  static_cast<std::size_t>(n_steps + 1));
          const auto cir = estimate::fit_cir_mle(attention, delta);
          if (!cir.converged) continue;
          const auto price = estimate::select_lag(path.to_series());
          out.est[0] = cir.a;
          out.est[1] = cir.b;
          out.est[2] = cir.sigma_I;
          out.est[3] = price.mu;
          out.est[4] = price.sigma_P;
          out.est[5] = price.tau;
          out.ok = true;
        } catch (const std::exception&) {
          // recorded as a failure below; the sweep keeps going
        }
      }
    };
    if (n_threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    int failures = 0;
    for (const auto& rr : results)
      if (!rr.ok) ++failures;
    summary.failures += failures;

    for (int k = 0; k < 6; ++k) {
      ExperimentCell cell;
      cell.horizon = horizon;
      cell.parameter = names[k];
      for (const auto& rr : results)
        if (rr.ok) cell.raw.push_back(rr.est[k]);
      cell.count = static_cast<int>(cell.raw.size());
      if (cell.count > 0) {
        double m = 0.0;
        for (double v : cell.raw) m += v;
        m /= cell.count;
        double s2 = 0.0;
        for (double v : cell.raw) s2 += (v - m) * (v - m);
        cell.mean = m;
        cell.stddev = cell.count > 1 ? std::sqrt(s2 / (cell.count - 1)) : 0.0;
        cell.q1 = quantile_linear(cell.raw, 0.25);
        cell.median = quantile_linear(cell.raw, 0.5);
        cell.q3 = quantile_linear(cell.raw, 0.75);
      }
      summary.cells.push_back(std::move(cell));
    }
  }
  return summary;
}

std::string ExperimentSummary::to_csv() const {
  std::string out = "horizon,parameter,count,mean,std,q1,median,q3\n";
  char buf[320];
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof(buf), "%.17g,%s,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", c.horizon,
                  c.parameter.c_str(), c.count, c.mean, c.stddev, c.q1, c.median, c.q3);
    out += buf;
  }
  return out;
}

} // namespace attn::sim
