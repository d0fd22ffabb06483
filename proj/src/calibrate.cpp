#include "attn/calibrate.hpp"

#include "attn/math/neldermead.hpp"
#include "attn/riskneutral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

namespace attn::calibrate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Model mids for all quotes at a given risk-neutral parameter pair; one
// transform evaluation per distinct expiry.
std::vector<double> model_prices(const ModelParams& p, const InterestHistory& h,
                                 const std::vector<FilteredQuote>& quotes, double S0,
                                 const RNParams& rn, const pricer::FourierGrid& grid) {
  std::map<double, std::vector<std::size_t>> by_expiry;
  for (std::size_t i = 0; i < quotes.size(); ++i)
    by_expiry[quotes[i].quote.expiry].push_back(i);

  rn::CharFnContext ctx;
  ctx.rn = rn;
  ctx.sigma_P = p.sigma_P;
  ctx.sigma_I = p.sigma_I;
  ctx.r = p.r;
  ctx.tau = p.tau;
  ctx.history = h;
  ctx.s = 0.0;
  ctx.x_s = std::log(S0);

  std::vector<double> out(quotes.size(), 0.0);
  for (const auto& [expiry, idx] : by_expiry) {
    std::vector<double> strikes;
    strikes.reserve(idx.size());
    for (std::size_t i : idx) strikes.push_back(quotes[i].quote.strike);
    const auto calls = pricer::price_call_fourier(ctx, strikes, expiry, grid);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const auto& q = quotes[idx[j]].quote;
      out[idx[j]] = q.is_call
                        ? calls[j].value
                        : pricer::price_put(calls[j], S0, q.strike, expiry, p.r).value;
    }
  }
  return out;
}

} // namespace

std::vector<FilteredQuote> filter_quotes(const std::vector<OptionQuote>& quotes) {
  std::vector<FilteredQuote> out;
  for (const auto& q : quotes) {
    if (!(q.bid > 0.0) || !(q.ask >= q.bid) || !(q.expiry > 0.0)) continue;
    if (!((q.ask - q.bid) / q.ask < 0.1)) continue;
    out.push_back({q, 0.5 * (q.ask + q.bid)});
  }
  return out;
}

double rmse(std::span<const double> model_prices, std::span<const double> mids) {
  if (model_prices.size() != mids.size() || model_prices.empty())
    throw std::invalid_argument("rmse: length mismatch");
  double ss = 0.0;
  for (std::size_t i = 0; i < mids.size(); ++i) {
    const double d = model_prices[i] - mids[i];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(mids.size()));
}

CalibrationResult calibrate_rn(const ModelParams& p, const InterestHistory& h,
                               const std::vector<FilteredQuote>& quotes, double S0,
                               const pricer::FourierGrid& grid) {
  if (quotes.empty()) throw std::invalid_argument("calibrate_rn: no quotes");
  auto violations = validate_params(p, h);
  if (!violations.empty()) throw std::domain_error("calibrate_rn: " + violations.front());

  std::vector<double> mids;
  mids.reserve(quotes.size());
  for (const auto& q : quotes) mids.push_back(q.mid);

  const double s2 = p.sigma_I * p.sigma_I;
  double best_f = kInf;
  std::vector<double> best_x;

  auto objective = [&](const std::vector<double>& t) -> double {
    const double at = std::exp(t[0]);
    const double bt = std::exp(t[1]);
    if (!std::isfinite(at) || !std::isfinite(bt)) return kInf;
    double penalty = 0.0;
    const double gap = s2 - 2.0 * at * bt;
    if (gap > 0.0) penalty = 1e2 * mids[0] * (1.0 + gap / s2);
    RNParams rn{at, bt, at - p.a, p.a * p.b - at * bt};
    double f;
    try {
      f = rmse(model_prices(p, h, quotes, S0, rn, grid), mids) + penalty;
    } catch (const std::exception&) {
      return kInf;
    }
    if (f < best_f && penalty == 0.0) {
      best_f = f;
      best_x = t;
    }
    return f;
  };

  // Unchanged-measure start plus a coarse feasible grid.
  std::vector<std::vector<double>> starts;
  starts.push_back({std::log(p.a), std::log(p.b)});
  for (double fa : {0.3, 2.0, 6.0})
    for (double fb : {0.6, 1.6}) {
      double at = p.a * fa;
      double bt = std::max(p.b * fb, 1.02 * s2 / (2.0 * at));
      starts.push_back({std::log(at), std::log(bt)});
    }

  const double uncalibrated = objective(starts.front());

  CalibrationResult result;
  result.n_quotes = static_cast<int>(quotes.size());
  result.uncalibrated_rmse = uncalibrated;

  struct StartOutcome {
    double f;
    std::vector<double> x;
  };
  std::vector<StartOutcome> outcomes;
  int iters = 0;
  bool any_converged = false;
  for (const auto& s : starts) {
    auto run = math::nelder_mead(s, 0.5, 1e-9, 200, objective);
    auto polish = math::nelder_mead(run.x, 0.05, 1e-10, 120, objective);
    iters += run.iterations + polish.iterations;
    any_converged = any_converged || polish.converged;
    outcomes.push_back({polish.value, polish.x});
  }
  result.iterations = iters;
  result.converged = any_converged && !best_x.empty();

  if (best_x.empty()) {
    // Every evaluation failed except possibly penalized ones; fall back
    // to the unchanged measure.
    best_x = starts.front();
  }
  const double at = std::exp(best_x[0]);
  const double bt = std::exp(best_x[1]);
  result.rn = RNParams{at, bt, at - p.a, p.a * p.b - at * bt};

  // Flat-objective warning: distant optima with near-identical fit.
  std::sort(outcomes.begin(), outcomes.end(),
            [](const StartOutcome& l, const StartOutcome& r) { return l.f < r.f; });
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (!(outcomes[i].f < kInf)) break;
    if (outcomes[i].f <= outcomes[0].f * 1.001 + 1e-12) {
      const double da = std::abs(outcomes[i].x[0] - outcomes[0].x[0]);
      const double db = std::abs(outcomes[i].x[1] - outcomes[0].x[1]);
      if (da > 0.4 || db > 0.4) result.identifiability_warning = true;
    }
  }

  const auto prices = model_prices(p, h, quotes, S0, result.rn, grid);
  result.per_quote.reserve(quotes.size());
  for (std::size_t i = 0; i < quotes.size(); ++i)
    result.per_quote.push_back({quotes[i].quote, quotes[i].mid, prices[i]});
  result.rmse = rmse(prices, mids);
  return result;
}

std::string CalibrationResult::per_quote_csv() const {
  std::string out = "strike,expiry,is_call,bid,ask,mid,model_price\n";
  char buf[320];
  for (const auto& row : per_quote) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g\n", row.quote.strike,
                  row.quote.expiry, row.quote.is_call ? 1 : 0, row.quote.bid, row.quote.ask,
                  row.mid, row.model_price);
    out += buf;
  }
  return out;
}

} // namespace attn::calibrate
