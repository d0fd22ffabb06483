// Command-line front end: simulation, estimation, goodness of fit,
// option pricing, calibration, the estimation experiment and the
// Black-Scholes RMSE comparison. Every command writes machine-readable
// CSV/JSON plus a run manifest sufficient to reproduce the output.

#include <CLI11.hpp>
#include <json.hpp>

#include "attn/calibrate.hpp"
#include "attn/core.hpp"
#include "attn/dataio.hpp"
#include "attn/estimate.hpp"
#include "attn/pricer.hpp"
#include "attn/riskneutral.hpp"
#include "attn/sim.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

// Accepts plain decimals and fractions like "1/365".
double parse_ratio(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return std::stod(text);
  const double num = std::stod(text.substr(0, slash));
  const double den = std::stod(text.substr(slash + 1));
  if (den == 0.0) throw CLI::ValidationError("ratio", "zero denominator in '" + text + "'");
  return num / den;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!tok.empty()) out.push_back(parse_ratio(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("ATTN_PRICER_SEED")) return std::stoull(env);
  return cli_seed;
}

void write_manifest(const std::string& command, const std::vector<std::string>& argv,
                    std::optional<std::uint64_t> seed, const std::vector<std::string>& outputs) {
  if (outputs.empty()) return;
  ordered_json j;
  j["command"] = command;
  j["argv"] = argv;
  if (seed)
    j["seed"] = *seed;
  else
    j["seed"] = nullptr;
  j["artifact_version"] = kVersion;
  j["schema_version"] = 1;
  j["outputs"] = outputs;
  attn::dataio::write_text_file(outputs.front() + ".manifest.json", j.dump(2) + "\n");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

attn::rn::CharFnContext make_context(const attn::dataio::ParamsDocument& doc,
                                     const attn::RNParams& rn, double spot) {
  attn::rn::CharFnContext ctx;
  ctx.rn = rn;
  ctx.sigma_P = doc.model.sigma_P;
  ctx.sigma_I = doc.model.sigma_I;
  ctx.r = doc.model.r;
  ctx.tau = doc.model.tau;
  ctx.history = doc.history;
  ctx.s = 0.0;
  ctx.x_s = std::log(spot);
  return ctx;
}

attn::RNParams resolve_rn(const attn::dataio::ParamsDocument& doc, const std::string& rn_file) {
  if (!rn_file.empty()) {
    const auto rn_doc = ordered_json::parse(attn::dataio::read_text_file(rn_file));
    attn::RNParams rn;
    rn.lambda_a = rn_doc.at("lambda_a").get<double>();
    rn.lambda_ab = rn_doc.at("lambda_ab").get<double>();
    rn.a_tilde = rn_doc.at("a_tilde").get<double>();
    rn.b_tilde = rn_doc.at("b_tilde").get<double>();
    return rn;
  }
  if (doc.rn) return *doc.rn;
  return attn::rn::to_risk_neutral(doc.model, 0.0, 0.0);  // unchanged measure
}

struct CommonModelFlags {
  double a = 30.0, b = 15.0, sigma_i = 0.6, mu = 0.0, sigma_p = 0.2, tau = 0.025, rate = 0.0;
  double phi = 14.0;
  std::string history_len = "0.05";
  std::string delta = "1/360";

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "attention mean-reversion speed (1/years)");
    cmd->add_option("--b", b, "attention long-run mean (proxy units)");
    cmd->add_option("--sigma-i", sigma_i, "attention volatility");
    cmd->add_option("--mu", mu, "log-price drift (1/years)");
    cmd->add_option("--sigma-p", sigma_p, "price volatility scale");
    cmd->add_option("--tau", tau, "delay (years)");
    cmd->add_option("--rate", rate, "risk-free rate (1/years)");
    cmd->add_option("--phi", phi, "constant attention history level (proxy units)");
    cmd->add_option("--history-len", history_len, "history length L (years; accepts p/q)");
    cmd->add_option("--delta", delta, "grid step (years; accepts p/q such as 1/360)");
  }

  attn::ModelParams params() const {
    return attn::ModelParams{a, b, sigma_i, mu, sigma_p, tau, rate};
  }
  attn::InterestHistory history() const {
    return attn::InterestHistory::constant(phi, parse_ratio(history_len));
  }
};

int run_simulate(const CommonModelFlags& flags, int steps, std::uint64_t seed, double spot,
                 const std::string& out, const std::vector<std::string>& argv) {
  const auto p = flags.params();
  const auto h = flags.history();
  const double delta = parse_ratio(flags.delta);
  const auto path = attn::sim::simulate_pair(p, h, steps, delta, seed, std::log(spot));
  std::string csv = "j,time,interest,log_price\n";
  for (int j = -path.m_lag; j <= steps; ++j) {
    csv += std::to_string(j) + "," + format_double(j * delta) + "," +
           format_double(path.interest[static_cast<std::size_t>(j + path.m_lag)]) + ",";
    if (j >= 0) csv += format_double(path.log_price[static_cast<std::size_t>(j)]);
    csv += "\n";
  }
  attn::dataio::write_text_file(out, csv);
  write_manifest("simulate", argv, seed, {out});
  return 0;
}

int run_estimate(const std::string& prices, const std::string& proxy, const std::string& delta_s,
                 int max_lag, double rate, const std::string& out, const std::string& criteria_out,
                 const std::string& full_params_out, const std::vector<std::string>& argv) {
  const double delta = parse_ratio(delta_s);
  const auto series = attn::dataio::load_series(prices, proxy, delta, max_lag);
  const std::span<const double> attention(series.proxy.data() + series.max_lag(),
                                          series.log_prices.size());
  const auto cir = attn::estimate::fit_cir_mle(attention, delta);
  const auto price = attn::estimate::select_lag(series);

  ordered_json j;
  j["a"] = cir.a;
  j["b"] = cir.b;
  j["sigma_I"] = cir.sigma_I;
  j["mu"] = price.mu;
  j["sigma_P"] = price.sigma_P;
  j["tau"] = price.tau;
  j["loglik"] = price.loglik;
  j["aic"] = price.aic;
  j["bic"] = price.bic;
  j["converged"] = cir.converged;
  attn::dataio::write_text_file(out, j.dump(2) + "\n");

  std::vector<std::string> outputs = {out};
  if (!criteria_out.empty()) {
    std::string csv = "lag,loglik,aic,bic\n";
    for (const auto& row : price.criterion_table)
      csv += std::to_string(row.lag) + "," + format_double(row.loglik) + "," +
             format_double(row.aic) + "," + format_double(row.bic) + "\n";
    attn::dataio::write_text_file(criteria_out, csv);
    outputs.push_back(criteria_out);
  }
  if (!full_params_out.empty()) {
    attn::dataio::ParamsDocument doc;
    doc.model = attn::ModelParams{cir.a, cir.b, cir.sigma_I, price.mu,
                                  price.sigma_P, price.tau, rate};
    const int m = series.max_lag();
    const std::size_t n = series.proxy.size();
    for (int k = -m; k <= 0; ++k) {
      doc.history.times.push_back(k * delta);
      doc.history.values.push_back(series.proxy[n - 1 + static_cast<std::size_t>(k)]);
    }
    attn::dataio::write_text_file(full_params_out, attn::dataio::params_to_json(doc));
    outputs.push_back(full_params_out);
  }
  write_manifest("estimate", argv, std::nullopt, outputs);
  return 0;
}

int run_gof(const std::string& proxy, const std::string& delta_s, const std::string& out,
            const std::vector<std::string>& argv) {
  const double delta = parse_ratio(delta_s);
  const auto series = attn::dataio::load_value_series(proxy, "value");
  const auto fit = attn::estimate::fit_cir_mle(series, delta);
  const auto res = attn::estimate::generalized_residuals(series, fit, delta);
  const auto ks = attn::estimate::ks_test_normal(res.values);
  ordered_json j;
  j["a"] = fit.a;
  j["b"] = fit.b;
  j["sigma_I"] = fit.sigma_I;
  j["loglik"] = fit.loglik;
  j["converged"] = fit.converged;
  j["n_residuals"] = res.values.size();
  j["n_clamped"] = res.n_clamped;
  j["ks_statistic"] = ks.statistic;
  j["p_value"] = ks.p_value;
  attn::dataio::write_text_file(out, j.dump(2) + "\n");
  write_manifest("gof", argv, std::nullopt, {out});
  return 0;
}

int run_price(const std::string& params_file, const std::string& rn_file, double spot,
              const std::string& strikes_s, const std::string& expiry_s, const std::string& method,
              bool is_put, long paths, std::uint64_t seed, double bs_sigma, double alpha,
              int n_points, double eta, const std::string& out,
              const std::vector<std::string>& argv) {
  const auto doc = attn::dataio::params_from_json(attn::dataio::read_text_file(params_file));
  const auto rn = resolve_rn(doc, rn_file);
  const auto ctx = make_context(doc, rn, spot);
  const double expiry = parse_ratio(expiry_s);
  const std::vector<double> strikes = parse_list(strikes_s);
  if (strikes.empty()) throw CLI::ValidationError("--strike", "no strikes given");

  std::vector<attn::pricer::PriceResult> results;
  if (method == "fourier") {
    const attn::pricer::FourierGrid grid{alpha, n_points, eta};
    auto calls = attn::pricer::price_call_fourier(ctx, strikes, expiry, grid);
    for (std::size_t i = 0; i < strikes.size(); ++i)
      results.push_back(is_put ? attn::pricer::price_put(calls[i], spot, strikes[i], expiry,
                                                         doc.model.r)
                               : calls[i]);
  } else if (method == "lognormal") {
    for (double k : strikes) results.push_back(attn::pricer::price_lognormal(ctx, k, expiry, !is_put));
  } else if (method == "mc") {
    results = attn::pricer::price_mc_batch(doc.model, rn, doc.history, !is_put, spot, strikes,
                                           expiry, paths, seed);
  } else if (method == "black_scholes") {
    for (double k : strikes)
      results.push_back(
          attn::pricer::price_black_scholes(spot, k, bs_sigma, doc.model.r, expiry, !is_put));
  } else {
    throw CLI::ValidationError("--method", "unknown method '" + method + "'");
  }

  ordered_json j;
  j["spot"] = spot;
  j["expiry"] = expiry;
  j["rate"] = doc.model.r;
  j["method"] = method;
  j["results"] = ordered_json::array();
  for (std::size_t i = 0; i < strikes.size(); ++i) {
    j["results"].push_back({{"strike", strikes[i]},
                            {"is_call", !is_put},
                            {"value", results[i].value},
                            {"err_estimate", results[i].err_estimate}});
  }
  attn::dataio::write_text_file(out, j.dump(2) + "\n");
  write_manifest("price", argv, method == "mc" ? std::optional<std::uint64_t>(seed) : std::nullopt,
                 {out});
  return 0;
}

int run_calibrate(const std::string& params_file, const std::string& quotes_file,
                  const std::string& valuation_date, double index_level, const std::string& out,
                  const std::string& table_out, const std::vector<std::string>& argv) {
  const auto doc = attn::dataio::params_from_json(attn::dataio::read_text_file(params_file));
  const auto raw = attn::dataio::load_quotes(quotes_file, valuation_date, index_level);
  const auto quotes = attn::calibrate::filter_quotes(raw);
  if (quotes.empty()) throw std::runtime_error("calibrate: no quotes pass the spread filter");
  const auto result = attn::calibrate::calibrate_rn(doc.model, doc.history, quotes, index_level);

  ordered_json j;
  j["lambda_a"] = result.rn.lambda_a;
  j["lambda_ab"] = result.rn.lambda_ab;
  j["a_tilde"] = result.rn.a_tilde;
  j["b_tilde"] = result.rn.b_tilde;
  j["rmse"] = result.rmse;
  j["uncalibrated_rmse"] = result.uncalibrated_rmse;
  j["n_quotes"] = result.n_quotes;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["identifiability_warning"] = result.identifiability_warning;
  attn::dataio::write_text_file(out, j.dump(2) + "\n");

  std::vector<std::string> outputs = {out};
  if (!table_out.empty()) {
    attn::dataio::write_text_file(table_out, result.per_quote_csv());
    outputs.push_back(table_out);
  }
  write_manifest("calibrate", argv, std::nullopt, outputs);
  return 0;
}

int run_experiment_cmd(const CommonModelFlags& flags, const std::string& horizons_s, int reps,
                       std::uint64_t seed, double spot, int threads, const std::string& out,
                       const std::vector<std::string>& argv) {
  const auto p = flags.params();
  const auto h = flags.history();
  const double delta = parse_ratio(flags.delta);
  const auto horizons = parse_list(horizons_s);
  const auto summary =
      attn::sim::run_experiment(p, h, horizons, delta, reps, seed, std::log(spot), threads);
  attn::dataio::write_text_file(out, summary.to_csv());
  write_manifest("experiment", argv, seed, {out});
  return 0;
}

int run_compare_bs(const std::string& params_file, const std::string& rn_file,
                   const std::string& quotes_file, const std::string& valuation_date,
                   double index_level, const std::string& prices_file, const std::string& delta_s,
                   const std::string& out, const std::vector<std::string>& argv) {
  const auto doc = attn::dataio::params_from_json(attn::dataio::read_text_file(params_file));
  const auto rn = resolve_rn(doc, rn_file);
  const auto raw = attn::dataio::load_quotes(quotes_file, valuation_date, index_level);
  const auto quotes = attn::calibrate::filter_quotes(raw);
  if (quotes.empty()) throw std::runtime_error("compare-bs: no quotes pass the spread filter");

  // Volatility for the baseline from the same historical window.
  const double delta = parse_ratio(delta_s);
  const auto series = attn::dataio::load_value_series(prices_file, "price");
  std::vector<double> returns;
  for (std::size_t i = 1; i < series.size(); ++i)
    returns.push_back(std::log(series[i]) - std::log(series[i - 1]));
  const double bs_sigma = attn::pricer::fit_bs_sigma(returns, delta);

  const auto ctx = make_context(doc, rn, index_level);
  std::vector<double> model, bs, mids;
  for (const auto& fq : quotes) {
    const double k[1] = {fq.quote.strike};
    const auto call = attn::pricer::price_call_fourier(ctx, k, fq.quote.expiry)[0];
    const auto model_px = fq.quote.is_call
                              ? call
                              : attn::pricer::price_put(call, index_level, fq.quote.strike,
                                                        fq.quote.expiry, doc.model.r);
    model.push_back(model_px.value);
    bs.push_back(attn::pricer::price_black_scholes(index_level, fq.quote.strike, bs_sigma,
                                                   doc.model.r, fq.quote.expiry, fq.quote.is_call)
                     .value);
    mids.push_back(fq.mid);
  }
  const double model_rmse = attn::calibrate::rmse(model, mids);
  const double bs_rmse = attn::calibrate::rmse(bs, mids);

  ordered_json j;
  j["model_rmse"] = model_rmse;
  j["bs_rmse"] = bs_rmse;
  j["rmse_ratio"] = model_rmse / bs_rmse;
  j["bs_sigma"] = bs_sigma;
  j["n_quotes"] = quotes.size();
  attn::dataio::write_text_file(out, j.dump(2) + "\n");
  write_manifest("compare-bs", argv, std::nullopt, {out});
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delayed attention-driven stochastic volatility toolkit"};
  app.require_subcommand(1);
  std::vector<std::string> raw_argv(argv, argv + argc);

  // simulate ------------------------------------------------------------
  auto* sim_cmd = app.add_subcommand("simulate", "simulate one attention/log-price path");
  CommonModelFlags sim_flags;
  sim_flags.attach(sim_cmd);
  int sim_steps = 720;
  std::uint64_t sim_seed = 1;
  double sim_spot = 20000.0;
  std::string sim_out = "path.csv";
  sim_cmd->add_option("--steps", sim_steps, "number of grid steps");
  sim_cmd->add_option("--seed", sim_seed, "random seed");
  sim_cmd->add_option("--spot", sim_spot, "initial underlying level (currency)");
  sim_cmd->add_option("--out", sim_out, "output CSV path");

  // estimate ------------------------------------------------------------
  auto* est_cmd = app.add_subcommand("estimate", "fit the model to price and proxy files");
  std::string est_prices, est_proxy, est_delta = "1/365", est_out = "fit.json";
  std::string est_criteria, est_full;
  int est_max_lag = 20;
  double est_rate = 0.0;
  est_cmd->add_option("--prices", est_prices, "price CSV (date,price)")->required();
  est_cmd->add_option("--proxy", est_proxy, "attention proxy CSV (date,value)")->required();
  est_cmd->add_option("--delta", est_delta, "grid step (years; accepts p/q)");
  est_cmd->add_option("--max-lag", est_max_lag, "largest delay in grid steps");
  est_cmd->add_option("--rate", est_rate, "risk-free rate stored with --full-params (1/years)");
  est_cmd->add_option("--out", est_out, "fit JSON output");
  est_cmd->add_option("--criteria", est_criteria, "optional per-lag criterion CSV");
  est_cmd->add_option("--full-params", est_full, "optional parameter document for pricing");

  // gof -----------------------------------------------------------------
  auto* gof_cmd = app.add_subcommand("gof", "goodness of fit of the attention model");
  std::string gof_proxy, gof_delta = "1/365", gof_out = "gof.json";
  gof_cmd->add_option("--proxy", gof_proxy, "attention proxy CSV (date,value)")->required();
  gof_cmd->add_option("--delta", gof_delta, "grid step (years; accepts p/q)");
  gof_cmd->add_option("--out", gof_out, "output JSON path");

  // price ---------------------------------------------------------------
  auto* price_cmd = app.add_subcommand("price", "price European options");
  std::string pr_params, pr_rn, pr_strikes, pr_expiry = "0.25", pr_method = "fourier";
  std::string pr_out = "price.json";
  bool pr_put = false;
  long pr_paths = 100000;
  std::uint64_t pr_seed = 1;
  double pr_spot = 0.0, pr_bs_sigma = 0.0, pr_alpha = 1.5, pr_eta = 0.25;
  int pr_npoints = 4096;
  price_cmd->add_option("--params", pr_params, "parameter document JSON")->required();
  price_cmd->add_option("--rn", pr_rn, "risk-neutral parameter JSON (default: unchanged measure)");
  price_cmd->add_option("--spot", pr_spot, "underlying level (currency)")->required();
  price_cmd->add_option("--strike", pr_strikes, "strike or comma list (currency)")->required();
  price_cmd->add_option("--expiry", pr_expiry, "expiry (years; accepts p/q)");
  price_cmd->add_option("--method", pr_method, "fourier | lognormal | mc | black_scholes");
  price_cmd->add_flag("--put", pr_put, "price puts instead of calls");
  price_cmd->add_option("--paths", pr_paths, "Monte Carlo paths");
  price_cmd->add_option("--seed", pr_seed, "Monte Carlo seed");
  price_cmd->add_option("--bs-sigma", pr_bs_sigma, "volatility for method=black_scholes (1/sqrt(years))");
  price_cmd->add_option("--alpha", pr_alpha, "transform damping");
  price_cmd->add_option("--n-points", pr_npoints, "transform grid size (power of two)");
  price_cmd->add_option("--eta", pr_eta, "transform frequency spacing");
  price_cmd->add_option("--out", pr_out, "output JSON path");

  // calibrate -------------------------------------------------------------
  auto* cal_cmd = app.add_subcommand("calibrate", "fit risk-neutral parameters to quotes");
  std::string cal_params, cal_quotes, cal_date, cal_out = "rn.json", cal_table;
  double cal_index = 0.0;
  cal_cmd->add_option("--params", cal_params, "parameter document JSON")->required();
  cal_cmd->add_option("--quotes", cal_quotes, "quote CSV (expiry_date,strike,is_call,bid_btc,ask_btc)")
      ->required();
  cal_cmd->add_option("--valuation-date", cal_date, "valuation date (YYYY-MM-DD)")->required();
  cal_cmd->add_option("--index-level", cal_index, "underlying index level (currency)")->required();
  cal_cmd->add_option("--out", cal_out, "risk-neutral JSON output");
  cal_cmd->add_option("--table", cal_table, "optional per-quote CSV output");

  // experiment ------------------------------------------------------------
  auto* exp_cmd = app.add_subcommand("experiment", "replicated simulation/estimation sweep");
  CommonModelFlags exp_flags;
  exp_flags.attach(exp_cmd);
  std::string exp_horizons = "0.5,1,2", exp_out = "experiment.csv";
  int exp_reps = 1000, exp_threads = 0;
  std::uint64_t exp_seed = 7;
  double exp_spot = 20000.0;
  exp_cmd->add_option("--horizons", exp_horizons, "comma list of horizons (years)");
  exp_cmd->add_option("--reps", exp_reps, "replications per horizon");
  exp_cmd->add_option("--seed", exp_seed, "base seed; replication r uses seed XOR r");
  exp_cmd->add_option("--spot", exp_spot, "initial underlying level (currency)");
  exp_cmd->add_option("--threads", exp_threads, "worker threads (0 = hardware)");
  exp_cmd->add_option("--out", exp_out, "summary CSV output");

  // compare-bs ------------------------------------------------------------
  auto* cmp_cmd = app.add_subcommand("compare-bs", "RMSE ratio against the Black-Scholes baseline");
  std::string cmp_params, cmp_rn, cmp_quotes, cmp_date, cmp_prices, cmp_delta = "1/365";
  std::string cmp_out = "compare_bs.json";
  double cmp_index = 0.0;
  cmp_cmd->add_option("--params", cmp_params, "parameter document JSON")->required();
  cmp_cmd->add_option("--rn", cmp_rn, "risk-neutral parameter JSON (default: unchanged measure)");
  cmp_cmd->add_option("--quotes", cmp_quotes, "quote CSV")->required();
  cmp_cmd->add_option("--valuation-date", cmp_date, "valuation date (YYYY-MM-DD)")->required();
  cmp_cmd->add_option("--index-level", cmp_index, "underlying index level (currency)")->required();
  cmp_cmd->add_option("--prices", cmp_prices, "price CSV for the baseline volatility")->required();
  cmp_cmd->add_option("--delta", cmp_delta, "grid step of the price series (years)");
  cmp_cmd->add_option("--out", cmp_out, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim_cmd->parsed())
      return run_simulate(sim_flags, sim_steps, effective_seed(sim_seed), sim_spot, sim_out,
                          raw_argv);
    if (est_cmd->parsed())
      return run_estimate(est_prices, est_proxy, est_delta, est_max_lag, est_rate, est_out,
                          est_criteria, est_full, raw_argv);
    if (gof_cmd->parsed()) return run_gof(gof_proxy, gof_delta, gof_out, raw_argv);
    if (price_cmd->parsed())
      return run_price(pr_params, pr_rn, pr_spot, pr_strikes, pr_expiry, pr_method, pr_put,
                       pr_paths, effective_seed(pr_seed), pr_bs_sigma, pr_alpha, pr_npoints,
                       pr_eta, pr_out, raw_argv);
    if (cal_cmd->parsed())
      return run_calibrate(cal_params, cal_quotes, cal_date, cal_index, cal_out, cal_table,
                           raw_argv);
    if (exp_cmd->parsed())
      return run_experiment_cmd(exp_flags, exp_horizons, exp_reps, effective_seed(exp_seed),
                                exp_spot, exp_threads, exp_out, raw_argv);
    if (cmp_cmd->parsed())
      return run_compare_bs(cmp_params, cmp_rn, cmp_quotes, cmp_date, cmp_index, cmp_prices,
                            cmp_delta, cmp_out, raw_argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
