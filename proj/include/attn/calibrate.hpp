#pragma once

#include "attn/core.hpp"
#include "attn/pricer.hpp"

#include <span>
#include <string>
#include <vector>

namespace attn::calibrate {

struct FilteredQuote {
  OptionQuote quote;
  double mid = 0.0;
};

struct QuoteRow {
  OptionQuote quote;
  double mid = 0.0;
  double model_price = 0.0;
};

struct CalibrationResult {
  RNParams rn;
  double rmse = 0.0;
  double uncalibrated_rmse = 0.0;
  int n_quotes = 0;
  int iterations = 0;
  bool converged = false;
  bool identifiability_warning = false;  // near-flat objective across distant optima
  std::vector<QuoteRow> per_quote;

  std::string per_quote_csv() const;  // strike,expiry,is_call,bid,ask,mid,model_price
};

/// Keep quotes with positive bid, positive expiry and a relative spread
/// (ask - bid)/ask strictly below 0.1; attach the mid price.
std::vector<FilteredQuote> filter_quotes(const std::vector<OptionQuote>& quotes);

/// Root mean squared deviation between two equally long vectors.
double rmse(std::span<const double> model_prices, std::span<const double> mids);

/// Choose the risk-neutral attention parameters minimizing the RMSE
/// between model prices (damped-transform calls, parity puts) and market
/// mids. Searches in (a_tilde, b_tilde) under a_tilde > 0 and
/// 2*a_tilde*b_tilde >= sigma_I^2, starting from the unchanged-measure
/// point plus a coarse feasible grid; the result never does worse than
/// the unchanged measure.
CalibrationResult calibrate_rn(const ModelParams& p, const InterestHistory& h,
                               const std::vector<FilteredQuote>& quotes, double S0,
                               const pricer::FourierGrid& grid = {});

} // namespace attn::calibrate
