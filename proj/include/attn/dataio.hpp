#pragma once

#include "attn/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace attn::dataio {

/// Everything the JSON parameter document carries. rn is optional (a
/// document written before calibration has none).
struct ParamsDocument {
  ModelParams model;
  InterestHistory history;
  std::optional<RNParams> rn;
};

/// Inner-join price and proxy CSVs on date (schemas `date,price` and
/// `date,value`, ISO-8601 dates, RFC 4180 quoting), log-transform the
/// prices and expose the first max_lag proxy rows as pre-sample history.
/// Joined dates must form a contiguous daily grid; gaps are reported.
SeriesPair load_series(const std::string& prices_file, const std::string& proxy_file, double delta,
                       int max_lag);

/// Load one `date,<value_column>` CSV as a date-sorted value vector with
/// the same contiguity and positivity checks as load_series.
std::vector<double> load_value_series(const std::string& file, const std::string& value_column);

/// Load option quotes (`expiry_date,strike,is_call,bid_btc,ask_btc`).
/// Expiries convert to ACT/365 year fractions from valuation_date and
/// premiums quoted in the underlying convert to currency at index_level.
/// Rows expiring on or before the valuation date are dropped with a
/// reason recorded in `rejects` when provided.
std::vector<OptionQuote> load_quotes(const std::string& quotes_file,
                                     const std::string& valuation_date, double index_level,
                                     std::vector<std::string>* rejects = nullptr);

/// Versioned JSON round trip for the parameter document. Writing rejects
/// non-finite values; reading ignores unknown fields (collected into
/// `warnings` when provided) and rejects schema mismatches.
std::string params_to_json(const ParamsDocument& doc);
ParamsDocument params_from_json(const std::string& text,
                                std::vector<std::string>* warnings = nullptr);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Days since the civil epoch 1970-01-01 for an ISO date (proleptic
/// Gregorian); used for gap checks and ACT/365 year fractions.
long days_from_iso_date(const std::string& iso);

} // namespace attn::dataio
