#include "attn/dataio.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace attn::dataio {

namespace {

using nlohmann::ordered_json;

// RFC 4180 CSV: quoted fields may contain commas, quotes double up.
std::vector<std::vector<std::string>> parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto end_field = [&] { row.push_back(std::move(field)); field.clear(); };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };
  while (i < n) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_row();
    } else if (c != '\r') {
      field += c;
    }
    ++i;
  }
  if (!field.empty() || !row.empty()) end_row();
  if (quoted) throw std::runtime_error(path + ": unterminated quote");
  return rows;
}

double parse_double(const std::string& s, const std::string& path, std::size_t line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": not a number: '" + s + "'");
  }
}

std::string iso_from_days(long days) {
  // Inverse of days_from_iso_date (Howard Hinnant's civil_from_days).
  long z = days + 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned long doe = static_cast<unsigned long>(z - era * 146097);
  const unsigned long yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long y = static_cast<long>(yoe) + era * 400;
  const unsigned long doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned long mp = (5 * doy + 2) / 153;
  const unsigned long d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned long m = mp < 10 ? mp + 3 : mp - 9;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04ld-%02lu-%02lu", y + (m <= 2), m, d);
  return buf;
}

std::map<std::string, double> load_two_column(const std::string& path, const std::string& col0,
                                              const std::string& col1, bool require_positive) {
  const auto rows = parse_csv(path);
  if (rows.empty() || rows[0].size() != 2 || rows[0][0] != col0 || rows[0][1] != col1)
    throw std::runtime_error(path + ": expected header '" + col0 + "," + col1 + "'");
  std::map<std::string, double> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 2)
      throw std::runtime_error(path + ":" + std::to_string(i + 1) + ": expected 2 fields");
    const double v = parse_double(rows[i][1], path, i + 1);
    if (require_positive && !(v > 0.0))
      throw std::runtime_error(path + ":" + std::to_string(i + 1) + ": value " + rows[i][1] +
                               " must be positive");
    days_from_iso_date(rows[i][0]);  // validates the date format
    out[rows[i][0]] = v;
  }
  return out;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw std::invalid_argument(std::string("params_to_json: non-finite value for ") + name);
}

} // namespace

long days_from_iso_date(const std::string& iso) {
  int y = 0, m = 0, d = 0;
  char dash1 = 0, dash2 = 0;
  std::istringstream s(iso);
  s >> y >> dash1 >> m >> dash2 >> d;
  if (!s || dash1 != '-' || dash2 != '-' || m < 1 || m > 12 || d < 1 || d > 31)
    throw std::runtime_error("bad ISO date: '" + iso + "'");
  // Howard Hinnant's days_from_civil.
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m > 2 ? m - 3 : m + 9) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

SeriesPair load_series(const std::string& prices_file, const std::string& proxy_file, double delta,
                       int max_lag) {
  if (!(delta > 0.0)) throw std::invalid_argument("load_series: delta must be positive");
  if (max_lag < 0) throw std::invalid_argument("load_series: max_lag must be nonnegative");
  const auto prices = load_two_column(prices_file, "date", "price", true);
  const auto proxy = load_two_column(proxy_file, "date", "value", true);

  std::vector<std::pair<std::string, std::pair<double, double>>> joined;  // date -> (price, proxy)
  for (const auto& [date, price] : prices) {
    const auto it = proxy.find(date);
    if (it != proxy.end()) joined.push_back({date, {price, it->second}});
  }
  if (joined.size() < static_cast<std::size_t>(max_lag + 2))
    throw std::runtime_error("load_series: joined series too short (" +
                             std::to_string(joined.size()) + " rows, need at least " +
                             std::to_string(max_lag + 2) + ")");

  // joined is date-sorted because prices is an ordered map.
  std::string gaps;
  for (std::size_t i = 1; i < joined.size(); ++i) {
    const long d0 = days_from_iso_date(joined[i - 1].first);
    const long d1 = days_from_iso_date(joined[i].first);
    if (d1 != d0 + 1) {
      for (long d = d0 + 1; d < d1; ++d) {
        if (!gaps.empty()) gaps += ", ";
        gaps += iso_from_days(d);
      }
    }
  }
  if (!gaps.empty()) throw std::runtime_error("load_series: missing dates: " + gaps);

  SeriesPair out;
  out.delta = delta;
  out.start_date = joined[static_cast<std::size_t>(max_lag)].first;
  out.proxy.reserve(joined.size());
  for (const auto& row : joined) out.proxy.push_back(row.second.second);
  for (std::size_t i = static_cast<std::size_t>(max_lag); i < joined.size(); ++i)
    out.log_prices.push_back(std::log(joined[i].second.first));
  return out;
}

std::vector<double> load_value_series(const std::string& file, const std::string& value_column) {
  const auto data = load_two_column(file, "date", value_column, true);
  std::string gaps;
  std::vector<double> out;
  long prev = 0;
  bool first = true;
  for (const auto& [date, value] : data) {
    const long d = days_from_iso_date(date);
    if (!first && d != prev + 1)
      for (long g = prev + 1; g < d; ++g) {
        if (!gaps.empty()) gaps += ", ";
        gaps += iso_from_days(g);
      }
    prev = d;
    first = false;
    out.push_back(value);
  }
  if (!gaps.empty()) throw std::runtime_error(file + ": missing dates: " + gaps);
  return out;
}

std::vector<OptionQuote> load_quotes(const std::string& quotes_file,
                                     const std::string& valuation_date, double index_level,
                                     std::vector<std::string>* rejects) {
  if (!(index_level > 0.0)) throw std::invalid_argument("load_quotes: index level must be positive");
  const auto rows = parse_csv(quotes_file);
  const std::vector<std::string> header = {"expiry_date", "strike", "is_call", "bid_btc",
                                           "ask_btc"};
  if (rows.empty() || rows[0] != std::vector<std::string>(header))
    throw std::runtime_error(quotes_file +
                             ": expected header 'expiry_date,strike,is_call,bid_btc,ask_btc'");
  const long val_days = days_from_iso_date(valuation_date);
  std::vector<OptionQuote> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 5)
      throw std::runtime_error(quotes_file + ":" + std::to_string(i + 1) + ": expected 5 fields");
    OptionQuote q;
    const long exp_days = days_from_iso_date(r[0]);
    q.expiry = static_cast<double>(exp_days - val_days) / 365.0;
    q.strike = parse_double(r[1], quotes_file, i + 1);
    if (r[2] == "1" || r[2] == "true")
      q.is_call = true;
    else if (r[2] == "0" || r[2] == "false")
      q.is_call = false;
    else
      throw std::runtime_error(quotes_file + ":" + std::to_string(i + 1) +
                               ": is_call must be 0/1/true/false, got '" + r[2] + "'");
    q.bid = parse_double(r[3], quotes_file, i + 1) * index_level;
    q.ask = parse_double(r[4], quotes_file, i + 1) * index_level;
    q.underlying = index_level;
    if (q.expiry <= 0.0) {
      if (rejects)
        rejects->push_back(quotes_file + ":" + std::to_string(i + 1) +
                           ": expiry on or before valuation date");
      continue;
    }
    out.push_back(q);
  }
  return out;
}

std::string params_to_json(const ParamsDocument& doc) {
  for (double v : {doc.model.a, doc.model.b, doc.model.sigma_I, doc.model.mu, doc.model.sigma_P,
                   doc.model.tau, doc.model.r})
    require_finite(v, "model");
  for (double v : doc.history.times) require_finite(v, "history.times");
  for (double v : doc.history.values) require_finite(v, "history.values");

  ordered_json j;
  j["schema_version"] = 1;
  j["model"] = {{"a", doc.model.a},         {"b", doc.model.b},
                {"sigma_I", doc.model.sigma_I}, {"mu", doc.model.mu},
                {"sigma_P", doc.model.sigma_P}, {"tau", doc.model.tau},
                {"r", doc.model.r}};
  j["history"] = {{"times", doc.history.times}, {"values", doc.history.values}};
  if (doc.rn) {
    for (double v : {doc.rn->a_tilde, doc.rn->b_tilde, doc.rn->lambda_a, doc.rn->lambda_ab})
      require_finite(v, "rn");
    j["rn"] = {{"lambda_a", doc.rn->lambda_a},
               {"lambda_ab", doc.rn->lambda_ab},
               {"a_tilde", doc.rn->a_tilde},
               {"b_tilde", doc.rn->b_tilde}};
  }
  return j.dump(2) + "\n";
}

ParamsDocument params_from_json(const std::string& text, std::vector<std::string>* warnings) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("params_from_json: parse error: ") + e.what());
  }
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != 1)
    throw std::runtime_error("params_from_json: unsupported or missing schema_version");

  auto warn_unknown = [&](const ordered_json& obj, const std::vector<std::string>& known,
                          const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (std::find(known.begin(), known.end(), it.key()) == known.end() && warnings)
        warnings->push_back("ignoring unknown field " + where + it.key());
  };

  warn_unknown(j, {"schema_version", "model", "history", "rn"}, "");
  ParamsDocument doc;
  const auto& m = j.at("model");
  warn_unknown(m, {"a", "b", "sigma_I", "mu", "sigma_P", "tau", "r"}, "model.");
  doc.model.a = m.at("a").get<double>();
  doc.model.b = m.at("b").get<double>();
  doc.model.sigma_I = m.at("sigma_I").get<double>();
  doc.model.mu = m.at("mu").get<double>();
  doc.model.sigma_P = m.at("sigma_P").get<double>();
  doc.model.tau = m.at("tau").get<double>();
  doc.model.r = m.at("r").get<double>();
  const auto& h = j.at("history");
  warn_unknown(h, {"times", "values"}, "history.");
  doc.history.times = h.at("times").get<std::vector<double>>();
  doc.history.values = h.at("values").get<std::vector<double>>();
  if (j.contains("rn")) {
    warn_unknown(j["rn"], {"lambda_a", "lambda_ab", "a_tilde", "b_tilde"}, "rn.");
    RNParams rn;
    rn.lambda_a = j["rn"].at("lambda_a").get<double>();
    rn.lambda_ab = j["rn"].at("lambda_ab").get<double>();
    rn.a_tilde = j["rn"].at("a_tilde").get<double>();
    rn.b_tilde = j["rn"].at("b_tilde").get<double>();
    doc.rn = rn;
  }
  return doc;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace attn::dataio
