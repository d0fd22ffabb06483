#include "attn/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace attn {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

} // namespace

InterestHistory InterestHistory::constant(double value, double length) {
  return InterestHistory{{-length, 0.0}, {value, value}};
}

std::vector<std::string> validate_history(const InterestHistory& h) {
  std::vector<std::string> out;
  if (h.times.size() < 2 || h.times.size() != h.values.size()) {
    out.push_back("history: needs at least two aligned knots");
    return out;
  }
  if (h.times.back() != 0.0)
    out.push_back("history: last knot time is " + fmt(h.times.back()) + ", expected 0");
  if (!(h.times.front() < 0.0))
    out.push_back("history: first knot time " + fmt(h.times.front()) + " must be negative");
  for (std::size_t i = 1; i < h.times.size(); ++i)
    if (!(h.times[i] > h.times[i - 1])) {
      out.push_back("history: knot times not strictly increasing at index " + std::to_string(i));
      break;
    }
  for (std::size_t i = 0; i < h.values.size(); ++i)
    if (!(h.values[i] > 0.0)) {
      out.push_back("history: value " + fmt(h.values[i]) + " at index " + std::to_string(i) +
                    " must be positive");
      break;
    }
  return out;
}

std::vector<std::string> validate_params(const ModelParams& p, const InterestHistory& h) {
  std::vector<std::string> out = validate_history(h);
  if (!(p.a > 0.0)) out.push_back("a: " + fmt(p.a) + " must be positive");
  if (!(p.sigma_I > 0.0)) out.push_back("sigma_I: " + fmt(p.sigma_I) + " must be positive");
  if (!(p.sigma_P > 0.0)) out.push_back("sigma_P: " + fmt(p.sigma_P) + " must be positive");
  if (!(p.tau >= 0.0)) out.push_back("tau: " + fmt(p.tau) + " must be nonnegative");
  if (!(p.r >= 0.0)) out.push_back("r: " + fmt(p.r) + " must be nonnegative");
  if (p.a > 0.0 && p.sigma_I > 0.0 && p.feller_ratio() < 1.0)
    out.push_back("Feller: 2ab/sigma_I^2=" + fmt(p.feller_ratio()) + " < 1");
  if (!h.times.empty() && p.tau > h.length())
    out.push_back("tau exceeds history length (tau=" + fmt(p.tau) + ", L=" + fmt(h.length()) + ")");
  return out;
}

double eval_history(const InterestHistory& h, double t) {
  if (h.times.size() < 2) throw std::domain_error("eval_history: empty history");
  if (t < h.times.front() || t > h.times.back())
    throw std::domain_error("eval_history: t=" + fmt(t) + " outside [" + fmt(h.times.front()) +
                            ", " + fmt(h.times.back()) + "]");
  const auto it = std::upper_bound(h.times.begin(), h.times.end(), t);
  std::size_t i = (it == h.times.end()) ? h.times.size() - 1
                                        : static_cast<std::size_t>(it - h.times.begin());
  if (i == 0) i = 1;
  const double t0 = h.times[i - 1], t1 = h.times[i];
  if (t == t0) return h.values[i - 1];
  if (t == t1) return h.values[i];
  const double w = (t - t0) / (t1 - t0);
  return h.values[i - 1] + w * (h.values[i] - h.values[i - 1]);
}

double integrate_history(const InterestHistory& h, double s, double t) {
  if (h.times.size() < 2) throw std::domain_error("integrate_history: empty history");
  if (s > t) throw std::domain_error("integrate_history: s > t");
  if (s < h.times.front() || t > h.times.back())
    throw std::domain_error("integrate_history: [" + fmt(s) + ", " + fmt(t) +
                            "] leaves the history domain [" + fmt(h.times.front()) + ", 0]");
  if (s == t) return 0.0;
  double total = 0.0;
  for (std::size_t i = 1; i < h.times.size(); ++i) {
    const double lo = std::max(s, h.times[i - 1]);
    const double hi = std::min(t, h.times[i]);
    if (hi <= lo) continue;
    // Linear on the segment: trapezoid of the two clipped endpoint values.
    const double t0 = h.times[i - 1], t1 = h.times[i];
    const double v0 = h.values[i - 1], v1 = h.values[i];
    const double slope = (v1 - v0) / (t1 - t0);
    const double f_lo = v0 + slope * (lo - t0);
    const double f_hi = v0 + slope * (hi - t0);
    total += 0.5 * (f_lo + f_hi) * (hi - lo);
  }
  return total;
}

} // namespace attn
