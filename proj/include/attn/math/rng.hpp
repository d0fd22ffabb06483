#pragma once

#include <cstdint>
#include <random>

namespace attn::math {

/// splitmix64 step; used to spread user seeds into independent stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Random draws on top of mt19937_64 with hand-rolled distributions, so a
/// given seed produces the same stream on every platform and standard
/// library (the std:: distribution objects are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                       // U(0,1), open at 0
  double normal();                        // N(0,1), Marsaglia polar
  double gamma(double shape);             // Gamma(shape, 1)
  long poisson(double mean);              // exact for any mean

 private:
  std::mt19937_64 engine_;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

} // namespace attn::math
