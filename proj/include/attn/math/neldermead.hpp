#pragma once

#include <functional>
#include <vector>

namespace attn::math {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex minimisation. The initial simplex is the start
/// point displaced by `scale` along each coordinate. Stops when the
/// function spread across the simplex falls below f_tol*(|f|+1).
SimplexResult nelder_mead(const std::vector<double>& start, double scale, double f_tol,
                          int max_iter, const std::function<double(const std::vector<double>&)>& f);

} // namespace attn::math
