#include "attn/math/fft.hpp"
#include "attn/math/neldermead.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace attn::math {

void fft(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: size must be a power of two");
  // Bit reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const auto u = a[i + j];
        const auto v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

SimplexResult nelder_mead(const std::vector<double>& start, double scale, double f_tol,
                          int max_iter,
                          const std::function<double(const std::vector<double>&)>& f) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> pts(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += scale;
  std::vector<double> fv(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) fv[i] = f(pts[i]);

  SimplexResult res;
  auto order = [&] {
    for (std::size_t i = 0; i <= dim; ++i)
      for (std::size_t j = i + 1; j <= dim; ++j)
        if (fv[j] < fv[i]) {
          std::swap(fv[i], fv[j]);
          std::swap(pts[i], pts[j]);
        }
  };
  std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
  int it = 0;
  for (; it < max_iter; ++it) {
    order();
    if (std::abs(fv[dim] - fv[0]) <= f_tol * (std::abs(fv[0]) + 1.0)) {
      res.converged = true;
      break;
    }
    for (std::size_t d = 0; d < dim; ++d) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim; ++i) s += pts[i][d];
      centroid[d] = s / static_cast<double>(dim);
    }
    for (std::size_t d = 0; d < dim; ++d) xr[d] = centroid[d] + (centroid[d] - pts[dim][d]);
    const double fr = f(xr);
    if (fr < fv[0]) {
      for (std::size_t d = 0; d < dim; ++d) xe[d] = centroid[d] + 2.0 * (centroid[d] - pts[dim][d]);
      const double fe = f(xe);
      if (fe < fr) {
        pts[dim] = xe;
        fv[dim] = fe;
      } else {
        pts[dim] = xr;
        fv[dim] = fr;
      }
    } else if (fr < fv[dim - 1]) {
      pts[dim] = xr;
      fv[dim] = fr;
    } else {
      const bool outside = fr < fv[dim];
      for (std::size_t d = 0; d < dim; ++d)
        xc[d] = outside ? centroid[d] + 0.5 * (xr[d] - centroid[d])
                        : centroid[d] - 0.5 * (centroid[d] - pts[dim][d]);
      const double fc = f(xc);
      if (fc < (outside ? fr : fv[dim])) {
        pts[dim] = xc;
        fv[dim] = fc;
      } else {
        // Shrink toward the best vertex.
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t d = 0; d < dim; ++d) pts[i][d] = pts[0][d] + 0.5 * (pts[i][d] - pts[0][d]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  res.x = pts[0];
  res.value = fv[0];
  res.iterations = it;
  return res;
}

} // namespace attn::math
