#include "attn/math/special.hpp"

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace attn::math {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Power series sum_k (z/2)^(2k+nu) / (k! Gamma(nu+k+1)), accumulated as
// log terms with a running log-sum-exp. All terms are positive.
double log_bessel_i_series(double nu, double z) {
  const double lhalfz = std::log(0.5 * z);
  double lterm = nu * lhalfz - std::lgamma(nu + 1.0);
  double lsum = lterm;
  for (int k = 0; k < 40000; ++k) {
    lterm += 2.0 * lhalfz - std::log1p(k) - std::log(nu + k + 1.0);
    lsum = log_add_exp(lsum, lterm);
    if (lterm < lsum - 36.0) break;  // remaining tail < ~2e-16 of the sum
  }
  return lsum;
}

// Debye polynomials u_k(t) for the uniform large-order expansion,
// evaluated via Horner in t^2 (each u_k is t^k times a poly in t^2).
void debye_u(double t, double u[7]) {
  const double t2 = t * t;
  u[0] = 1.0;
  u[1] = t * (1.0 / 8.0 + t2 * (-5.0 / 24.0));
  u[2] = t2 * (9.0 / 128.0 + t2 * (-77.0 / 192.0 + t2 * (385.0 / 1152.0)));
  u[3] = t * t2 *
         (75.0 / 1024.0 +
          t2 * (-4563.0 / 5120.0 + t2 * (17017.0 / 9216.0 + t2 * (-85085.0 / 82944.0))));
  u[4] = t2 * t2 *
         (3675.0 / 32768.0 +
          t2 * (-96833.0 / 40960.0 +
                t2 * (144001.0 / 16384.0 +
                      t2 * (-7436429.0 / 663552.0 + t2 * (37182145.0 / 7962624.0)))));
  u[5] = t * t2 * t2 *
         (59535.0 / 262144.0 +
          t2 * (-67608983.0 / 9175040.0 +
                t2 * (250881631.0 / 5898240.0 +
                      t2 * (-108313205.0 / 1179648.0 +
                            t2 * (5391411025.0 / 63700992.0 +
                                  t2 * (-5391411025.0 / 191102976.0))))));
  u[6] = t2 * t2 * t2 *
         (2401245.0 / 4194304.0 +
          t2 * (-388895895.0 / 14680064.0 +
                t2 * (1441372804469.0 / 6606028800.0 +
                      t2 * (-33010308331.0 / 47185920.0 +
                            t2 * (4445922195.0 / 4194304.0 +
                                  t2 * (-1169936192425.0 / 1528823808.0 +
                                        t2 * (5849680962125.0 / 27518828544.0)))))));
}

// Olver's uniform asymptotic expansion for large order, any argument.
double log_bessel_i_uniform(double nu, double z) {
  const double x = z / nu;
  const double sq = std::sqrt(1.0 + x * x);
  const double eta = sq + std::log(x / (1.0 + sq));
  const double t = 1.0 / sq;
  double u[7];
  debye_u(t, u);
  double ser = 0.0, p = 1.0;
  for (int k = 0; k < 7; ++k) {
    ser += u[k] * p;
    p /= nu;
  }
  return nu * eta - 0.5 * std::log(2.0 * M_PI * nu * sq) + std::log(ser);
}

// Hankel's large-argument expansion, adequate for small orders once
// z is well past the series cut-over.
double log_bessel_i_hankel(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, ser = 1.0;
  for (int k = 1; k <= 30; ++k) {
    const double f = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * z * k);
    term *= -f;
    if (std::abs(term) < 1e-18) {
      ser += term;
      break;
    }
    ser += term;
  }
  return z - 0.5 * std::log(2.0 * M_PI * z) + std::log(ser);
}

} // namespace

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-(std::abs(a - b))));
}

double log_bessel_i(double nu, double z) {
  if (!(nu > -1.0)) throw std::domain_error("log_bessel_i: order must exceed -1");
  if (z < 0.0) throw std::domain_error("log_bessel_i: negative argument");
  if (z == 0.0) return nu == 0.0 ? 0.0 : -kInf;
  // Series is exact but its term count grows like (sqrt(nu^2+z^2)-nu)/2.
  const double peak = 0.5 * (std::hypot(nu, z) - nu);
  if (peak <= 600.0) return log_bessel_i_series(nu, z);
  if (nu >= 20.0) return log_bessel_i_uniform(nu, z);
  return log_bessel_i_hankel(nu, z);
}

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double norm_quantile(double p) {
  // Wichura (1988), algorithm AS 241, PPND16.
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;
    throw std::domain_error("norm_quantile: p outside [0,1]");
  }
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double v;
  if (r <= 5.0) {
    r -= 1.6;
    v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -v : v;
}

double ncchi2_logpdf(double x, double df, double ncp) {
  if (!(x > 0.0) || !(df > 0.0) || !(ncp >= 0.0))
    throw std::domain_error("ncchi2_logpdf: invalid arguments");
  const double nu = 0.5 * df - 1.0;
  if (ncp == 0.0)
    return -std::lgamma(0.5 * df) - 0.5 * df * std::log(2.0) + nu * std::log(x) - 0.5 * x;
  return -std::log(2.0) - 0.5 * (x + ncp) + 0.5 * nu * std::log(x / ncp) +
         log_bessel_i(nu, std::sqrt(ncp * x));
}

double ncchi2_cdf(double x, double df, double ncp) {
  if (x <= 0.0) return 0.0;
  if (ncp == 0.0) return boost::math::gamma_p(0.5 * df, 0.5 * x);
  const boost::math::non_central_chi_squared_distribution<double> dist(df, ncp);
  return boost::math::cdf(dist, x);
}

double gamma_p(double a, double x) { return boost::math::gamma_p(a, x); }

} // namespace attn::math
