#include "exdep/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "exdep/errors.hpp"
#include "exdep/quadrature.hpp"

namespace exdep {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2Pi = 2.50662827463100050242;
constexpr double kTwoPi = 6.28318530717958647692;

// Acklam's rational approximation to the normal quantile (~1e-9 relative),
// refined below to full precision.
double quantile_seed(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// 24-point Gauss-Legendre rule on [-1,1], generated once by Newton iteration
// on the Legendre recurrence.
struct GlRule {
  std::array<double, 24> x{};
  std::array<double, 24> w{};
};

GlRule make_gl24() {
  GlRule rule;
  constexpr int n = 24;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.w[n - 1 - i] = rule.w[i];
  }
  return rule;
}

// Drezner-Wesolowsky angular integrand for the bivariate normal df.
double bvn_integrand(double h, double k, double theta) {
  const double s = std::sin(theta);
  const double c2 = 1.0 - s * s;
  if (c2 <= 0.0) return 0.0;
  return std::exp(-(h * h + k * k - 2.0 * h * k * s) / (2.0 * c2));
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw NumericError("normal_quantile: p outside (0,1)");
  double x = quantile_seed(p);
  // One Halley step against the erfc-based df.
  const double e = normal_cdf(x) - p;
  const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double bvn_cdf(double h, double k, double rho) {
  if (std::isnan(h) || std::isnan(k)) return std::numeric_limits<double>::quiet_NaN();
  if (h == -std::numeric_limits<double>::infinity() ||
      k == -std::numeric_limits<double>::infinity())
    return 0.0;
  if (h == std::numeric_limits<double>::infinity()) return normal_cdf(k);
  if (k == std::numeric_limits<double>::infinity()) return normal_cdf(h);
  rho = std::clamp(rho, -1.0, 1.0);
  if (rho >= 1.0) return normal_cdf(std::min(h, k));
  if (rho <= -1.0) return std::max(0.0, normal_cdf(h) + normal_cdf(k) - 1.0);

  const double base = normal_cdf(h) * normal_cdf(k);
  if (rho == 0.0) return base;
  const double upper = std::asin(rho);
  double integral;
  if (std::abs(rho) <= 0.925) {
    static const GlRule rule = make_gl24();
    const double c = 0.5 * upper;
    double sum = 0.0;
    for (int i = 0; i < 24; ++i) sum += rule.w[i] * bvn_integrand(h, k, c * (1.0 + rule.x[i]));
    integral = sum * c;
  } else {
    // Near-singular correlations: the integrand gets peaky, fall back to
    // adaptive quadrature.
    QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    integral = integrate([&](double t) { return bvn_integrand(h, k, t); }, 0.0, upper, spec).value;
  }
  return std::clamp(base + integral / kTwoPi, 0.0, 1.0);
}

double ks_distance(std::vector<double> values, const std::function<double(double)>& cdf) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace exdep
