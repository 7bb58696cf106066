#include <doctest.h>

#include <cmath>

#include "exdep/errors.hpp"
#include "exdep/quadrature.hpp"
#include "exdep/rng.hpp"
#include "exdep/special.hpp"

using namespace exdep;

TEST_CASE("normal cdf basics") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  for (double x : {-3.0, -1.0, -0.2, 0.7, 2.5}) {
    CHECK(normal_cdf(x) + normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("normal quantile round trip on the resolvable range") {
  // Upper-tail p values collapse onto few doubles past x ~ 6, so the round
  // trip is only meaningful where p is representable.
  for (double x = -8.0; x <= 5.0; x += 0.125) {
    CHECK(normal_quantile(normal_cdf(x)) == doctest::Approx(x).epsilon(1e-10));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), NumericError);
  CHECK_THROWS_AS(normal_quantile(1.0), NumericError);
}

TEST_CASE("bivariate normal df identities") {
  const double two_pi = 6.283185307179586;
  for (double rho : {-0.95, -0.5, 0.0, 0.3, 0.5, 0.925, 0.99}) {
    CHECK(bvn_cdf(0.0, 0.0, rho) ==
          doctest::Approx(0.25 + std::asin(rho) / two_pi).epsilon(1e-13));
  }
  // independence factorizes
  CHECK(bvn_cdf(0.7, -1.3, 0.0) ==
        doctest::Approx(normal_cdf(0.7) * normal_cdf(-1.3)).epsilon(1e-14));
  // comonotone / countermonotone limits
  CHECK(bvn_cdf(0.4, 1.9, 1.0) == doctest::Approx(normal_cdf(0.4)).epsilon(1e-14));
  CHECK(bvn_cdf(0.4, 1.9, -1.0) ==
        doctest::Approx(std::max(0.0, normal_cdf(0.4) + normal_cdf(1.9) - 1.0)).epsilon(1e-12));
  // infinite arguments collapse to margins
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(bvn_cdf(inf, 0.3, 0.5) == doctest::Approx(normal_cdf(0.3)).epsilon(1e-14));
  CHECK(bvn_cdf(-inf, 0.3, 0.5) == 0.0);
  // monotone in rho
  double prev = 0.0;
  for (double rho = -0.9; rho <= 0.9; rho += 0.1) {
    const double v = bvn_cdf(0.5, -0.2, rho);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("bivariate normal df matches Monte Carlo") {
  const StreamKey k{19, 0, 0};
  const double rho = 0.5;
  const int n = 400000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const StreamKey rk = k.row(static_cast<std::uint64_t>(i));
    const double z1 = sample_std_normal(rk, 0);
    const double z2 = rho * z1 + std::sqrt(1.0 - rho * rho) * sample_std_normal(rk, 1);
    hits += (z1 <= 0.5 && z2 <= -0.25);
  }
  const double mc = static_cast<double>(hits) / n;
  const double se = std::sqrt(mc * (1.0 - mc) / n);
  CHECK(std::abs(mc - bvn_cdf(0.5, -0.25, rho)) < 4.0 * se);
}

TEST_CASE("adaptive quadrature handles smooth, kinked and singular integrands") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-10;
  CHECK(integrate([](double x) { return x * x * x; }, 0.0, 1.0, spec).value ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(integrate([](double x) { return -std::log(x); }, 0.0, 1.0, spec).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, spec).value ==
        doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-10));
  QuadratureSpec tight;
  tight.abs_tol = 1e-12;
  tight.max_subdivisions = 3;
  CHECK_THROWS_AS(integrate([](double x) { return -std::log(x); }, 0.0, 1.0, tight), NumericError);
}

TEST_CASE("ks distance of a uniform grid against the identity df") {
  std::vector<double> v;
  const int n = 1000;
  for (int i = 0; i < n; ++i) v.push_back((i + 0.5) / n);
  const double d = ks_distance(v, [](double x) { return x; });
  CHECK(d == doctest::Approx(0.5 / n).epsilon(1e-9));
}
