#include <doctest.h>

#include <cmath>

#include "exdep/errors.hpp"
#include "exdep/oracles.hpp"

using namespace exdep;

namespace {
double rss(double a, double b) { return std::sqrt(a * a + b * b); }
}  // namespace

TEST_CASE("quadrature reference values") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-9;
  CHECK(std::abs(mu_quadrature(make_h0(2), dist_h0(2), spec) - 2.0) <= 1e-9);
  // mean of the larger of two unit exponentials
  CHECK(std::abs(mu_quadrature(make_hinf(2), dist_h0(2), spec) - 1.5) <= 1e-9);
  // comonotone Z collapses the integral onto the extremal coefficient
  CHECK(std::abs(mu_quadrature(make_logistic(2, 2.0), dist_hinf(2), spec) - std::sqrt(2.0)) <=
        1e-9);
  CHECK_THROWS_AS(mu_quadrature(make_h0(2), dist_logistic(2, 2.0), spec), CapabilityError);
  CHECK_THROWS_AS(mu_quadrature(make_h0(3), dist_h0(3), spec), CapabilityError);
  CHECK_THROWS_AS(mu_quadrature(make_husler_reiss(2, 1.0), dist_h0(2), spec), CapabilityError);
}

TEST_CASE("quadrature agrees with the direct Monte Carlo estimator") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-9;
  const StreamKey k{7, 0, 0};
  int stream = 0;
  for (const double alpha : {1.5, 2.0, 3.0}) {
    const SpectralModel h = make_logistic(2, alpha);
    for (const bool comonotone : {false, true}) {
      const DistributionSpec q = comonotone ? dist_hinf(2) : dist_h0(2);
      const double quad = mu_quadrature(h, q, spec);
      const EstimatorResult mc = estimate_mu_direct(h, q, 400000, k.with_stream(stream++));
      CHECK(std::abs(quad - mc.estimate) <= spec.abs_tol + 4.0 * mc.std_error);
    }
  }
}

TEST_CASE("closed-form xi") {
  // independent product: the mixed partial vanishes, so xi is identically 1
  for (const double x1 : {0.5, 1.0, 3.0}) {
    const XiValue v = xi_closed_form(make_h0(2), x1, 2.0 * x1);
    CHECK_FALSE(v.singular);
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-14));
  }
  // logistic closes to V/(V + alpha - 1)
  for (const double alpha : {1.5, 2.0, 4.0}) {
    const SpectralModel h = make_logistic(2, alpha);
    const double v_exp = std::pow(2.0, 1.0 / alpha);
    CHECK(xi_closed_form(h, 1.0, 1.0).value ==
          doctest::Approx(v_exp / (v_exp + alpha - 1.0)).epsilon(1e-12));
  }
  // near-independence limit
  CHECK(xi_closed_form(make_logistic(2, 1.001), 1.0, 1.0).value > 0.999);
  // comonotone law is singular everywhere
  CHECK(xi_closed_form(make_hinf(2), 1.0, 1.0).singular);
  CHECK(xi_closed_form(make_hinf(2), 1.0, 2.0).singular);
}

TEST_CASE("xi finite difference converges to the closed form at first order") {
  const SpectralModel h = make_logistic(2, 2.0);
  const double exact = xi_closed_form(h, 1.3, 0.8).value;
  double prev = 0.0;
  int step = 0;
  for (const double hh : {4e-4, 2e-4, 1e-4}) {
    const double err = std::abs(xi_finite_difference(h, 1.3, 0.8, hh).value - exact);
    if (step++ > 0) {
      CHECK(prev / err > 1.5);
      CHECK(prev / err < 2.5);
    }
    prev = err;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("two routes to lambda through the exponent measure") {
  const StreamKey k{8, 0, 0};
  const std::uint64_t n = 400000;
  SUBCASE("product law: the integrand vanishes identically") {
    const auto [via_exp, via_spec] = lambda_integral_check(dist_h0(2), dist_logistic(2, 2.0), n, k);
    CHECK(via_exp.estimate == 0.0);
    CHECK(via_exp.std_error == 0.0);
    CHECK(std::abs(via_spec.estimate) <= 4.0 * std::max(via_spec.std_error, 1e-12));
  }
  SUBCASE("logistic against the product law") {
    const auto [via_exp, via_spec] = lambda_integral_check(dist_logistic(2, 2.0), dist_h0(2), n, k);
    CHECK(std::abs(via_exp.estimate - via_spec.estimate) <=
          4.0 * rss(via_exp.std_error, via_spec.std_error));
  }
  SUBCASE("logistic self: three routes meet") {
    const DistributionSpec lg = dist_logistic(2, 2.0);
    const auto [via_exp, via_spec] = lambda_integral_check(lg, lg, n, k.with_stream(1));
    const EstimatorResult self = estimate_lambda_self(make_logistic(2, 2.0), n, k.with_stream(2));
    CHECK(std::abs(via_exp.estimate - via_spec.estimate) <=
          4.0 * rss(via_exp.std_error, via_spec.std_error));
    CHECK(std::abs(via_exp.estimate - self.estimate) <=
          4.0 * rss(via_exp.std_error, self.std_error));
  }
}

TEST_CASE("uniform exceedance check") {
  const StreamKey k{9, 0, 0};
  const std::uint64_t reps = 2000000;
  SUBCASE("comonotone: the scaled corner probability is exactly 1 at every n") {
    const ExceedanceReport rep =
        uniform_exceedance_check(dist_hinf(2), 1.0, 1.0, {10, 100}, reps, k);
    CHECK(rep.limit == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& row : rep.rows)
      CHECK(std::abs(row.estimate - 1.0) <= 4.0 * std::max(row.std_error, 1e-9));
  }
  SUBCASE("logistic: finite-n value and limit") {
    const ExceedanceReport rep =
        uniform_exceedance_check(dist_logistic(2, 2.0), 1.0, 1.0, {100, 10000}, reps,
                                 k.with_stream(1));
    CHECK(rep.limit == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    // exact finite-n corner mass for the logistic df
    for (const auto& row : rep.rows) {
      const double n = static_cast<double>(row.n);
      const double a_u = 1.0 - 1.0 / n;
      const double exact = n * (1.0 - 2.0 * a_u + std::pow(a_u, std::sqrt(2.0)));
      CHECK(std::abs(row.estimate - exact) <= 4.0 * row.std_error);
    }
  }
  SUBCASE("asymmetric u and t") {
    const ExceedanceReport rep =
        uniform_exceedance_check(dist_hinf(2), 0.5, 2.0, {1000}, reps, k.with_stream(2));
    // min(Phi^(1/0.5), Phi^(1/2)) corner: limit u + t + ln Hinf(1/u, 1/t)
    CHECK(rep.limit == doctest::Approx(0.5 + 2.0 - 2.0).epsilon(1e-12));
    CHECK(std::abs(rep.rows[0].estimate - rep.limit) <= 4.0 * rep.rows[0].std_error);
  }
}
