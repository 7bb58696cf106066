#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "exdep/measures.hpp"
#include "exdep/quadrature.hpp"

namespace exdep {

// Deterministic quadrature value of mu(H,Q) = E[-ln H(Z)] for d == 2 and
// Q in {h0, indep_frechet, hinf}. The integral is mapped onto (0,1)^dim by
// the substitution u = exp(-1/z).
double mu_quadrature(const SpectralModel& h, const DistributionSpec& q,
                     const QuadratureSpec& spec = {});

struct XiValue {
  double value = 0.0;
  bool singular = false;
};

// Closed-form xi from the analytic partials of V = -ln H:
//   xi = V1*V2 / (V1*V2 - V12),
// the independent-increments share of the local H-mass. Singular when the
// denominator falls below 1e-14 (comonotone laws).
XiValue xi_closed_form(const SpectralModel& h, double x1, double x2);

// Two independent routes to lambda(Q,H) for bivariate H: a Monte Carlo
// integral of (1 - xi_H(V)) * Q(V)/H(V) over V ~ H against the closed-form
// xi, and the spectral min-ratio estimator. Returned as (exponent-route,
// spectral-route).
std::pair<EstimatorResult, EstimatorResult> lambda_integral_check(const DistributionSpec& h,
                                                                  const DistributionSpec& q,
                                                                  std::uint64_t n,
                                                                  const StreamKey& key);

struct ExceedanceRow {
  std::uint64_t n = 0;
  double estimate = 0.0;  // n * P(U1 > 1-u/n, U2 > 1-t/n), U_i = exp(-1/V_i)
  double std_error = 0.0;
};

struct ExceedanceReport {
  std::vector<ExceedanceRow> rows;
  double limit = 0.0;  // u + t + ln H(1/u, 1/t)
};

// Joint uniform-exceedance limit check for bivariate max-stable H: the
// scaled corner probability converges to u + t + ln H(1/u,1/t).
ExceedanceReport uniform_exceedance_check(const DistributionSpec& h, double u, double t,
                                          const std::vector<std::uint64_t>& n_list,
                                          std::uint64_t reps, const StreamKey& key);

// Exact finite-sample domination probabilities (pi_n, pi_bar_n) for the
// product and comonotone laws:
//   independence: pi_bar = (n+1)^-d,  pi = 1 - (1 - 1/(n+1))^d
//   comonotone:   pi_bar = pi = 1/(n+1)
std::pair<double, double> exact_domination(Family family, int d, std::uint64_t n);

}  // namespace exdep
