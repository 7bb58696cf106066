#pragma once

#include <functional>
#include <vector>

namespace exdep {

// Standard normal df, full double accuracy (erfc based).
double normal_cdf(double x);

// Inverse of normal_cdf on (0,1); rational approximation with one Halley
// refinement against normal_cdf. Throws NumericError outside (0,1).
double normal_quantile(double p);

// Bivariate standard normal df P(X <= h, Y <= k) with correlation rho.
// Infinite arguments are honored. |rho| <= 1.
double bvn_cdf(double h, double k, double rho);

// Kolmogorov-Smirnov distance between the empirical df of `values`
// (need not be sorted; copied internally) and `cdf`.
double ks_distance(std::vector<double> values, const std::function<double(double)>& cdf);

}  // namespace exdep
