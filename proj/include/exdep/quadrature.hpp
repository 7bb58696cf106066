#pragma once

#include <functional>

namespace exdep {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

// Globally adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b].
// Splits the interval with the largest error estimate until the summed
// error falls below abs_tol. Throws NumericError when max_subdivisions
// is exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

}  // namespace exdep
