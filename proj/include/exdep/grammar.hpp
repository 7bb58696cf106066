#pragma once

#include <string>

#include "exdep/samplers.hpp"

namespace exdep {

// Model expressions accepted on the command line and in config files:
//   h0(d)  hinf(d)  logistic(d, alpha)  husler_reiss(d, gamma=...)
//   gauss_copula(d, rho=...)  indep_frechet(d)
// Named parameters may also be given positionally. Throws ConfigError on
// malformed input.
struct ModelExpr {
  DistKind kind = DistKind::h0;
  int d = 0;
  double alpha = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
  std::string text;  // canonical form
};

ModelExpr parse_model(const std::string& s);

// Instantiations. to_spectral throws CapabilityError when the law is not
// max-stable (gauss_copula).
SpectralModel to_spectral(const ModelExpr& e);
DistributionSpec to_distribution(const ModelExpr& e);

}  // namespace exdep
