#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exdep/rng.hpp"

namespace exdep {

inline constexpr int kMaxDim = 32;

enum class Family { independence, comonotone, logistic, husler_reiss };

// Partial derivatives of V(x1,x2) = -ln H(x1,x2).
struct BivariatePartials {
  double v1 = 0.0;
  double v2 = 0.0;
  double v12 = 0.0;
};

// A d-dimensional max-stable distribution given through its spectral
// representation: a nonnegative random vector Y with E[Y_i] = 1 and
// -ln H(x) = E[max_i Y_i / x_i]. Closed forms are attached when the family
// has them. Immutable after construction; samplers take explicit keys, so
// concurrent use is safe.
struct SpectralModel {
  int d = 0;
  Family family = Family::independence;
  std::string name;

  // Writes Y_i to out[i * stride]; consumes draws on the given lane only.
  std::function<void(const StreamKey&, std::uint64_t lane, double* out, std::size_t stride)>
      sample_y;

  // x -> -ln H(x) on (0, +inf]^d; +inf coordinates marginalize exactly.
  std::function<double(std::span<const double>)> neg_log_h;

  // Zero-homogeneous Psi_i with -ln H(x) = sum_i Psi_i(x) / x_i.
  std::function<double(std::span<const double>, int)> psi;

  // Uniform bound on max_i Y_i, when one exists (enables exact series
  // stopping in the point-process sampler).
  std::optional<double> y_bound;

  // p-quantile of max_i Y_i, when available in closed form.
  std::function<double(double)> y_tail_quantile;

  // Analytic partials of V = -ln H for bivariate use (for d > 2 they are
  // the partials of the first-two-coordinate margin, which shares the
  // family parameter).
  std::function<BivariatePartials(double, double)> partials;

  bool has_neg_log_h() const { return static_cast<bool>(neg_log_h); }
  bool has_psi() const { return static_cast<bool>(psi); }
  bool has_partials() const { return static_cast<bool>(partials); }

  // -ln H(1,...,1); requires neg_log_h.
  double theta_closed() const;
};

// Product distribution H0: spectral vector d*e_J with J uniform.
SpectralModel make_h0(int d);

// Comonotone upper bound: Y = (1,...,1).
SpectralModel make_hinf(int d);

// Symmetric logistic family with exponent (sum_i x_i^-alpha)^(1/alpha);
// requires alpha > 1 (the spectral mean diverges at alpha = 1; independence
// is reachable through make_h0 instead).
SpectralModel make_logistic(int d, double alpha);

// Huesler-Reiss family from a variogram matrix (row-major d*d, zero
// diagonal, symmetric). The spectral vector is log-normal, anchored at
// component 0. Throws ConfigError when the induced covariance is not
// positive semidefinite. No closed-form df is attached.
SpectralModel make_husler_reiss(int d, const std::vector<double>& variogram);
// Exchangeable convenience overload: gamma on every off-diagonal entry.
SpectralModel make_husler_reiss(int d, double gamma);

// |K|-dimensional marginal model: the spectral sampler projects Y onto the
// kept coordinates (0-based, strictly increasing) and closed forms are
// evaluated with the omitted coordinates sent to +inf.
SpectralModel marginalize(const SpectralModel& model, const std::vector<int>& keep);

}  // namespace exdep
