#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exdep/families.hpp"
#include "exdep/samplers.hpp"

namespace exdep {

enum class Method { spectral, direct, exponent, quadrature, closed_form };
const char* method_name(Method m);

struct EstimatorResult {
  double estimate = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(n); 0 for closed_form/quadrature
  std::uint64_t n_samples = 0;
  Method method = Method::spectral;
  StreamKey key;
  std::uint64_t degenerate_rows = 0;  // e.g. all-zero spectral rows skipped as 0
};

// mu(H,Q) = E[max_i Y_i/Z_i], Y from H's spectral vector, Z ~ Q independent.
EstimatorResult estimate_mu_spectral(const SpectralModel& h, const DistributionSpec& q,
                                     std::uint64_t n, const StreamKey& key);

// mu(H,Q) = E[-ln H(Z)], Z ~ Q; needs the closed-form exponent function.
EstimatorResult estimate_mu_direct(const SpectralModel& h, const DistributionSpec& q,
                                   std::uint64_t n, const StreamKey& key);

// mu(H,Q) = sum_i E[Psi_i(Z)/Z_i]; needs closed-form Psi.
EstimatorResult estimate_mu_psi(const SpectralModel& h, const DistributionSpec& q, std::uint64_t n,
                                const StreamKey& key);

// lambda(Q,H) = E[min_i Y_i/Z_i].
EstimatorResult estimate_lambda_spectral(const SpectralModel& h, const DistributionSpec& q,
                                         std::uint64_t n, const StreamKey& key);

// lambda(H,H) = E[1 / (-ln H(Y))] over the spectral vector Y itself.
// Rows where every coordinate vanishes are counted in degenerate_rows and
// contribute 0.
EstimatorResult estimate_lambda_self(const SpectralModel& h, std::uint64_t n, const StreamKey& key);

// Extremal coefficient -ln H(1,...,1): closed form when available, else a
// spectral Monte Carlo mean of max_i Y_i (n and key required then).
EstimatorResult theta(const SpectralModel& h, std::uint64_t n = 0,
                      std::optional<StreamKey> key = std::nullopt);

// 2 - theta(H) for bivariate H with a closed-form exponent function.
double upper_tail_coefficient(const SpectralModel& h);

// Auxiliary spectral/sample moments used by the order relations.
EstimatorResult expected_min_y(const SpectralModel& h, std::uint64_t n, const StreamKey& key);
EstimatorResult expected_min_recip_z(const DistributionSpec& q, std::uint64_t n,
                                     const StreamKey& key);
// theta of the max-stable law generated by 1/Z: E[max_i 1/Z_i].
EstimatorResult theta_tilde(const DistributionSpec& q, std::uint64_t n, const StreamKey& key);

// Values indexed by nonempty subsets of {1..d} (bit i of the mask selects
// coordinate i).
struct SubsetTable {
  int d = 0;
  std::vector<std::optional<double>> values;  // size 1<<d, index = mask

  explicit SubsetTable(int dim = 0) : d(dim), values(static_cast<std::size_t>(1) << dim) {}
  void set(std::uint32_t mask, double v) { values.at(mask) = v; }
  std::optional<double> get(std::uint32_t mask) const { return values.at(mask); }
};

// Alternating inclusion-exclusion transforms between the two measures.
// Singleton entries default to 1 when absent (margins contribute unit
// exponentials); missing larger subsets raise ConfigError.
double mu_from_lambda_table(const SubsetTable& lambda_table);
double lambda_from_mu_table(const SubsetTable& mu_table);

// Tables of lambda(Q_K,H_K) / mu(H_K,Q_K) over every nonempty K, estimated
// by the spectral estimators on the marginal models (singletons are exactly
// 1 and entered with zero variance). se_out, when given, receives the
// root-sum-square standard error over the |K| >= 2 entries.
SubsetTable lambda_subset_table(const SpectralModel& h, const DistributionSpec& q, std::uint64_t n,
                                const StreamKey& key, double* se_out = nullptr);
SubsetTable mu_subset_table(const SpectralModel& h, const DistributionSpec& q, std::uint64_t n,
                            const StreamKey& key, double* se_out = nullptr);

struct XiEstimate {
  double value = 0.0;
  bool singular = false;
  double step = 0.0;
};

// Central second-difference evaluation of the tail-dependence function
// xi_H at finite step h (no limit taken); the caller supplies a decreasing
// h sequence. Requires d == 2, a closed-form exponent function, and
// x1, x2 > h > 0. Flags a singularity when the denominator falls below
// 1e-14 in magnitude.
XiEstimate xi_finite_difference(const SpectralModel& h, double x1, double x2, double step);

}  // namespace exdep
