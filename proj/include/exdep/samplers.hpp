#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exdep/families.hpp"
#include "exdep/rng.hpp"

namespace exdep {

enum class DistKind { h0, hinf, logistic, gauss_copula, indep_frechet, husler_reiss };

// A named d-dimensional distribution with unit Frechet margins, together
// with whatever facilities it supports: exact row sampling, a closed-form
// joint df, the max-stable attractor of its component-wise maxima, and
// (when the law itself is max-stable) its spectral model.
struct DistributionSpec {
  int d = 0;
  DistKind kind = DistKind::h0;
  std::string name;
  bool exact = false;

  // Writes one row into out[i * stride]; single lane, running indices.
  std::function<void(const StreamKey&, std::uint64_t lane, double* out, std::size_t stride)>
      sample;
  // Closed-form joint df, when known (absent for gauss_copula with d > 2
  // and for husler_reiss).
  std::function<double(std::span<const double>)> cdf;
  // Present iff the law itself is max-stable.
  std::optional<SpectralModel> spectral;

  bool is_max_stable() const { return spectral.has_value(); }
  bool has_cdf() const { return static_cast<bool>(cdf); }
  // Spectral model of the max-domain-of-attraction limit.
  SpectralModel attractor() const;
};

DistributionSpec dist_h0(int d);
DistributionSpec dist_hinf(int d);
DistributionSpec dist_logistic(int d, double alpha);
// Frechet margins coupled by an exchangeable Gaussian copula; requires
// -1/(d-1) < rho < 1. Attractor is H0.
DistributionSpec dist_gauss_copula(int d, double rho);
DistributionSpec dist_indep_frechet(int d);
// Not exactly samplable; carries the spectral model only.
DistributionSpec dist_husler_reiss(int d, double gamma);

// Marginal law on the kept coordinates (0-based, strictly increasing).
DistributionSpec marginalize(const DistributionSpec& spec, const std::vector<int>& keep);

// n rows in column-major layout (column i of row r at data[i*n + r]).
struct SampleBatch {
  int d = 0;
  std::uint64_t n = 0;
  std::vector<double> data;
  std::string source;
  StreamKey key;

  // Point-process sampler diagnostics.
  bool exact = true;
  double truncation_bound = 0.0;  // bound (or high quantile) of max_i Y_i used
  std::uint64_t max_atoms_used = 0;

  double at(std::uint64_t row, int col) const {
    return data[static_cast<std::size_t>(col) * n + row];
  }
  const double* column(int col) const { return data.data() + static_cast<std::size_t>(col) * n; }
};

// iid rows with the exact target df. Throws CapabilityError when the spec
// has no exact sampler.
SampleBatch sample_exact(const DistributionSpec& spec, std::uint64_t n, const StreamKey& key);

// Draws from the max-stable law of `model` via the truncated series
// M_i = max_k Y_i^(k) / T_k over Poisson arrivals T_k. Exact when the model
// carries a spectral bound; otherwise the series is cut once
// q / T_k < tol * min_i M_i, where q is the 0.99 quantile of max_i Y_i
// (closed form when the family has one, pilot-estimated otherwise,
// recorded in truncation_bound), and the batch is flagged approximate.
// Throws NumericError when a row exceeds max_atoms arrivals.
SampleBatch sample_truncated_ppp(const SpectralModel& model, std::uint64_t n, const StreamKey& key,
                                 double tol = 1e-3, std::uint64_t max_atoms = 1000000);

// reps rows, each the coordinate-wise maximum of n_block iid draws.
SampleBatch sample_componentwise_maxima(const DistributionSpec& spec, std::uint64_t n_block,
                                        std::uint64_t reps, const StreamKey& key);

}  // namespace exdep
