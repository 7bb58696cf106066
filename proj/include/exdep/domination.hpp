#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exdep/measures.hpp"
#include "exdep/samplers.hpp"

namespace exdep {

struct DominationRow {
  std::uint64_t n = 0;
  std::uint64_t reps = 0;
  double pi_marginal = 0.0;   // P(exists i: W_i > M_ni)
  double pi_complete = 0.0;   // P(for all i: W_i > M_ni)
  double se_marginal = 0.0;   // binomial SE of pi_marginal
  double se_complete = 0.0;
  std::uint64_t ties = 0;  // exact coordinate ties observed (counted as non-domination)

  double n_pi_marginal() const { return static_cast<double>(n) * pi_marginal; }
  double n_pi_complete() const { return static_cast<double>(n) * pi_complete; }
  double se_n_marginal() const { return static_cast<double>(n) * se_marginal; }
  double se_n_complete() const { return static_cast<double>(n) * se_complete; }
};

struct DominationReport {
  std::string f_name, g_name;
  std::optional<double> target_mu;      // limit of n*pi_marginal
  std::optional<double> target_lambda;  // limit of n*pi_complete
  std::vector<DominationRow> rows;
};

// For each n: draw reps independent pairs (M_n = coordinate-wise maxima of
// an n-block from F, W ~ G) and record the marginal / complete domination
// frequencies. Max-stable F uses the exact rescaling M_n = n * X unless
// brute_force is set. n = 0 rows use the degenerate empty block M_0 = 0.
DominationReport simulate_domination(const DistributionSpec& f, const DistributionSpec& g,
                                     const std::vector<std::uint64_t>& n_list, std::uint64_t reps,
                                     const StreamKey& key, bool brute_force = false);

struct SweepRow {
  std::uint64_t n = 0;
  double estimate = 0.0;
  double std_error = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::optional<double> limit_estimate;  // direct estimate of the limit measure
  std::optional<double> limit_std_error;
};

// Finite-n values n*E[1 - H(Z)^(1/n)] converging upward to mu(H,Q); all
// rows share the same Z draws so the monotone trend is sample-exact. The
// limit entry is the plain direct estimate from the same draws.
SweepReport convergence_sweep_mu(const SpectralModel& h, const DistributionSpec& q,
                                 const std::vector<std::uint64_t>& n_list, std::uint64_t n_mc,
                                 const StreamKey& key);

// Finite-n values n*E[Q(V/n)] over V ~ H converging to lambda(Q,H);
// Q needs a closed-form df and H an exact sampler. The limit entry is the
// spectral estimate when Q is also exactly samplable.
SweepReport convergence_sweep_lambda(const DistributionSpec& q, const DistributionSpec& h,
                                     const std::vector<std::uint64_t>& n_list, std::uint64_t n_mc,
                                     const StreamKey& key);

struct BatteryRow {
  std::uint64_t n = 0;
  std::uint64_t reps = 0;
  double item_ii = 0.0;  // n * P(X1 > n, X2 > n)
  double se_ii = 0.0;
  double item_iii = 0.0;  // n * E[G(X)^n]  (complete-domination rate)
  double se_iii = 0.0;
  double item_iv = 0.0;  // 2n/(n+1) - item_iii, exact pairing
  double item_v = 0.0;   // n * P(G(X) > 1 - 1/n)
  double se_v = 0.0;
};

struct BatteryReport {
  std::string f_name, g_name;
  std::vector<BatteryRow> rows;
};

// Asymptotic-independence diagnostic battery (d == 2). All items are
// evaluated on the same X ~ F draws; item iii uses the closed-form df of G
// raised to the block size, which equals the complete-domination
// probability with blocks from G and W from F.
BatteryReport asymptotic_independence_battery(const DistributionSpec& f,
                                              const DistributionSpec& g,
                                              const std::vector<std::uint64_t>& n_list,
                                              std::uint64_t reps, const StreamKey& key);

// (n+1) * P(W completely dominates M_n) with W and the block both from F;
// the multiple-maximum probability of a sample of size n+1.
EstimatorResult concurrence_probe(const DistributionSpec& f, std::uint64_t n, std::uint64_t reps,
                                  const StreamKey& key, bool brute_force = false);

}  // namespace exdep
