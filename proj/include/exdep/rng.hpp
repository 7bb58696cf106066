#pragma once

#include <cstdint>

namespace exdep {

// Addressing for counter-based random substreams.
//
// Every draw in the library is a pure function of
// (seed, stream, substream, lane, index):
//   seed      - user-level reproducibility handle
//   stream    - one per top-level estimator invocation
//   substream - one per Monte Carlo replication (row)
//   lane      - role within a replication (e.g. Y-draws vs Z-draws)
//   index     - running draw counter inside a (substream, lane)
// Distinct tuples give independent-looking output and the sequence for a
// fixed tuple is identical on every platform and for any worker count.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t substream = 0;

  [[nodiscard]] constexpr StreamKey with_stream(std::uint64_t s) const {
    return {seed, s, substream};
  }
  [[nodiscard]] constexpr StreamKey with_substream(std::uint64_t s) const {
    return {seed, stream, s};
  }
  // Substream for replication `row` relative to this key.
  [[nodiscard]] constexpr StreamKey row(std::uint64_t r) const {
    return {seed, stream, substream + r};
  }
  friend constexpr bool operator==(const StreamKey&, const StreamKey&) = default;
};

// Raw 64 bits (Philox4x64-10 block, first surviving word).
std::uint64_t random_bits(const StreamKey& key, std::uint64_t index, std::uint64_t lane = 0);

// Uniform draw strictly inside (0,1); exact-zero mantissa patterns are
// rejected within the 256-bit counter block so logs stay finite.
double uniform01(const StreamKey& key, std::uint64_t index, std::uint64_t lane = 0);

// -ln U, unit exponential.
double sample_exponential(const StreamKey& key, std::uint64_t index, std::uint64_t lane = 0);

// -1/ln U, unit Frechet (df exp(-1/x), x>0).
double sample_frechet(const StreamKey& key, std::uint64_t index, std::uint64_t lane = 0);

// Standard normal via inverse-CDF of a single uniform draw.
double sample_std_normal(const StreamKey& key, std::uint64_t index, std::uint64_t lane = 0);

// Positive stable variate S with Laplace transform E[exp(-tS)] = exp(-t^b),
// b = alpha_inv in (0,1). Consumes the two draws at indices 2*index, 2*index+1.
// Throws ConfigError outside (0,1).
double sample_positive_stable(double alpha_inv, const StreamKey& key, std::uint64_t index,
                              std::uint64_t lane = 0);

// Inversion maps, exposed so tests can pin them pointwise.
double exponential_from_uniform(double u);
double frechet_from_uniform(double u);
// log of the positive stable variate built from an angle uniform and an
// exponential uniform (Kanter construction); safe against overflow for
// small alpha_inv.
double log_positive_stable(double alpha_inv, double u_angle, double u_exp);

}  // namespace exdep
