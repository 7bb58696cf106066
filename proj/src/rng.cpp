#include "exdep/rng.hpp"

#include <cmath>

#include "exdep/errors.hpp"
#include "exdep/special.hpp"

namespace exdep {
namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73BULL;

struct Block {
  std::uint64_t w[4];
};

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

// Philox4x64-10 counter-based generator.
Block philox4x64(Block ctr, std::uint64_t k0, std::uint64_t k1) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr.w[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr.w[2], hi1, lo1);
    ctr = Block{{hi1 ^ ctr.w[1] ^ k0, lo1, hi0 ^ ctr.w[3] ^ k1, lo0}};
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  return ctr;
}

inline Block block_for(const StreamKey& key, std::uint64_t index, std::uint64_t lane) {
  return philox4x64(Block{{index, lane, key.substream, 0}}, key.seed, key.stream);
}

inline double bits_to_unit(std::uint64_t w) {
  // 53-bit mantissa in [0,1).
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t random_bits(const StreamKey& key, std::uint64_t index, std::uint64_t lane) {
  return block_for(key, index, lane).w[0];
}

double uniform01(const StreamKey& key, std::uint64_t index, std::uint64_t lane) {
  const Block b = block_for(key, index, lane);
  for (const std::uint64_t w : b.w) {
    const double u = bits_to_unit(w);
    if (u > 0.0) return u;  // < 1 by construction
  }
  return 0x1.0p-53;  // all four words rejected: probability 2^-212
}

double exponential_from_uniform(double u) { return -std::log(u); }

double frechet_from_uniform(double u) { return -1.0 / std::log(u); }

double sample_exponential(const StreamKey& key, std::uint64_t index, std::uint64_t lane) {
  return exponential_from_uniform(uniform01(key, index, lane));
}

double sample_frechet(const StreamKey& key, std::uint64_t index, std::uint64_t lane) {
  return frechet_from_uniform(uniform01(key, index, lane));
}

double sample_std_normal(const StreamKey& key, std::uint64_t index, std::uint64_t lane) {
  return normal_quantile(uniform01(key, index, lane));
}

double log_positive_stable(double alpha_inv, double u_angle, double u_exp) {
  const double b = alpha_inv;
  const double theta = u_angle * 3.14159265358979323846;
  const double e = -std::log(u_exp);
  // Kanter's form of the Chambers-Mallows-Stuck sampler for the one-sided
  // stable law with Laplace exponent t^b. Assembled in log space so the
  // (1-b)/b powers cannot overflow for b near 0.
  return std::log(std::sin(b * theta)) +
         ((1.0 - b) / b) * (std::log(std::sin((1.0 - b) * theta)) - std::log(e)) -
         (1.0 / b) * std::log(std::sin(theta));
}

double sample_positive_stable(double alpha_inv, const StreamKey& key, std::uint64_t index,
                              std::uint64_t lane) {
  if (!(alpha_inv > 0.0) || !(alpha_inv < 1.0)) {
    throw ConfigError("positive stable index must lie in (0,1)");
  }
  const double ua = uniform01(key, 2 * index, lane);
  const double ue = uniform01(key, 2 * index + 1, lane);
  return std::exp(log_positive_stable(alpha_inv, ua, ue));
}

}  // namespace exdep
