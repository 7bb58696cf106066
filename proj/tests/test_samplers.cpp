#include <doctest.h>

#include <cmath>

#include "exdep/errors.hpp"
#include "exdep/samplers.hpp"
#include "exdep/special.hpp"

using namespace exdep;

namespace {

double frechet_cdf(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double joint_cdf_mc(const SampleBatch& b, const std::vector<double>& x) {
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < b.n; ++r) {
    bool in = true;
    for (int i = 0; i < b.d; ++i) in = in && b.at(r, i) <= x[static_cast<std::size_t>(i)];
    hits += in;
  }
  return static_cast<double>(hits) / static_cast<double>(b.n);
}

double margin_ks(const SampleBatch& b, int col) {
  std::vector<double> v(b.column(col), b.column(col) + b.n);
  return ks_distance(std::move(v), frechet_cdf);
}

}  // namespace

TEST_CASE("exact samplers: positivity, margins, joint laws") {
  const StreamKey key{7, 0, 0};
  const std::uint64_t n = 100000;

  SUBCASE("comonotone rows are constant") {
    const SampleBatch b = sample_exact(dist_hinf(3), 1000, key);
    for (std::uint64_t r = 0; r < b.n; ++r) {
      CHECK(b.at(r, 0) == b.at(r, 1));
      CHECK(b.at(r, 0) == b.at(r, 2));
    }
  }

  SUBCASE("every entry strictly positive and finite") {
    for (const auto& spec :
         {dist_h0(2), dist_logistic(2, 2.0), dist_gauss_copula(2, 0.5), dist_indep_frechet(2)}) {
      const SampleBatch b = sample_exact(spec, 20000, key);
      for (double v : b.data) {
        CHECK(v > 0.0);
        CHECK(std::isfinite(v));
      }
    }
  }

  SUBCASE("margins are unit Frechet (KS)") {
    for (const auto& spec :
         {dist_h0(2), dist_hinf(2), dist_logistic(2, 1.5), dist_gauss_copula(2, 0.5)}) {
      const SampleBatch b = sample_exact(spec, n, key);
      for (int i = 0; i < b.d; ++i) CHECK(margin_ks(b, i) < 0.005);
    }
  }

  SUBCASE("joint df at reference points") {
    const SampleBatch lg = sample_exact(dist_logistic(2, 2.0), 1000000, key);
    CHECK(std::abs(joint_cdf_mc(lg, {1.0, 1.0}) - std::exp(-std::sqrt(2.0))) < 0.002);
    const SampleBatch h0 = sample_exact(dist_h0(2), 1000000, key);
    CHECK(std::abs(joint_cdf_mc(h0, {1.0, 1.0}) - std::exp(-2.0)) < 0.002);
  }

  SUBCASE("logistic joint df matches the closed form at random points") {
    const DistributionSpec spec = dist_logistic(2, 2.0);
    const SampleBatch b = sample_exact(spec, 200000, key);
    for (std::uint64_t pt = 0; pt < 5; ++pt) {
      std::vector<double> x{0.5 + 3.0 * uniform01(StreamKey{50, 0, pt}, 0),
                            0.5 + 3.0 * uniform01(StreamKey{50, 0, pt}, 1)};
      const double mc = joint_cdf_mc(b, x);
      const double want = spec.cdf(x);
      const double se = std::sqrt(want * (1.0 - want) / static_cast<double>(b.n));
      CHECK(std::abs(mc - want) <= 4.0 * se);
    }
  }

  SUBCASE("gauss copula joint df matches its bivariate-normal closed form") {
    const DistributionSpec spec = dist_gauss_copula(2, 0.5);
    const SampleBatch b = sample_exact(spec, 400000, key);
    const std::vector<double> x{1.0, 2.0};
    const double want = spec.cdf(x);
    const double se = std::sqrt(want * (1.0 - want) / static_cast<double>(b.n));
    CHECK(std::abs(joint_cdf_mc(b, x) - want) <= 4.0 * se);
  }

  SUBCASE("husler_reiss has no exact sampler") {
    CHECK_THROWS_AS(sample_exact(dist_husler_reiss(2, 1.0), 10, key), CapabilityError);
  }
}

TEST_CASE("truncated point-process sampler") {
  const StreamKey key{9, 0, 0};

  SUBCASE("comonotone: exact stop, first margin is Frechet") {
    const SampleBatch b = sample_truncated_ppp(make_hinf(2), 100000, key);
    CHECK(b.exact);
    CHECK(margin_ks(b, 0) < 0.005);
    for (std::uint64_t r = 0; r < b.n; ++r) CHECK(b.at(r, 0) == b.at(r, 1));
  }

  SUBCASE("product law: joint df at (1,1)") {
    const SampleBatch b = sample_truncated_ppp(make_h0(2), 1000000, key);
    CHECK(b.exact);
    CHECK(std::abs(joint_cdf_mc(b, {1.0, 1.0}) - std::exp(-2.0)) < 0.002);
  }

  SUBCASE("logistic via unbounded spectral draws is flagged approximate") {
    const SampleBatch b = sample_truncated_ppp(make_logistic(2, 2.0), 100000, key, 1e-3);
    CHECK_FALSE(b.exact);
    CHECK(b.truncation_bound > 0.0);
    CHECK(std::abs(joint_cdf_mc(b, {1.0, 1.0}) - std::exp(-std::sqrt(2.0))) < 0.005);
    for (int i = 0; i < 2; ++i) CHECK(margin_ks(b, i) < 0.005);
  }

  SUBCASE("atom cap raises a numeric failure") {
    CHECK_THROWS_AS(sample_truncated_ppp(make_h0(2), 50, key, 1e-3, /*max_atoms=*/2),
                    NumericError);
  }

  SUBCASE("husler_reiss uses the pilot-estimated truncation bound") {
    // no spectral bound, no closed-form tail quantile: the 0.99 quantile
    // comes from a pilot run and is recorded in the batch
    const SampleBatch b = sample_truncated_ppp(make_husler_reiss(2, 1.0), 30000, key, 1e-2);
    CHECK_FALSE(b.exact);
    CHECK(b.truncation_bound > 1.0);
    CHECK(margin_ks(b, 0) < 0.012);  // sampling noise ~0.008 at 3e4 draws
    CHECK(margin_ks(b, 1) < 0.012);
  }
}

TEST_CASE("componentwise maxima") {
  const StreamKey key{11, 0, 0};

  SUBCASE("block size 1 reproduces the exact sampler bit for bit") {
    const SampleBatch a = sample_exact(dist_logistic(2, 2.0), 5000, key);
    const SampleBatch b = sample_componentwise_maxima(dist_logistic(2, 2.0), 1, 5000, key);
    CHECK(a.data == b.data);
  }

  SUBCASE("max-stability: maxima rescaled by the block size keep the law") {
    const std::uint64_t reps = 100000;
    const std::uint64_t n_block = 7;
    const SampleBatch b = sample_componentwise_maxima(dist_logistic(2, 2.0), n_block, reps, key);
    const DistributionSpec spec = dist_logistic(2, 2.0);
    // rescaled margins are Frechet
    std::vector<double> first(b.column(0), b.column(0) + b.n);
    for (auto& v : first) v /= static_cast<double>(n_block);
    CHECK(ks_distance(std::move(first), frechet_cdf) < 0.005);
    // joint df at interior points
    for (const double x : {0.75, 1.0, 2.0}) {
      std::uint64_t hits = 0;
      for (std::uint64_t r = 0; r < reps; ++r)
        hits += (b.at(r, 0) <= n_block * x && b.at(r, 1) <= n_block * x);
      const std::vector<double> pt{x, x};
      const double want = spec.cdf(pt);
      CHECK(std::abs(static_cast<double>(hits) / static_cast<double>(reps) - want) < 0.005);
    }
  }

  SUBCASE("independent blocks: P(both maxima of 9 draws <= 9) = exp(-2)") {
    const std::uint64_t reps = 1000000;
    const SampleBatch b = sample_componentwise_maxima(dist_h0(2), 9, reps, key);
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < reps; ++r) hits += (b.at(r, 0) <= 9.0 && b.at(r, 1) <= 9.0);
    CHECK(std::abs(static_cast<double>(hits) / static_cast<double>(reps) - std::exp(-2.0)) <
          0.005);
  }

  SUBCASE("rejects empty blocks and non-samplable laws") {
    CHECK_THROWS_AS(sample_componentwise_maxima(dist_h0(2), 0, 10, key), ConfigError);
    CHECK_THROWS_AS(sample_componentwise_maxima(dist_husler_reiss(2, 1.0), 2, 10, key),
                    CapabilityError);
  }
}
