#include <doctest.h>

#include <cmath>

#include "exdep/accumulate.hpp"
#include "exdep/errors.hpp"
#include "exdep/rng.hpp"

using namespace exdep;

TEST_CASE("fixed key and index reproduce the draw") {
  const StreamKey k{42, 3, 9};
  CHECK(uniform01(k, 17) == uniform01(k, 17));
  CHECK(random_bits(k, 5, 2) == random_bits(k, 5, 2));
  CHECK(sample_std_normal(k, 0) == sample_std_normal(k, 0));
}

TEST_CASE("distinct substreams, streams and seeds decorrelate") {
  const StreamKey k{1, 0, 0};
  CHECK(uniform01(k, 0) != uniform01(k.with_substream(1), 0));
  CHECK(uniform01(k, 0) != uniform01(k.with_stream(1), 0));
  CHECK(uniform01(k, 0) != uniform01(StreamKey{2, 0, 0}, 0));
  CHECK(uniform01(k, 0) != uniform01(k, 0, /*lane=*/1));
}

TEST_CASE("uniform01 stays strictly inside (0,1) and has the right mean") {
  const StreamKey k{7, 0, 0};
  double sum = 0.0;
  double lo = 1.0, hi = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(k.row(static_cast<std::uint64_t>(i)), 0);
    sum += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(std::abs(sum / n - 0.5) < 0.002);
}

TEST_CASE("frechet inversion hits exact points") {
  CHECK(frechet_from_uniform(std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(frechet_from_uniform(std::exp(-2.0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(exponential_from_uniform(std::exp(-3.0)) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("frechet draws have df exp(-1/x) at x = 1") {
  const StreamKey k{7, 1, 0};
  const int n = 1000000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += sample_frechet(k.row(static_cast<std::uint64_t>(i)), 0) <= 1.0;
  CHECK(std::abs(static_cast<double>(hits) / n - std::exp(-1.0)) < 0.002);
}

TEST_CASE("positive stable Laplace transform") {
  const StreamKey k{7, 2, 0};
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += std::exp(-sample_positive_stable(0.5, k.row(static_cast<std::uint64_t>(i)), 0));
  CHECK(std::abs(sum / n - std::exp(-1.0)) < 0.003);
}

TEST_CASE("positive stable domain") {
  const StreamKey k{7, 3, 0};
  const double s = sample_positive_stable(0.99, k, 0);
  CHECK(s > 0.0);
  CHECK(std::isfinite(s));
  CHECK_THROWS_AS(sample_positive_stable(1.0, k, 0), ConfigError);
  CHECK_THROWS_AS(sample_positive_stable(0.0, k, 0), ConfigError);
}

TEST_CASE("standard normal moments") {
  const StreamKey k{7, 4, 0};
  const int n = 1000000;
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = sample_std_normal(k.row(static_cast<std::uint64_t>(i)), 0);
    m1 += z;
    m2 += z * z;
  }
  CHECK(std::abs(m1 / n) < 0.004);
  CHECK(std::abs(m2 / n - 1.0) < 0.01);
}

TEST_CASE("chunked reduction is worker-count invariant") {
  const StreamKey k{11, 0, 0};
  const auto run = [&] {
    return chunked_reduce<MeanVar>(300000, [&](std::uint64_t b, std::uint64_t e, MeanVar& acc) {
      for (std::uint64_t r = b; r < e; ++r) acc.add(sample_frechet(k.row(r), 0));
    });
  };
  set_threads(1);
  const MeanVar serial = run();
  set_threads(3);
  const MeanVar parallel = run();
  set_threads(1);
  CHECK(serial.mean() == parallel.mean());
  CHECK(serial.std_error() == parallel.std_error());
  CHECK(serial.n == parallel.n);
}
