#include <doctest.h>

#include <cstring>
#include <vector>

#include "exdep/kernels.hpp"
#include "exdep/measures.hpp"
#include "exdep/rng.hpp"

using namespace exdep;

namespace {

std::vector<double> positive_data(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::vector<double> v(n * d);
  const StreamKey k{seed, 0, 0};
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = sample_frechet(k.row(i / 64), i % 64);
  return v;
}

bool identical(const std::vector<double>& a, const std::vector<double>& b) {
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
  if (!kernels::avx2::available()) {
    MESSAGE("avx2 not available on this host; dispatch covered by scalar path");
    return;
  }
  for (const std::size_t d : {1u, 2u, 3u, 5u, 8u}) {
    // odd row count exercises the vector remainder
    const std::size_t n = 1003;
    const std::vector<double> y = positive_data(n, d, 21);
    const std::vector<double> z = positive_data(n, d, 22);
    std::vector<double> a(n), b(n);

    kernels::scalar::max_ratio(y.data(), z.data(), a.data(), n, d, n);
    kernels::avx2::max_ratio(y.data(), z.data(), b.data(), n, d, n);
    CHECK(identical(a, b));

    kernels::scalar::min_ratio(y.data(), z.data(), a.data(), n, d, n);
    kernels::avx2::min_ratio(y.data(), z.data(), b.data(), n, d, n);
    CHECK(identical(a, b));

    kernels::scalar::col_max(y.data(), a.data(), n, d, n);
    kernels::avx2::col_max(y.data(), b.data(), n, d, n);
    CHECK(identical(a, b));

    kernels::scalar::col_min(y.data(), a.data(), n, d, n);
    kernels::avx2::col_min(y.data(), b.data(), n, d, n);
    CHECK(identical(a, b));

    kernels::scalar::recip_sum(y.data(), a.data(), n, d, n);
    kernels::avx2::recip_sum(y.data(), b.data(), n, d, n);
    CHECK(identical(a, b));
  }
}

TEST_CASE("kernel outputs satisfy elementary relations") {
  const std::size_t n = 513, d = 4;
  const std::vector<double> y = positive_data(n, d, 31);
  const std::vector<double> z = positive_data(n, d, 32);
  std::vector<double> mx(n), mn(n), cmax(n), cmin(n), rs(n);
  kernels::max_ratio(y.data(), z.data(), mx.data(), n, d, n);
  kernels::min_ratio(y.data(), z.data(), mn.data(), n, d, n);
  kernels::col_max(z.data(), cmax.data(), n, d, n);
  kernels::col_min(z.data(), cmin.data(), n, d, n);
  kernels::recip_sum(z.data(), rs.data(), n, d, n);
  for (std::size_t r = 0; r < n; ++r) {
    CHECK(mx[r] >= mn[r]);
    CHECK(cmax[r] >= cmin[r]);
    CHECK(rs[r] >= 1.0 / cmax[r]);                          // sum of positives beats one term
    CHECK(rs[r] <= static_cast<double>(d) / cmin[r] + 1e-12);
    double m = y[r] / z[r];
    for (std::size_t i = 1; i < d; ++i) m = std::max(m, y[i * n + r] / z[i * n + r]);
    CHECK(mx[r] == m);
  }
}

TEST_CASE("backend selection cannot change an estimate") {
  const SpectralModel h = make_logistic(2, 2.0);
  const DistributionSpec q = dist_h0(2);
  const StreamKey k{5, 0, 0};
  kernels::set_backend(kernels::Backend::scalar);
  const EstimatorResult a = estimate_mu_spectral(h, q, 100000, k);
  kernels::set_backend(kernels::detect_backend());
  const EstimatorResult b = estimate_mu_spectral(h, q, 100000, k);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
}
