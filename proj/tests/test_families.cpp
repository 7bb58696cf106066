#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>

#include "exdep/accumulate.hpp"
#include "exdep/errors.hpp"
#include "exdep/families.hpp"
#include "exdep/special.hpp"

using namespace exdep;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double neg_log(const SpectralModel& m, std::initializer_list<double> x) {
  return m.neg_log_h(std::span<const double>(x.begin(), x.size()));
}

// mean and standard error of max_i Y_i / x_i over n spectral draws
std::pair<double, double> mc_exponent(const SpectralModel& m, const std::vector<double>& x,
                                      std::uint64_t n, std::uint64_t seed) {
  const StreamKey key{seed, 0, 0};
  MeanVar acc;
  std::array<double, kMaxDim> y;
  for (std::uint64_t r = 0; r < n; ++r) {
    m.sample_y(key.row(r), 0, y.data(), 1);
    double v = 0.0;
    for (int i = 0; i < m.d; ++i) v = std::max(v, y[static_cast<std::size_t>(i)] / x[static_cast<std::size_t>(i)]);
    acc.add(v);
  }
  return {acc.mean(), acc.std_error()};
}

std::pair<double, double> mc_component_mean(const SpectralModel& m, int i, std::uint64_t n,
                                            std::uint64_t seed) {
  const StreamKey key{seed, 1, 0};
  MeanVar acc;
  std::array<double, kMaxDim> y;
  for (std::uint64_t r = 0; r < n; ++r) {
    m.sample_y(key.row(r), 0, y.data(), 1);
    acc.add(y[static_cast<std::size_t>(i)]);
  }
  return {acc.mean(), acc.std_error()};
}

std::vector<double> random_point(int d, double lo, double hi, std::uint64_t seed, std::uint64_t idx) {
  const StreamKey key{seed, 9, idx};
  std::vector<double> x(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = lo + (hi - lo) * uniform01(key, static_cast<std::uint64_t>(i));
  return x;
}

}  // namespace

TEST_CASE("logistic closed forms") {
  const SpectralModel m = make_logistic(2, 2.0);
  CHECK(neg_log(m, {1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(neg_log(m, {2.0, 2.0}) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
  const SpectralModel flat = make_logistic(2, 50.0);
  CHECK(neg_log(flat, {1.0, 1.0}) == doctest::Approx(std::pow(2.0, 1.0 / 50.0)).epsilon(1e-14));
  CHECK_THROWS_AS(make_logistic(2, 1.0), ConfigError);
  CHECK_THROWS_AS(make_logistic(2, 0.5), ConfigError);
}

TEST_CASE("exponent homogeneity: neg_log_h(t x) = neg_log_h(x) / t") {
  for (int variant = 0; variant < 3; ++variant) {
    const SpectralModel m = variant == 0   ? make_h0(3)
                            : variant == 1 ? make_hinf(3)
                                           : make_logistic(3, 1.7);
    const std::vector<double> x = random_point(3, 0.5, 5.0, 100 + static_cast<std::uint64_t>(variant), 0);
    const double base = m.neg_log_h(x);
    for (const double t : {0.5, 2.0, 10.0}) {
      std::vector<double> tx = x;
      for (auto& v : tx) v *= t;
      CHECK(m.neg_log_h(tx) == doctest::Approx(base / t).epsilon(1e-12));
    }
  }
}

TEST_CASE("unit Frechet margins through infinite coordinates") {
  for (int variant = 0; variant < 3; ++variant) {
    const SpectralModel m = variant == 0   ? make_h0(3)
                            : variant == 1 ? make_hinf(3)
                                           : make_logistic(3, 2.5);
    for (int i = 0; i < 3; ++i) {
      std::vector<double> x(3, kInf);
      x[static_cast<std::size_t>(i)] = 1.7;
      CHECK(m.neg_log_h(x) == doctest::Approx(1.0 / 1.7).epsilon(1e-12));
    }
  }
}

TEST_CASE("product and comonotone envelopes hold pointwise") {
  const SpectralModel lg = make_logistic(3, 1.5);
  for (std::uint64_t rep = 0; rep < 8; ++rep) {
    const std::vector<double> x = random_point(3, 0.5, 5.0, 200, rep);
    double lower = 0.0, upper = 0.0;
    for (const double xi : x) {
      lower = std::max(lower, 1.0 / xi);
      upper += 1.0 / xi;
    }
    const double v = lg.neg_log_h(x);
    CHECK(v >= lower - 1e-12);
    CHECK(v <= upper + 1e-12);
  }
}

TEST_CASE("h0 and hinf exponent values") {
  CHECK(neg_log(make_h0(3), {1.0, 1.0, 1.0}) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(neg_log(make_hinf(3), {1.0, 2.0, 3.0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("spectral means are unit") {
  const std::uint64_t n = 200000;
  for (int variant = 0; variant < 4; ++variant) {
    const SpectralModel m = variant == 0   ? make_h0(3)
                            : variant == 1 ? make_hinf(2)
                            : variant == 2 ? make_logistic(2, 2.0)
                                           : make_husler_reiss(3, 1.0);
    for (int i = 0; i < m.d; ++i) {
      const auto [mean, se] = mc_component_mean(m, i, n, 300 + static_cast<std::uint64_t>(variant));
      CHECK(std::abs(mean - 1.0) <= 4.0 * std::max(se, 1e-9));
    }
  }
}

TEST_CASE("Monte Carlo exponent matches the closed form at random points") {
  const std::uint64_t n = 200000;
  for (int variant = 0; variant < 3; ++variant) {
    const SpectralModel m = variant == 0   ? make_h0(2)
                            : variant == 1 ? make_logistic(2, 2.0)
                                           : make_logistic(3, 1.5);
    for (std::uint64_t pt = 0; pt < 5; ++pt) {
      const std::vector<double> x = random_point(m.d, 0.5, 5.0, 400 + static_cast<std::uint64_t>(variant), pt);
      const auto [mc, se] = mc_exponent(m, x, n, 500 + 10 * static_cast<std::uint64_t>(variant) + pt);
      CHECK(std::abs(mc - m.neg_log_h(x)) <= 4.0 * std::max(se, 1e-9));
    }
  }
}

TEST_CASE("logistic psi decomposition") {
  const SpectralModel m = make_logistic(2, 2.0);
  const std::array<double, 2> ones{1.0, 1.0};
  const std::span<const double> xs(ones.data(), 2);
  CHECK(m.psi(xs, 0) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));
  CHECK(m.psi(xs, 0) + m.psi(xs, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  const SpectralModel m3 = make_logistic(3, 1.6);
  for (std::uint64_t pt = 0; pt < 5; ++pt) {
    const std::vector<double> x = random_point(3, 0.5, 5.0, 600, pt);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += m3.psi(x, i) / x[static_cast<std::size_t>(i)];
    CHECK(s == doctest::Approx(m3.neg_log_h(x)).epsilon(1e-12));
    for (const double c : {0.5, 2.0, 10.0}) {
      std::vector<double> cx = x;
      for (auto& v : cx) v *= c;
      for (int i = 0; i < 3; ++i)
        CHECK(m3.psi(cx, i) == doctest::Approx(m3.psi(x, i)).epsilon(1e-12));
    }
    // psi stays within [0, 1]
    for (int i = 0; i < 3; ++i) {
      CHECK(m3.psi(x, i) >= 0.0);
      CHECK(m3.psi(x, i) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("husler_reiss structure") {
  // degenerate variogram collapses onto the comonotone spectral vector
  const SpectralModel degenerate = make_husler_reiss(2, 0.0);
  std::array<double, 2> y{};
  degenerate.sample_y(StreamKey{1, 0, 0}, 0, y.data(), 1);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == 1.0);

  // an invalid variogram matrix is rejected
  std::vector<double> bad{0.0, 1.0, 1.0,   //
                          1.0, 0.0, 100.0,  //
                          1.0, 100.0, 0.0};
  CHECK_THROWS_AS(make_husler_reiss(3, bad), ConfigError);

  // d = 2 extremal coefficient: the log-normal construction gives
  // E[max(Y1, Y2)] = 2 * Phi(sqrt(gamma)/2) by exponential tilting, and that
  // expression tends to the product-law value 2 as gamma grows.
  const double gamma = 9.0;
  const SpectralModel hr = make_husler_reiss(2, gamma);
  const std::uint64_t n = 400000;
  const StreamKey key{777, 0, 0};
  MeanVar acc;
  for (std::uint64_t r = 0; r < n; ++r) {
    std::array<double, 2> v{};
    hr.sample_y(key.row(r), 0, v.data(), 1);
    acc.add(std::max(v[0], v[1]));
  }
  const double want = 2.0 * normal_cdf(std::sqrt(gamma) / 2.0);
  CHECK(std::abs(acc.mean() - want) <= 4.0 * acc.std_error());
  CHECK(2.0 * normal_cdf(std::sqrt(200.0) / 2.0) == doctest::Approx(2.0).epsilon(1e-10));

  // non-exchangeable variogram (distances on a line) still gives unit means
  std::vector<double> line{0.0, 1.0, 2.0,  //
                           1.0, 0.0, 1.0,  //
                           2.0, 1.0, 0.0};
  const SpectralModel hr3 = make_husler_reiss(3, line);
  for (int i = 0; i < 3; ++i) {
    const auto [mean, se] = mc_component_mean(hr3, i, 200000, 778);
    CHECK(std::abs(mean - 1.0) <= 4.0 * std::max(se, 1e-9));
  }
}

TEST_CASE("marginalization") {
  // univariate logistic margin is unit Frechet
  const SpectralModel lg = make_logistic(3, 2.0);
  const SpectralModel m1 = marginalize(lg, {0});
  CHECK(neg_log(m1, {2.0}) == doctest::Approx(0.5).epsilon(1e-12));

  // pair margin of the trivariate logistic keeps the family form
  const SpectralModel m12 = marginalize(lg, {0, 1});
  CHECK(neg_log(m12, {1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // product-law margin
  const SpectralModel h0m = marginalize(make_h0(3), {1, 2});
  CHECK(neg_log(h0m, {1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-12));

  // projected sampler keeps unit means and matches the closed form
  for (int i = 0; i < 2; ++i) {
    const auto [mean, se] = mc_component_mean(h0m, i, 200000, 800);
    CHECK(std::abs(mean - 1.0) <= 4.0 * std::max(se, 1e-9));
  }
  const auto [mc, se] = mc_exponent(m12, {1.0, 2.0}, 200000, 801);
  CHECK(std::abs(mc - neg_log(m12, {1.0, 2.0})) <= 4.0 * se);

  CHECK_THROWS_AS(marginalize(lg, {}), ConfigError);
  CHECK_THROWS_AS(marginalize(lg, {0, 0}), ConfigError);
  CHECK_THROWS_AS(marginalize(lg, {0, 5}), ConfigError);
}
