#include "exdep/measures.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <limits>

#include "exdep/accumulate.hpp"
#include "exdep/errors.hpp"
#include "exdep/kernels.hpp"

namespace exdep {
namespace {

// Lane assignment inside one replication: Z-draws on 0, Y-draws on 1.
constexpr std::uint64_t kLaneZ = 0;
constexpr std::uint64_t kLaneY = 1;

struct MeanAcc {
  MeanVar mv;
  std::uint64_t degenerate = 0;
  void merge(const MeanAcc& o) {
    mv.merge(o.mv);
    degenerate += o.degenerate;
  }
};

void require_same_dim(const SpectralModel& h, const DistributionSpec& q) {
  if (h.d != q.d) throw ConfigError("H and Q dimensions differ");
}

void require_exact(const DistributionSpec& q) {
  if (!q.exact || !q.sample) throw CapabilityError(q.name + ": no exact sampler");
}

EstimatorResult finish(const MeanAcc& acc, Method method, const StreamKey& key) {
  EstimatorResult r;
  r.estimate = acc.mv.mean();
  r.std_error = acc.mv.std_error();
  r.n_samples = acc.mv.n;
  r.method = method;
  r.key = key;
  r.degenerate_rows = acc.degenerate;
  return r;
}

// Shared batch loop for the ratio estimators: fills column-major Y and Z
// chunks and reduces the kernel output.
template <class KernelFn>
EstimatorResult ratio_estimator(const SpectralModel& h, const DistributionSpec& q, std::uint64_t n,
                                const StreamKey& key, const KernelFn& kernel) {
  require_same_dim(h, q);
  require_exact(q);
  const std::size_t d = static_cast<std::size_t>(h.d);
  MeanAcc acc = chunked_reduce<MeanAcc>(n, [&](std::uint64_t b, std::uint64_t e, MeanAcc& part) {
    const std::size_t rows = static_cast<std::size_t>(e - b);
    std::vector<double> y(rows * d), z(rows * d), vals(rows);
    for (std::uint64_t r = b; r < e; ++r) {
      const StreamKey rk = key.row(r);
      h.sample_y(rk, kLaneY, y.data() + (r - b), rows);
      q.sample(rk, kLaneZ, z.data() + (r - b), rows);
    }
    kernel(y.data(), z.data(), vals.data(), rows, d, rows);
    for (const double v : vals) part.mv.add(v);
  });
  return finish(acc, Method::spectral, key);
}

// Mean of f(v) where v is a per-row kernel output over Z ~ Q.
template <class KernelFn, class PostFn>
EstimatorResult column_estimator(const DistributionSpec& q, std::uint64_t n, const StreamKey& key,
                                 const KernelFn& kernel, const PostFn& post, Method method) {
  require_exact(q);
  const std::size_t d = static_cast<std::size_t>(q.d);
  MeanAcc acc = chunked_reduce<MeanAcc>(n, [&](std::uint64_t b, std::uint64_t e, MeanAcc& part) {
    const std::size_t rows = static_cast<std::size_t>(e - b);
    std::vector<double> z(rows * d), vals(rows);
    for (std::uint64_t r = b; r < e; ++r) q.sample(key.row(r), kLaneZ, z.data() + (r - b), rows);
    kernel(z.data(), vals.data(), rows, d, rows);
    for (const double v : vals) part.mv.add(post(v));
  });
  return finish(acc, method, key);
}

double checked_positive(double z, const char* what) {
  if (!(z > 0.0)) throw NumericError(std::string(what) + ": nonpositive coordinate");
  return z;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::spectral: return "spectral";
    case Method::direct: return "direct";
    case Method::exponent: return "exponent";
    case Method::quadrature: return "quadrature";
    case Method::closed_form: return "closed_form";
  }
  return "?";
}

EstimatorResult estimate_mu_spectral(const SpectralModel& h, const DistributionSpec& q,
                                     std::uint64_t n, const StreamKey& key) {
  return ratio_estimator(h, q, n, key,
                         [](const double* y, const double* z, double* out, std::size_t rows,
                            std::size_t d, std::size_t stride) {
                           kernels::max_ratio(y, z, out, rows, d, stride);
                         });
}

EstimatorResult estimate_lambda_spectral(const SpectralModel& h, const DistributionSpec& q,
                                         std::uint64_t n, const StreamKey& key) {
  return ratio_estimator(h, q, n, key,
                         [](const double* y, const double* z, double* out, std::size_t rows,
                            std::size_t d, std::size_t stride) {
                           kernels::min_ratio(y, z, out, rows, d, stride);
                         });
}

EstimatorResult estimate_mu_direct(const SpectralModel& h, const DistributionSpec& q,
                                   std::uint64_t n, const StreamKey& key) {
  require_same_dim(h, q);
  if (!h.has_neg_log_h()) throw CapabilityError(h.name + ": no closed-form exponent function");
  // H0 and Hinf exponents are pure reciprocal reductions; route those
  // through the batch kernels, everything else through the closure.
  if (h.family == Family::independence) {
    EstimatorResult r = column_estimator(
        q, n, key,
        [](const double* z, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
          kernels::recip_sum(z, out, rows, d, stride);
        },
        [](double v) { return v; }, Method::direct);
    return r;
  }
  if (h.family == Family::comonotone) {
    return column_estimator(
        q, n, key,
        [](const double* z, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
          kernels::col_min(z, out, rows, d, stride);
        },
        [](double v) { return 1.0 / v; }, Method::direct);
  }
  require_exact(q);
  const int d = q.d;
  MeanAcc acc = chunked_reduce<MeanAcc>(n, [&](std::uint64_t b, std::uint64_t e, MeanAcc& part) {
    std::array<double, kMaxDim> z;
    for (std::uint64_t r = b; r < e; ++r) {
      q.sample(key.row(r), kLaneZ, z.data(), 1);
      for (int i = 0; i < d; ++i) checked_positive(z[static_cast<std::size_t>(i)], "mu_direct");
      part.mv.add(h.neg_log_h(std::span<const double>(z.data(), static_cast<std::size_t>(d))));
    }
  });
  return finish(acc, Method::direct, key);
}

EstimatorResult estimate_mu_psi(const SpectralModel& h, const DistributionSpec& q, std::uint64_t n,
                                const StreamKey& key) {
  require_same_dim(h, q);
  if (!h.has_psi()) throw CapabilityError(h.name + ": no closed-form Psi decomposition");
  require_exact(q);
  const int d = q.d;
  MeanAcc acc = chunked_reduce<MeanAcc>(n, [&](std::uint64_t b, std::uint64_t e, MeanAcc& part) {
    std::array<double, kMaxDim> z;
    for (std::uint64_t r = b; r < e; ++r) {
      q.sample(key.row(r), kLaneZ, z.data(), 1);
      const std::span<const double> zs(z.data(), static_cast<std::size_t>(d));
      double s = 0.0;
      for (int i = 0; i < d; ++i) {
        checked_positive(z[static_cast<std::size_t>(i)], "mu_psi");
        s += h.psi(zs, i) / z[static_cast<std::size_t>(i)];
      }
      part.mv.add(s);
    }
  });
  return finish(acc, Method::exponent, key);
}

EstimatorResult estimate_lambda_self(const SpectralModel& h, std::uint64_t n,
                                     const StreamKey& key) {
  if (!h.has_neg_log_h()) throw CapabilityError(h.name + ": no closed-form exponent function");
  const int d = h.d;
  MeanAcc acc = chunked_reduce<MeanAcc>(n, [&](std::uint64_t b, std::uint64_t e, MeanAcc& part) {
    std::array<double, kMaxDim> y;
    for (std::uint64_t r = b; r < e; ++r) {
      h.sample_y(key.row(r), kLaneY, y.data(), 1);
      double top = 0.0;
      for (int i = 0; i < d; ++i) top = std::max(top, y[static_cast<std::size_t>(i)]);
      if (top == 0.0) {
        // whole spectral row at the origin: -ln H = +inf, summand 0
        ++part.degenerate;
        part.mv.add(0.0);
        continue;
      }
      const double v = h.neg_log_h(std::span<const double>(y.data(), static_cast<std::size_t>(d)));
      part.mv.add(std::isinf(v) ? 0.0 : 1.0 / v);
    }
  });
  return finish(acc, Method::spectral, key);
}

EstimatorResult theta(const SpectralModel& h, std::uint64_t n, std::optional<StreamKey> key) {
  if (h.has_neg_log_h()) {
    EstimatorResult r;
    r.estimate = h.theta_closed();
    r.std_error = 0.0;
    r.n_samples = 0;
    r.method = Method::closed_form;
    if (key) r.key = *key;
    return r;
  }
  if (n == 0 || !key) throw CapabilityError(h.name + ": theta needs samples (no closed form)");
  const std::size_t d = static_cast<std::size_t>(h.d);
  MeanAcc acc = chunked_reduce<MeanAcc>(n, [&](std::uint64_t b, std::uint64_t e, MeanAcc& part) {
    const std::size_t rows = static_cast<std::size_t>(e - b);
    std::vector<double> y(rows * d), vals(rows);
    for (std::uint64_t r = b; r < e; ++r) h.sample_y(key->row(r), kLaneY, y.data() + (r - b), rows);
    kernels::col_max(y.data(), vals.data(), rows, d, rows);
    for (const double v : vals) part.mv.add(v);
  });
  return finish(acc, Method::spectral, *key);
}

double upper_tail_coefficient(const SpectralModel& h) {
  if (h.d != 2) throw CapabilityError("upper tail coefficient needs d == 2");
  return 2.0 - h.theta_closed();
}

EstimatorResult expected_min_y(const SpectralModel& h, std::uint64_t n, const StreamKey& key) {
  const std::size_t d = static_cast<std::size_t>(h.d);
  MeanAcc acc = chunked_reduce<MeanAcc>(n, [&](std::uint64_t b, std::uint64_t e, MeanAcc& part) {
    const std::size_t rows = static_cast<std::size_t>(e - b);
    std::vector<double> y(rows * d), vals(rows);
    for (std::uint64_t r = b; r < e; ++r) h.sample_y(key.row(r), kLaneY, y.data() + (r - b), rows);
    kernels::col_min(y.data(), vals.data(), rows, d, rows);
    for (const double v : vals) part.mv.add(v);
  });
  return finish(acc, Method::spectral, key);
}

EstimatorResult expected_min_recip_z(const DistributionSpec& q, std::uint64_t n,
                                     const StreamKey& key) {
  return column_estimator(
      q, n, key,
      [](const double* z, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
        kernels::col_max(z, out, rows, d, stride);
      },
      [](double v) { return 1.0 / v; }, Method::direct);
}

EstimatorResult theta_tilde(const DistributionSpec& q, std::uint64_t n, const StreamKey& key) {
  return column_estimator(
      q, n, key,
      [](const double* z, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
        kernels::col_min(z, out, rows, d, stride);
      },
      [](double v) { return 1.0 / v; }, Method::direct);
}

namespace {

// d + sum over |K|>=2 of (-1)^(|K|+1) table[K], with present singletons
// replacing their implied value 1.
double alternating_sum(const SubsetTable& t, const char* what) {
  if (t.d < 2 || t.d > 24) throw ConfigError("subset table dimension out of range");
  double total = 0.0;
  const std::uint32_t full = (1u << t.d) - 1u;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int size = std::popcount(mask);
    double v;
    if (auto entry = t.get(mask)) {
      v = *entry;
    } else if (size == 1) {
      v = 1.0;  // -ln H_i(Z_i) is unit exponential
    } else {
      throw ConfigError(std::string(what) + ": missing subset entry");
    }
    total += (size % 2 == 1) ? v : -v;
  }
  return total;
}

template <class EstimateFn>
SubsetTable build_table(const SpectralModel& h, const DistributionSpec& q, const StreamKey& key,
                        double* se_out, const EstimateFn& fn) {
  require_same_dim(h, q);
  SubsetTable table(h.d);
  double se_sq = 0.0;
  const std::uint32_t full = (1u << h.d) - 1u;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) == 1) {
      table.set(mask, 1.0);
      continue;
    }
    std::vector<int> keep;
    for (int i = 0; i < h.d; ++i)
      if (mask & (1u << i)) keep.push_back(i);
    const SpectralModel hk = marginalize(h, keep);
    const DistributionSpec qk = marginalize(q, keep);
    const EstimatorResult r = fn(hk, qk, key.with_stream(key.stream + mask));
    table.set(mask, r.estimate);
    se_sq += r.std_error * r.std_error;
  }
  if (se_out) *se_out = std::sqrt(se_sq);
  return table;
}

}  // namespace

double mu_from_lambda_table(const SubsetTable& lambda_table) {
  return alternating_sum(lambda_table, "mu_from_lambda_table");
}

double lambda_from_mu_table(const SubsetTable& mu_table) {
  return alternating_sum(mu_table, "lambda_from_mu_table");
}

SubsetTable lambda_subset_table(const SpectralModel& h, const DistributionSpec& q, std::uint64_t n,
                                const StreamKey& key, double* se_out) {
  return build_table(h, q, key, se_out,
                     [n](const SpectralModel& hk, const DistributionSpec& qk, const StreamKey& k) {
                       return estimate_lambda_spectral(hk, qk, n, k);
                     });
}

SubsetTable mu_subset_table(const SpectralModel& h, const DistributionSpec& q, std::uint64_t n,
                            const StreamKey& key, double* se_out) {
  return build_table(h, q, key, se_out,
                     [n](const SpectralModel& hk, const DistributionSpec& qk, const StreamKey& k) {
                       return estimate_mu_spectral(hk, qk, n, k);
                     });
}

XiEstimate xi_finite_difference(const SpectralModel& h, double x1, double x2, double step) {
  if (h.d != 2) throw CapabilityError("xi needs d == 2");
  if (!h.has_neg_log_h()) throw CapabilityError(h.name + ": no closed-form exponent function");
  if (!(step > 0.0) || !(x1 > step) || !(x2 > step)) {
    throw ConfigError("xi_finite_difference requires x1, x2 > h > 0");
  }
  const auto H = [&](double a, double b) {
    const std::array<double, 2> x{a, b};
    return std::exp(-h.neg_log_h(std::span<const double>(x.data(), 2)));
  };
  // Ratio of one-sided increment products to the H-mass of the centred
  // 2h-rectangle; converges to xi_H as the step shrinks.
  const double a = H(x1, x2);
  const double b = H(x1 + step, x2 + step);
  const double c = H(x1 + step, x2 - step);
  const double dd = H(x1 - step, x2 + step);
  const double am = H(x1 - step, x2 - step);
  const double denom = a * (am + b - c - dd);
  XiEstimate out;
  out.step = step;
  if (std::abs(denom) < 1e-14) {
    out.singular = true;
    return out;
  }
  out.value = (b - c) * (b - dd) / denom;
  return out;
}

}  // namespace exdep
