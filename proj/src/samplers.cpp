#include "exdep/samplers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "exdep/accumulate.hpp"
#include "exdep/errors.hpp"
#include "exdep/special.hpp"

namespace exdep {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> exchangeable_correlation(int d, double rho) {
  if (!(rho < 1.0) || !(rho > -1.0 / (d - 1.0))) {
    throw ConfigError("gauss_copula rho must lie in (-1/(d-1), 1)");
  }
  std::vector<double> c(static_cast<std::size_t>(d) * d, rho);
  for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i) * d + i] = 1.0;
  return c;
}

// Lower Cholesky of an exchangeable correlation matrix (strictly positive
// definite in the admissible rho range).
std::vector<double> cholesky_pd(const std::vector<double>& a, int n) {
  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    double pivot = a[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) pivot -= l[static_cast<std::size_t>(j) * n + k] * l[static_cast<std::size_t>(j) * n + k];
    if (!(pivot > 0.0)) throw ConfigError("correlation matrix is not positive definite");
    const double ljj = std::sqrt(pivot);
    l[static_cast<std::size_t>(j) * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double v = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k) v -= l[static_cast<std::size_t>(i) * n + k] * l[static_cast<std::size_t>(j) * n + k];
      l[static_cast<std::size_t>(i) * n + j] = v / ljj;
    }
  }
  return l;
}

DistributionSpec from_spectral(SpectralModel sm, DistKind kind) {
  DistributionSpec s;
  s.d = sm.d;
  s.kind = kind;
  s.name = sm.name;
  auto neg_log = sm.neg_log_h;
  if (neg_log) {
    s.cdf = [neg_log](std::span<const double> x) { return std::exp(-neg_log(x)); };
  }
  s.spectral = std::move(sm);
  return s;
}

}  // namespace

SpectralModel DistributionSpec::attractor() const {
  if (spectral) return *spectral;
  switch (kind) {
    case DistKind::gauss_copula:
    case DistKind::indep_frechet:
      return make_h0(d);
    default:
      break;
  }
  throw CapabilityError(name + ": unknown attractor");
}

DistributionSpec dist_h0(int d) {
  DistributionSpec s = from_spectral(make_h0(d), DistKind::h0);
  s.exact = true;
  s.sample = [d](const StreamKey& key, std::uint64_t lane, double* out, std::size_t stride) {
    for (int i = 0; i < d; ++i)
      out[static_cast<std::size_t>(i) * stride] = sample_frechet(key, static_cast<std::uint64_t>(i), lane);
  };
  return s;
}

DistributionSpec dist_hinf(int d) {
  DistributionSpec s = from_spectral(make_hinf(d), DistKind::hinf);
  s.exact = true;
  s.sample = [d](const StreamKey& key, std::uint64_t lane, double* out, std::size_t stride) {
    const double v = sample_frechet(key, 0, lane);
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i) * stride] = v;
  };
  return s;
}

DistributionSpec dist_logistic(int d, double alpha) {
  DistributionSpec s = from_spectral(make_logistic(d, alpha), DistKind::logistic);
  s.exact = true;
  // Stable-mixture construction: X_i = (S / E_i)^(1/alpha) with S positive
  // stable of index 1/alpha and E_i iid unit exponentials has joint df
  // exp(-(sum x_i^-alpha)^(1/alpha)) exactly.
  s.sample = [d, alpha](const StreamKey& key, std::uint64_t lane, double* out, std::size_t stride) {
    const double ua = uniform01(key, 0, lane);
    const double ue = uniform01(key, 1, lane);
    const double log_s = log_positive_stable(1.0 / alpha, ua, ue);
    for (int i = 0; i < d; ++i) {
      const double e = sample_exponential(key, static_cast<std::uint64_t>(2 + i), lane);
      out[static_cast<std::size_t>(i) * stride] = std::exp((log_s - std::log(e)) / alpha);
    }
  };
  return s;
}

DistributionSpec dist_indep_frechet(int d) {
  DistributionSpec s = dist_h0(d);
  s.kind = DistKind::indep_frechet;
  s.name = "indep_frechet(" + std::to_string(d) + ")";
  return s;
}

DistributionSpec dist_gauss_copula(int d, double rho) {
  if (d < 2 || d > kMaxDim) throw ConfigError("dimension must lie in [2, " + std::to_string(kMaxDim) + "]");
  const std::vector<double> corr = exchangeable_correlation(d, rho);
  const std::vector<double> chol = cholesky_pd(corr, d);
  DistributionSpec s;
  s.d = d;
  s.kind = DistKind::gauss_copula;
  s.name = "gauss_copula(" + std::to_string(d) + "," + num(rho) + ")";
  s.exact = true;
  s.sample = [d, chol](const StreamKey& key, std::uint64_t lane, double* out, std::size_t stride) {
    std::array<double, kMaxDim> eps;
    for (int i = 0; i < d; ++i) eps[static_cast<std::size_t>(i)] = sample_std_normal(key, static_cast<std::uint64_t>(i), lane);
    for (int i = 0; i < d; ++i) {
      double g = 0.0;
      for (int j = 0; j <= i; ++j) g += chol[static_cast<std::size_t>(i) * d + j] * eps[static_cast<std::size_t>(j)];
      out[static_cast<std::size_t>(i) * stride] = frechet_from_uniform(normal_cdf(g));
    }
  };
  if (d == 2) {
    s.cdf = [rho](std::span<const double> x) {
      double q[2];
      for (int i = 0; i < 2; ++i) {
        if (x[static_cast<std::size_t>(i)] <= 0.0) return 0.0;
        const double u = std::exp(-1.0 / x[static_cast<std::size_t>(i)]);
        q[i] = u >= 1.0 ? kInf : normal_quantile(u);
      }
      return bvn_cdf(q[0], q[1], rho);
    };
  }
  return s;
}

DistributionSpec dist_husler_reiss(int d, double gamma) {
  DistributionSpec s;
  SpectralModel sm = make_husler_reiss(d, gamma);
  s.d = d;
  s.kind = DistKind::husler_reiss;
  s.name = sm.name;
  s.exact = false;  // exact simulation of the law itself is out of scope
  s.spectral = std::move(sm);
  return s;
}

DistributionSpec marginalize(const DistributionSpec& spec, const std::vector<int>& keep) {
  if (keep.empty()) throw ConfigError("marginalize: empty index set");
  if (static_cast<int>(keep.size()) == spec.d) return spec;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= spec.d) throw ConfigError("marginalize: index out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) throw ConfigError("marginalize: indices must be strictly increasing");
  }
  DistributionSpec s;
  s.d = static_cast<int>(keep.size());
  s.kind = spec.kind;
  {
    std::string idx;
    for (std::size_t i = 0; i < keep.size(); ++i) idx += (i ? "," : "") + std::to_string(keep[i] + 1);
    s.name = "margin(" + spec.name + ",{" + idx + "})";
  }
  s.exact = spec.exact;
  if (spec.sample) {
    auto parent = spec.sample;
    s.sample = [parent, keep](const StreamKey& key, std::uint64_t lane, double* out,
                              std::size_t stride) {
      std::array<double, kMaxDim> full;
      parent(key, lane, full.data(), 1);
      for (std::size_t i = 0; i < keep.size(); ++i) out[i * stride] = full[static_cast<std::size_t>(keep[i])];
    };
  }
  if (spec.cdf) {
    const int pd = spec.d;
    auto parent = spec.cdf;
    s.cdf = [parent, keep, pd](std::span<const double> x) {
      std::array<double, kMaxDim> full;
      full.fill(kInf);
      for (std::size_t i = 0; i < keep.size(); ++i) full[static_cast<std::size_t>(keep[i])] = x[i];
      return parent(std::span<const double>(full.data(), static_cast<std::size_t>(pd)));
    };
  }
  if (spec.spectral) s.spectral = exdep::marginalize(*spec.spectral, keep);
  return s;
}

SampleBatch sample_exact(const DistributionSpec& spec, std::uint64_t n, const StreamKey& key) {
  if (!spec.exact || !spec.sample) {
    throw CapabilityError(spec.name + ": no exact sampler");
  }
  SampleBatch batch;
  batch.d = spec.d;
  batch.n = n;
  batch.source = spec.name;
  batch.key = key;
  batch.data.resize(static_cast<std::size_t>(spec.d) * n);
  parallel_rows(n, [&](std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t r = b; r < e; ++r) {
      spec.sample(key.row(r), 0, batch.data.data() + r, n);
    }
  });
  return batch;
}

SampleBatch sample_truncated_ppp(const SpectralModel& model, std::uint64_t n, const StreamKey& key,
                                 double tol, std::uint64_t max_atoms) {
  if (!model.y_bound && !(tol > 0.0)) {
    throw ConfigError("point-process sampler needs a spectral bound or tol > 0");
  }
  // Truncation reference for unbounded spectra: the 0.99 quantile of
  // max_i Y_i. Atoms stop once bound/arrival < tol * (running min), so a
  // later atom can only matter when its spectral value lands beyond
  // bound/tol, far out in the tail; the bias this leaves is orders below
  // tol while the atom count stays near bound / (tol * min).
  constexpr double kTailLevel = 0.99;
  double bound = 0.0;
  bool exact = false;
  if (model.y_bound) {
    bound = *model.y_bound;
    exact = true;
  } else if (model.y_tail_quantile) {
    bound = model.y_tail_quantile(kTailLevel);
  } else {
    // Pilot estimate of the quantile on a reserved lane.
    constexpr std::uint64_t kPilot = 8192;
    constexpr std::uint64_t kPilotLane = 1000003;
    std::vector<double> maxima(kPilot);
    std::array<double, kMaxDim> y;
    for (std::uint64_t r = 0; r < kPilot; ++r) {
      model.sample_y(key.row(r), kPilotLane, y.data(), 1);
      double worst = 0.0;
      for (int i = 0; i < model.d; ++i) worst = std::max(worst, y[static_cast<std::size_t>(i)]);
      maxima[r] = worst;
    }
    std::sort(maxima.begin(), maxima.end());
    bound = maxima[static_cast<std::size_t>(kTailLevel * (kPilot - 1))];
  }

  SampleBatch batch;
  batch.d = model.d;
  batch.n = n;
  batch.source = model.name;
  batch.key = key;
  batch.exact = exact;
  batch.truncation_bound = bound;
  batch.data.resize(static_cast<std::size_t>(model.d) * n);

  struct MaxAtoms {
    std::uint64_t v = 0;
    void merge(const MaxAtoms& o) { v = std::max(v, o.v); }
  };
  const int d = model.d;
  MaxAtoms used = chunked_reduce<MaxAtoms>(n, [&](std::uint64_t b, std::uint64_t e, MaxAtoms& acc) {
    std::array<double, kMaxDim> y;
    for (std::uint64_t r = b; r < e; ++r) {
      const StreamKey rk = key.row(r);
      double arrival = 0.0;
      std::array<double, kMaxDim> m;
      m.fill(0.0);
      std::uint64_t k = 0;
      for (;; ++k) {
        if (k >= max_atoms) {
          throw NumericError(model.name + ": point-process series exceeded " +
                             std::to_string(max_atoms) + " atoms (row " + std::to_string(r) +
                             ", bound " + std::to_string(bound) + ")");
        }
        arrival += sample_exponential(rk, k, 0);
        model.sample_y(rk, 1 + k, y.data(), 1);
        for (int i = 0; i < d; ++i) {
          const double v = y[static_cast<std::size_t>(i)] / arrival;
          if (v > m[static_cast<std::size_t>(i)]) m[static_cast<std::size_t>(i)] = v;
        }
        double lo = m[0];
        for (int i = 1; i < d; ++i) lo = std::min(lo, m[static_cast<std::size_t>(i)]);
        if (lo > 0.0) {
          const double reach = bound / arrival;
          if (exact ? (reach < lo) : (reach < tol * lo)) break;
        }
      }
      acc.v = std::max(acc.v, k + 1);
      for (int i = 0; i < d; ++i) batch.data[static_cast<std::size_t>(i) * n + r] = m[static_cast<std::size_t>(i)];
    }
  });
  batch.max_atoms_used = used.v;
  return batch;
}

SampleBatch sample_componentwise_maxima(const DistributionSpec& spec, std::uint64_t n_block,
                                        std::uint64_t reps, const StreamKey& key) {
  if (!spec.exact || !spec.sample) throw CapabilityError(spec.name + ": no exact sampler");
  if (n_block < 1) throw ConfigError("block size must be >= 1");
  SampleBatch batch;
  batch.d = spec.d;
  batch.n = reps;
  batch.source = "maxima(" + spec.name + "," + std::to_string(n_block) + ")";
  batch.key = key;
  batch.data.resize(static_cast<std::size_t>(spec.d) * reps);
  const int d = spec.d;
  parallel_rows(reps, [&](std::uint64_t b, std::uint64_t e) {
    std::array<double, kMaxDim> x;
    std::array<double, kMaxDim> m;
    for (std::uint64_t r = b; r < e; ++r) {
      const StreamKey rk = key.row(r);
      m.fill(0.0);
      for (std::uint64_t j = 0; j < n_block; ++j) {
        spec.sample(rk, j, x.data(), 1);
        for (int i = 0; i < d; ++i)
          if (x[static_cast<std::size_t>(i)] > m[static_cast<std::size_t>(i)]) m[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
      }
      for (int i = 0; i < d; ++i) batch.data[static_cast<std::size_t>(i) * reps + r] = m[static_cast<std::size_t>(i)];
    }
  });
  return batch;
}

}  // namespace exdep
