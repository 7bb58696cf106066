#include "exdep/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "exdep/errors.hpp"

namespace exdep {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(int d) {
  if (d < 2 || d > kMaxDim) throw ConfigError("dimension must lie in [2, " + std::to_string(kMaxDim) + "]");
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Lower-triangular Cholesky factor tolerating zero pivots; throws on an
// indefinite matrix. Row-major n*n input.
std::vector<double> cholesky_psd(const std::vector<double>& a, int n) {
  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i * n + i]));
  const double tol = 1e-10 * std::max(scale, 1.0);
  for (int j = 0; j < n; ++j) {
    double pivot = a[j * n + j];
    for (int k = 0; k < j; ++k) pivot -= l[j * n + k] * l[j * n + k];
    if (pivot < -tol) throw ConfigError("variogram does not induce a positive semidefinite covariance");
    const double ljj = std::sqrt(std::max(pivot, 0.0));
    l[j * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (int k = 0; k < j; ++k) v -= l[i * n + k] * l[j * n + k];
      if (ljj > 0.0) {
        l[i * n + j] = v / ljj;
      } else if (std::abs(v) > tol) {
        throw ConfigError("variogram does not induce a positive semidefinite covariance");
      }
    }
  }
  return l;
}

BivariatePartials logistic_partials(double alpha, double x1, double x2) {
  const double s = std::pow(x1, -alpha) + std::pow(x2, -alpha);
  BivariatePartials p;
  p.v1 = -std::pow(x1, -alpha - 1.0) * std::pow(s, 1.0 / alpha - 1.0);
  p.v2 = -std::pow(x2, -alpha - 1.0) * std::pow(s, 1.0 / alpha - 1.0);
  p.v12 = -(alpha - 1.0) * std::pow(x1, -alpha - 1.0) * std::pow(x2, -alpha - 1.0) *
          std::pow(s, 1.0 / alpha - 2.0);
  return p;
}

}  // namespace

double SpectralModel::theta_closed() const {
  if (!neg_log_h) throw CapabilityError(name + ": no closed-form exponent function");
  std::vector<double> ones(static_cast<std::size_t>(d), 1.0);
  return neg_log_h(ones);
}

SpectralModel make_h0(int d) {
  require_dim(d);
  SpectralModel m;
  m.d = d;
  m.family = Family::independence;
  m.name = "h0(" + std::to_string(d) + ")";
  const double dd = static_cast<double>(d);
  m.sample_y = [d, dd](const StreamKey& key, std::uint64_t lane, double* out, std::size_t stride) {
    const double u = uniform01(key, 0, lane);
    const int j = std::min(d - 1, static_cast<int>(u * dd));
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i) * stride] = (i == j) ? dd : 0.0;
  };
  m.neg_log_h = [](std::span<const double> x) {
    double s = 0.0;
    for (const double xi : x) s += 1.0 / xi;
    return s;
  };
  m.psi = [](std::span<const double>, int) { return 1.0; };
  m.y_bound = dd;
  m.y_tail_quantile = [dd](double) { return dd; };
  m.partials = [](double x1, double x2) {
    BivariatePartials p;
    p.v1 = -1.0 / (x1 * x1);
    p.v2 = -1.0 / (x2 * x2);
    p.v12 = 0.0;
    return p;
  };
  return m;
}

SpectralModel make_hinf(int d) {
  require_dim(d);
  SpectralModel m;
  m.d = d;
  m.family = Family::comonotone;
  m.name = "hinf(" + std::to_string(d) + ")";
  m.sample_y = [d](const StreamKey&, std::uint64_t, double* out, std::size_t stride) {
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i) * stride] = 1.0;
  };
  m.neg_log_h = [](std::span<const double> x) {
    double s = 0.0;
    for (const double xi : x) s = std::max(s, 1.0 / xi);
    return s;
  };
  m.y_bound = 1.0;
  m.y_tail_quantile = [](double) { return 1.0; };
  // V = max(1/x1, 1/x2) is piecewise marginal; the mixed partial vanishes
  // off the diagonal and is a point mass on it, so the closed-form xi
  // denominator is identically zero (reported as singular downstream).
  m.partials = [](double x1, double x2) {
    BivariatePartials p;
    if (x1 <= x2) {
      p.v1 = -1.0 / (x1 * x1);
      p.v2 = 0.0;
    } else {
      p.v1 = 0.0;
      p.v2 = -1.0 / (x2 * x2);
    }
    p.v12 = 0.0;
    return p;
  };
  return m;
}

SpectralModel make_logistic(int d, double alpha) {
  require_dim(d);
  if (!(alpha > 1.0)) throw ConfigError("logistic alpha must be > 1");
  SpectralModel m;
  m.d = d;
  m.family = Family::logistic;
  m.name = "logistic(" + std::to_string(d) + "," + num(alpha) + ")";
  const double mean_frechet = std::tgamma(1.0 - 1.0 / alpha);
  m.sample_y = [d, alpha, mean_frechet](const StreamKey& key, std::uint64_t lane, double* out,
                                        std::size_t stride) {
    for (int i = 0; i < d; ++i) {
      const double u = uniform01(key, static_cast<std::uint64_t>(i), lane);
      // Frechet with shape alpha, rescaled to unit mean.
      out[static_cast<std::size_t>(i) * stride] =
          std::pow(-std::log(u), -1.0 / alpha) / mean_frechet;
    }
  };
  m.neg_log_h = [alpha](std::span<const double> x) {
    double s = 0.0;
    for (const double xi : x) s += std::pow(xi, -alpha);
    return std::pow(s, 1.0 / alpha);
  };
  m.psi = [alpha](std::span<const double> x, int i) {
    if (x[static_cast<std::size_t>(i)] == kInf) return 0.0;
    double s = 0.0;
    for (const double xi : x) s += std::pow(xi, -alpha);
    return std::pow(x[static_cast<std::size_t>(i)], 1.0 - alpha) *
           std::pow(s, (1.0 - alpha) / alpha);
  };
  m.y_tail_quantile = [d, alpha, mean_frechet](double p) {
    // max_i Y_i is Frechet(alpha) with scale d^(1/alpha) / Gamma(1-1/alpha)
    return std::pow(static_cast<double>(d) / (-std::log(p)), 1.0 / alpha) / mean_frechet;
  };
  m.partials = [alpha](double x1, double x2) { return logistic_partials(alpha, x1, x2); };
  return m;
}

SpectralModel make_husler_reiss(int d, const std::vector<double>& variogram) {
  require_dim(d);
  if (variogram.size() != static_cast<std::size_t>(d) * d) {
    throw ConfigError("variogram must be a d*d matrix");
  }
  for (int i = 0; i < d; ++i) {
    if (variogram[static_cast<std::size_t>(i) * d + i] != 0.0)
      throw ConfigError("variogram diagonal must be zero");
    for (int j = 0; j < d; ++j) {
      if (variogram[static_cast<std::size_t>(i) * d + j] !=
          variogram[static_cast<std::size_t>(j) * d + i])
        throw ConfigError("variogram must be symmetric");
      if (variogram[static_cast<std::size_t>(i) * d + j] < 0.0)
        throw ConfigError("variogram entries must be nonnegative");
    }
  }
  // Gaussian vector G with G_0 = 0 and Cov(G_i,G_j) anchored at component 0;
  // Y_i = exp(G_i - Var(G_i)/2) then has unit means and realizes the family.
  std::vector<double> cov(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      cov[static_cast<std::size_t>(i) * d + j] =
          0.5 * (variogram[static_cast<std::size_t>(0) * d + i] +
                 variogram[static_cast<std::size_t>(0) * d + j] -
                 variogram[static_cast<std::size_t>(i) * d + j]);
    }
  }
  std::vector<double> chol = cholesky_psd(cov, d);
  std::vector<double> half_var(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) half_var[static_cast<std::size_t>(i)] = 0.5 * cov[static_cast<std::size_t>(i) * d + i];

  SpectralModel m;
  m.d = d;
  m.family = Family::husler_reiss;
  const bool exch =
      d == 2 || [&] {
        const double g = variogram[1];
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            if (i != j && variogram[static_cast<std::size_t>(i) * d + j] != g) return false;
        return true;
      }();
  m.name = exch ? "husler_reiss(" + std::to_string(d) + "," + num(variogram.size() > 1 ? variogram[1] : 0.0) + ")"
                : "husler_reiss(" + std::to_string(d) + ",matrix)";
  m.sample_y = [d, chol, half_var](const StreamKey& key, std::uint64_t lane, double* out,
                                   std::size_t stride) {
    std::array<double, kMaxDim> eps;
    for (int i = 0; i < d; ++i) eps[static_cast<std::size_t>(i)] = sample_std_normal(key, static_cast<std::uint64_t>(i), lane);
    for (int i = 0; i < d; ++i) {
      double g = 0.0;
      for (int j = 0; j <= i; ++j) g += chol[static_cast<std::size_t>(i) * d + j] * eps[static_cast<std::size_t>(j)];
      out[static_cast<std::size_t>(i) * stride] = std::exp(g - half_var[static_cast<std::size_t>(i)]);
    }
  };
  return m;
}

SpectralModel make_husler_reiss(int d, double gamma) {
  require_dim(d);
  if (!(gamma >= 0.0)) throw ConfigError("husler_reiss gamma must be >= 0");
  std::vector<double> variogram(static_cast<std::size_t>(d) * d, gamma);
  for (int i = 0; i < d; ++i) variogram[static_cast<std::size_t>(i) * d + i] = 0.0;
  return make_husler_reiss(d, variogram);
}

SpectralModel marginalize(const SpectralModel& model, const std::vector<int>& keep) {
  if (keep.empty()) throw ConfigError("marginalize: empty index set");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= model.d) throw ConfigError("marginalize: index out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) throw ConfigError("marginalize: indices must be strictly increasing");
  }
  if (static_cast<int>(keep.size()) == model.d) return model;

  SpectralModel m;
  m.d = static_cast<int>(keep.size());
  m.family = model.family;
  {
    std::string idx;
    for (std::size_t i = 0; i < keep.size(); ++i)
      idx += (i ? "," : "") + std::to_string(keep[i] + 1);
    m.name = "margin(" + model.name + ",{" + idx + "})";
  }

  const int pd = model.d;
  auto parent_sample = model.sample_y;
  m.sample_y = [parent_sample, keep](const StreamKey& key, std::uint64_t lane, double* out,
                                     std::size_t stride) {
    std::array<double, kMaxDim> full;
    parent_sample(key, lane, full.data(), 1);
    for (std::size_t i = 0; i < keep.size(); ++i)
      out[i * stride] = full[static_cast<std::size_t>(keep[i])];
  };
  if (model.neg_log_h) {
    auto parent = model.neg_log_h;
    m.neg_log_h = [parent, keep, pd](std::span<const double> x) {
      std::array<double, kMaxDim> full;
      full.fill(kInf);
      for (std::size_t i = 0; i < keep.size(); ++i)
        full[static_cast<std::size_t>(keep[i])] = x[i];
      return parent(std::span<const double>(full.data(), static_cast<std::size_t>(pd)));
    };
  }
  if (model.psi) {
    auto parent = model.psi;
    m.psi = [parent, keep, pd](std::span<const double> x, int i) {
      std::array<double, kMaxDim> full;
      full.fill(kInf);
      for (std::size_t k = 0; k < keep.size(); ++k)
        full[static_cast<std::size_t>(keep[k])] = x[k];
      return parent(std::span<const double>(full.data(), static_cast<std::size_t>(pd)),
                    keep[static_cast<std::size_t>(i)]);
    };
  }
  m.y_bound = model.y_bound;
  m.y_tail_quantile = model.y_tail_quantile;  // quantile of the full max still bounds the sub-max
  if (m.d == 2 && m.neg_log_h) {
    if (model.family == Family::independence) m.partials = make_h0(2).partials;
    if (model.family == Family::comonotone) m.partials = make_hinf(2).partials;
    if (model.family == Family::logistic && model.partials) m.partials = model.partials;
  }
  return m;
}

}  // namespace exdep
