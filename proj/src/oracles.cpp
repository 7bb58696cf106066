#include "exdep/oracles.hpp"

#include <array>
#include <cmath>

#include "exdep/accumulate.hpp"
#include "exdep/errors.hpp"

namespace exdep {
namespace {

struct MeanAcc {
  MeanVar mv;
  void merge(const MeanAcc& o) { mv.merge(o.mv); }
};

// Integration runs in the coordinates s_i = 1/z_i, under which unit Frechet
// margins become unit exponentials: E[g(Z)] = int g(1/s) e^-s ds. Features
// of the integrand then have O(1) width, which keeps the adaptive rule from
// stepping over them (the direct u = exp(-1/z) map onto (0,1) squeezes the
// small-z region below the coarsest node spacing). The e^-s weight makes
// the tail beyond kSCut irrelevant at any realistic tolerance.
constexpr double kSCut = 120.0;

}  // namespace

double mu_quadrature(const SpectralModel& h, const DistributionSpec& q,
                     const QuadratureSpec& spec) {
  if (h.d != 2 || q.d != 2) throw CapabilityError("mu_quadrature supports d == 2 only");
  if (!h.has_neg_log_h()) throw CapabilityError(h.name + ": no closed-form exponent function");
  const auto v = [&](double s1, double s2) {
    const std::array<double, 2> x{1.0 / s1, 1.0 / s2};
    return h.neg_log_h(std::span<const double>(x.data(), 2));
  };
  switch (q.kind) {
    case DistKind::hinf: {
      // Z = (Z,Z): one-dimensional integral against the exponential weight.
      return integrate([&](double s) { return v(s, s) * std::exp(-s); }, 0.0, kSCut, spec).value;
    }
    case DistKind::h0:
    case DistKind::indep_frechet: {
      // Product Frechet: iterated adaptive integral, inner budget half of
      // the outer so the total stays within abs_tol. The inner interval is
      // split at s2 = s1: v(s1, .) changes character on the scale of s1
      // itself (a kink for the comonotone law, a boundary layer otherwise),
      // which the rule cannot see once s1 drops below its node spacing.
      QuadratureSpec outer = spec;
      outer.abs_tol = 0.5 * spec.abs_tol;
      QuadratureSpec inner = spec;
      inner.abs_tol = 0.125 * spec.abs_tol / kSCut;
      const auto row = [&](double s1) {
        // outer weight folded in so the inner tolerance is achievable at
        // every s1 (the integrand magnitude then decays with s1)
        const double w = std::exp(-s1);
        const auto f = [&](double s2) { return w * v(s1, s2) * std::exp(-s2); };
        if (s1 > 0.0 && s1 < kSCut) {
          return integrate(f, 0.0, s1, inner).value + integrate(f, s1, kSCut, inner).value;
        }
        return integrate(f, 0.0, kSCut, inner).value;
      };
      return integrate(row, 0.0, kSCut, outer).value;
    }
    default:
      throw CapabilityError("mu_quadrature supports Q in {h0, indep_frechet, hinf}");
  }
}

XiValue xi_closed_form(const SpectralModel& h, double x1, double x2) {
  if (h.d != 2) throw CapabilityError("xi needs d == 2");
  if (!h.has_partials()) throw CapabilityError(h.name + ": no analytic partials");
  if (!(x1 > 0.0) || !(x2 > 0.0)) throw ConfigError("xi needs x1, x2 > 0");
  const BivariatePartials p = h.partials(x1, x2);
  const double num = p.v1 * p.v2;
  const double den = num - p.v12;
  XiValue out;
  if (std::abs(den) < 1e-14) {
    out.singular = true;
    return out;
  }
  out.value = num / den;
  return out;
}

std::pair<EstimatorResult, EstimatorResult> lambda_integral_check(const DistributionSpec& h,
                                                                  const DistributionSpec& q,
                                                                  std::uint64_t n,
                                                                  const StreamKey& key) {
  if (h.d != 2 || q.d != 2) throw CapabilityError("lambda_integral_check needs d == 2");
  if (!h.is_max_stable() || !h.exact) throw CapabilityError(h.name + ": need an exactly samplable max-stable law");
  const SpectralModel& hm = *h.spectral;
  if (!hm.has_partials() || !hm.has_neg_log_h())
    throw CapabilityError(h.name + ": need analytic partials and exponent function");
  if (!q.has_cdf()) throw CapabilityError(q.name + ": no closed-form df");

  MeanAcc acc = chunked_reduce<MeanAcc>(n, [&](std::uint64_t b, std::uint64_t e, MeanAcc& part) {
    std::array<double, 2> v;
    for (std::uint64_t r = b; r < e; ++r) {
      h.sample(key.row(r), 0, v.data(), 1);
      // 1 - xi = -V12 / (V1 V2 - V12); degeneracy judged relative to the
      // local derivative scale, since the raw denominator shrinks like
      // |x|^-(2d+2) far out in the tail without being singular there.
      const BivariatePartials p = hm.partials(v[0], v[1]);
      const double num = p.v1 * p.v2;
      const double den = num - p.v12;
      const double scale = std::max(std::abs(num), std::abs(p.v12));
      if (!(den > 1e-12 * scale)) {
        throw NumericError(h.name + ": singular xi on the sample path");
      }
      const double one_minus_xi = -p.v12 / den;
      const std::span<const double> vs(v.data(), 2);
      const double ratio = q.cdf(vs) * std::exp(hm.neg_log_h(vs));  // Q(V)/H(V)
      part.mv.add(one_minus_xi * ratio);
    }
  });
  EstimatorResult via_exponent;
  via_exponent.estimate = acc.mv.mean();
  via_exponent.std_error = acc.mv.std_error();
  via_exponent.n_samples = acc.mv.n;
  via_exponent.method = Method::exponent;
  via_exponent.key = key;

  EstimatorResult via_spectral =
      estimate_lambda_spectral(hm, q, n, key.with_stream(key.stream + 1));
  return {via_exponent, via_spectral};
}

ExceedanceReport uniform_exceedance_check(const DistributionSpec& h, double u, double t,
                                          const std::vector<std::uint64_t>& n_list,
                                          std::uint64_t reps, const StreamKey& key) {
  if (h.d != 2) throw CapabilityError("uniform_exceedance_check needs d == 2");
  if (!h.exact || !h.sample) throw CapabilityError(h.name + ": no exact sampler");
  if (!h.is_max_stable() || !h.spectral->has_neg_log_h())
    throw CapabilityError(h.name + ": need a closed-form exponent function for the limit");
  if (!(u > 0.0) || !(t > 0.0)) throw ConfigError("u, t must be positive");

  ExceedanceReport report;
  {
    const std::array<double, 2> x{1.0 / u, 1.0 / t};
    report.limit = u + t - h.spectral->neg_log_h(std::span<const double>(x.data(), 2));
  }
  struct Acc {
    std::vector<Counter> per_n;
    void merge(const Acc& o) {
      if (per_n.empty()) per_n.resize(o.per_n.size());
      for (std::size_t i = 0; i < o.per_n.size(); ++i) per_n[i].merge(o.per_n[i]);
    }
  };
  // Frechet-scale thresholds: exp(-1/V) > 1 - u/n  <=>  V > -1/ln(1 - u/n)
  std::vector<std::array<double, 2>> thr(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double n = static_cast<double>(n_list[i]);
    if (!(u < n) || !(t < n)) throw ConfigError("need u, t < n in the exceedance check");
    thr[i] = {-1.0 / std::log1p(-u / n), -1.0 / std::log1p(-t / n)};
  }
  Acc acc = chunked_reduce<Acc>(reps, [&](std::uint64_t b, std::uint64_t e, Acc& part) {
    part.per_n.resize(n_list.size());
    std::array<double, 2> v;
    for (std::uint64_t r = b; r < e; ++r) {
      h.sample(key.row(r), 0, v.data(), 1);
      for (std::size_t i = 0; i < n_list.size(); ++i)
        part.per_n[i].add(v[0] > thr[i][0] && v[1] > thr[i][1]);
    }
  });
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double n = static_cast<double>(n_list[i]);
    report.rows.push_back(
        ExceedanceRow{n_list[i], n * acc.per_n[i].proportion(), n * acc.per_n[i].std_error()});
  }
  return report;
}

std::pair<double, double> exact_domination(Family family, int d, std::uint64_t n) {
  if (d < 1) throw ConfigError("d must be >= 1");
  const double m = static_cast<double>(n) + 1.0;
  switch (family) {
    case Family::independence: {
      const double pi_bar = std::pow(m, -static_cast<double>(d));
      const double pi = 1.0 - std::pow(1.0 - 1.0 / m, static_cast<double>(d));
      return {pi, pi_bar};
    }
    case Family::comonotone:
      return {1.0 / m, 1.0 / m};
    default:
      throw CapabilityError("exact domination formulas exist for h0 and hinf only");
  }
}

}  // namespace exdep
