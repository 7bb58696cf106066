#include "exdep/checks.hpp"

#include <cmath>

#include "exdep/domination.hpp"
#include "exdep/errors.hpp"
#include "exdep/oracles.hpp"
#include "exdep/thresholds.hpp"

namespace exdep {
namespace {

double rss(double a, double b) { return std::sqrt(a * a + b * b); }

CheckLine line(const std::string& name, double deviation, double tolerance, std::string detail = "") {
  CheckLine l;
  l.name = name;
  l.deviation = deviation;
  l.tolerance = tolerance;
  l.pass = deviation <= tolerance;
  l.detail = std::move(detail);
  return l;
}

}  // namespace

std::vector<CheckLine> check_bounds(std::uint64_t n, const StreamKey& key) {
  struct Pair {
    const char* h;
    const char* q;
  };
  const Pair pairs[] = {
      {"h0(2)", "h0(2)"},           {"h0(2)", "hinf(2)"},
      {"logistic(2,1.5)", "h0(2)"}, {"logistic(2,3)", "hinf(2)"},
      {"hinf(2)", "logistic(2,2)"}, {"logistic(2,2)", "gauss_copula(2,0.5)"},
      {"logistic(3,2)", "h0(3)"},   {"h0(3)", "logistic(3,1.5)"},
      {"hinf(3)", "hinf(3)"},       {"logistic(3,1.5)", "logistic(3,3)"},
  };
  std::vector<CheckLine> lines;
  std::uint64_t stream = key.stream;
  for (const auto& p : pairs) {
    const SpectralModel h = to_spectral(parse_model(p.h));
    const DistributionSpec q = to_distribution(parse_model(p.q));
    const std::string tag = std::string(p.h) + "|" + p.q;
    const EstimatorResult mu = estimate_mu_spectral(h, q, n, key.with_stream(stream++));
    const EstimatorResult la = estimate_lambda_spectral(h, q, n, key.with_stream(stream++));
    const EstimatorResult min_y = expected_min_y(h, n, key.with_stream(stream++));
    const EstimatorResult min_rz = expected_min_recip_z(q, n, key.with_stream(stream++));
    const EstimatorResult th_t = theta_tilde(q, n, key.with_stream(stream++));
    const double th = theta(h).estimate;

    lines.push_back(line("mu_lower[" + tag + "]", 1.0 - mu.estimate, 4.0 * mu.std_error));
    lines.push_back(line("mu_upper[" + tag + "]", mu.estimate - h.d, 4.0 * mu.std_error));
    lines.push_back(line("lambda_upper[" + tag + "]", la.estimate - 1.0, 4.0 * la.std_error));
    lines.push_back(line("lambda_nonneg[" + tag + "]", -la.estimate, 4.0 * la.std_error));
    const double min_moment = std::min(min_y.estimate, min_rz.estimate);
    const double se_mm = std::max(min_y.std_error, min_rz.std_error);
    lines.push_back(line("lambda_min_moment[" + tag + "]", la.estimate - min_moment,
                         4.0 * rss(la.std_error, se_mm)));
    lines.push_back(line("mu_theta_dominates[" + tag + "]",
                         std::max(th, th_t.estimate) - mu.estimate,
                         4.0 * rss(mu.std_error, th_t.std_error)));
  }
  return lines;
}

std::vector<CheckLine> check_bivariate(const SpectralModel& h, const DistributionSpec& q,
                                       std::uint64_t n, const StreamKey& key) {
  if (h.d != 2 || q.d != 2) throw ConfigError("the mu + lambda = 2 pairing holds for d == 2");
  const EstimatorResult mu = estimate_mu_spectral(h, q, n, key);
  const EstimatorResult la = estimate_lambda_spectral(h, q, n, key.with_stream(key.stream + 1));
  std::vector<CheckLine> lines;
  lines.push_back(line("bivariate[mu+lambda=2]", std::abs(mu.estimate + la.estimate - 2.0),
                       4.0 * rss(mu.std_error, la.std_error),
                       h.name + "|" + q.name));
  return lines;
}

std::vector<CheckLine> check_subsets(const SpectralModel& h, const DistributionSpec& q,
                                     std::uint64_t n, const StreamKey& key) {
  if (h.d != 3) throw ConfigError("subset round trip is defined for d == 3");
  std::vector<CheckLine> lines;
  double se_table = 0.0;
  const SubsetTable lt = lambda_subset_table(h, q, n, key, &se_table);
  const double mu_via_table = mu_from_lambda_table(lt);
  const EstimatorResult mu =
      estimate_mu_spectral(h, q, n, key.with_stream(key.stream + 101));
  lines.push_back(line("subsets[lambda->mu]", std::abs(mu_via_table - mu.estimate),
                       4.0 * rss(se_table, mu.std_error), h.name + "|" + q.name));

  double se_mu_table = 0.0;
  const SubsetTable mt =
      mu_subset_table(h, q, n, key.with_stream(key.stream + 202), &se_mu_table);
  const double lambda_via_table = lambda_from_mu_table(mt);
  const EstimatorResult la =
      estimate_lambda_spectral(h, q, n, key.with_stream(key.stream + 303));
  lines.push_back(line("subsets[mu->lambda]", std::abs(lambda_via_table - la.estimate),
                       4.0 * rss(se_mu_table, la.std_error), h.name + "|" + q.name));
  return lines;
}

std::vector<CheckLine> check_exceedance(std::uint64_t reps, const StreamKey& key) {
  std::vector<CheckLine> lines;
  const std::vector<std::uint64_t> n_list{100, 10000};
  {
    const DistributionSpec h = dist_logistic(2, 2.0);
    const ExceedanceReport rep = uniform_exceedance_check(h, 1.0, 1.0, n_list, reps, key);
    const ExceedanceRow& last = rep.rows.back();
    lines.push_back(line("exceedance[logistic(2,2)]", std::abs(last.estimate - rep.limit),
                         4.0 * last.std_error, "limit=" + std::to_string(rep.limit)));
  }
  {
    const DistributionSpec h = dist_h0(2);
    const ExceedanceReport rep =
        uniform_exceedance_check(h, 1.0, 1.0, n_list, reps, key.with_stream(key.stream + 7));
    const ExceedanceRow& last = rep.rows.back();
    lines.push_back(line("exceedance[h0(2)]", last.estimate, kExceedanceH0Threshold,
                         "limit=0 (exact corner mass 1/n)"));
  }
  return lines;
}

std::vector<CheckLine> check_independence(std::uint64_t reps, const StreamKey& key) {
  std::vector<CheckLine> lines;
  const std::vector<std::uint64_t> n_list{10, 100, 1000};
  {
    const DistributionSpec f = dist_gauss_copula(2, 0.5);
    const BatteryReport rep = asymptotic_independence_battery(f, f, n_list, reps, key);
    const BatteryRow& last = rep.rows.back();
    lines.push_back(line("indep[gauss ii]", last.item_ii, kIndepItemIiThreshold));
    lines.push_back(line("indep[gauss iii]", last.item_iii, kIndepItemIiiThreshold));
    lines.push_back(line("indep[gauss v]", last.item_v, kIndepItemVThreshold));
    lines.push_back(line("indep[gauss iv->2]", std::abs(last.item_iv - 2.0),
                         kIndepItemIiiThreshold + 2.0 / (static_cast<double>(last.n) + 1.0)));
  }
  {
    const DistributionSpec f = dist_logistic(2, 2.0);
    const BatteryReport rep = asymptotic_independence_battery(
        f, f, n_list, reps, key.with_stream(key.stream + 11));
    const BatteryRow& last = rep.rows.back();
    const double tail_coef = upper_tail_coefficient(make_logistic(2, 2.0));
    lines.push_back(line("indep[logistic ii=2-sqrt2]", std::abs(last.item_ii - tail_coef),
                         4.0 * last.se_ii));
  }
  return lines;
}

}  // namespace exdep
