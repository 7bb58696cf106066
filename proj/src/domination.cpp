#include "exdep/domination.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "exdep/accumulate.hpp"
#include "exdep/errors.hpp"

namespace exdep {
namespace {

constexpr std::uint64_t kLaneW = 0;
constexpr std::uint64_t kLaneBlock = 1;  // lane 1+j for block draw j

struct DomAcc {
  Counter marginal;
  Counter complete;
  std::uint64_t ties = 0;
  void merge(const DomAcc& o) {
    marginal.merge(o.marginal);
    complete.merge(o.complete);
    ties += o.ties;
  }
};

// One block maximum: exact n*X rescaling for max-stable F, otherwise the
// n-fold maximum drawn on lanes 1+j.
template <class Out>
void draw_block_max(const DistributionSpec& f, std::uint64_t n, const StreamKey& rk,
                    bool brute_force, Out* m) {
  const int d = f.d;
  if (n == 0) {
    for (int i = 0; i < d; ++i) m[i] = 0.0;
    return;
  }
  if (f.is_max_stable() && !brute_force) {
    f.sample(rk, kLaneBlock, m, 1);
    const double scale = static_cast<double>(n);
    for (int i = 0; i < d; ++i) m[i] *= scale;
    return;
  }
  std::array<double, kMaxDim> x;
  for (int i = 0; i < d; ++i) m[i] = 0.0;
  for (std::uint64_t j = 0; j < n; ++j) {
    f.sample(rk, kLaneBlock + j, x.data(), 1);
    for (int i = 0; i < d; ++i)
      if (x[static_cast<std::size_t>(i)] > m[i]) m[i] = x[static_cast<std::size_t>(i)];
  }
}

DominationRow domination_row(const DistributionSpec& f, const DistributionSpec& g, std::uint64_t n,
                             std::uint64_t reps, const StreamKey& key, bool brute_force) {
  const int d = f.d;
  DomAcc acc = chunked_reduce<DomAcc>(reps, [&](std::uint64_t b, std::uint64_t e, DomAcc& part) {
    std::array<double, kMaxDim> w, m;
    for (std::uint64_t r = b; r < e; ++r) {
      const StreamKey rk = key.row(r);
      g.sample(rk, kLaneW, w.data(), 1);
      draw_block_max(f, n, rk, brute_force, m.data());
      bool any = false, all = true, tie = false;
      for (int i = 0; i < d; ++i) {
        const double wi = w[static_cast<std::size_t>(i)];
        const double mi = m[static_cast<std::size_t>(i)];
        if (wi == mi) tie = true;
        if (wi > mi)
          any = true;
        else
          all = false;
      }
      part.marginal.add(any);
      part.complete.add(all);
      if (tie) ++part.ties;
    }
  });
  DominationRow row;
  row.n = n;
  row.reps = reps;
  row.pi_marginal = acc.marginal.proportion();
  row.pi_complete = acc.complete.proportion();
  row.se_marginal = acc.marginal.std_error();
  row.se_complete = acc.complete.std_error();
  row.ties = acc.ties;
  return row;
}

}  // namespace

DominationReport simulate_domination(const DistributionSpec& f, const DistributionSpec& g,
                                     const std::vector<std::uint64_t>& n_list, std::uint64_t reps,
                                     const StreamKey& key, bool brute_force) {
  if (f.d != g.d) throw ConfigError("F and G dimensions differ");
  if (!f.exact || !g.exact) throw CapabilityError("simulate_domination needs exact samplers");
  DominationReport report;
  report.f_name = f.name;
  report.g_name = g.name;

  // Limit targets: n*pi_marginal -> mu(Q,H) and n*pi_complete -> lambda(H,Q)
  // with H, Q the attractors of F, G. Estimated spectrally on side streams
  // when the attractors support it.
  try {
    const SpectralModel hq = g.attractor();
    const DistributionSpec hf = [&] {
      const SpectralModel a = f.attractor();
      switch (a.family) {
        case Family::independence: return dist_h0(a.d);
        case Family::comonotone: return dist_hinf(a.d);
        default: break;
      }
      if (f.is_max_stable()) return f;
      throw CapabilityError("no samplable attractor");
    }();
    constexpr std::uint64_t kTargetSamples = 200000;
    report.target_mu =
        estimate_mu_spectral(hq, hf, kTargetSamples, key.with_stream(key.stream + 1000001))
            .estimate;
    report.target_lambda =
        estimate_lambda_spectral(hq, hf, kTargetSamples, key.with_stream(key.stream + 1000002))
            .estimate;
  } catch (const CapabilityError&) {
    // targets stay absent
  }

  std::uint64_t stream_offset = 0;
  for (const std::uint64_t n : n_list) {
    report.rows.push_back(domination_row(f, g, n, reps, key.with_stream(key.stream + stream_offset),
                                         brute_force));
    ++stream_offset;
  }
  return report;
}

SweepReport convergence_sweep_mu(const SpectralModel& h, const DistributionSpec& q,
                                 const std::vector<std::uint64_t>& n_list, std::uint64_t n_mc,
                                 const StreamKey& key) {
  if (h.d != q.d) throw ConfigError("H and Q dimensions differ");
  if (!h.has_neg_log_h()) throw CapabilityError(h.name + ": no closed-form exponent function");
  if (!q.exact || !q.sample) throw CapabilityError(q.name + ": no exact sampler");
  for (const std::uint64_t n : n_list)
    if (n == 0) throw ConfigError("sweep block sizes must be >= 1");

  struct Acc {
    std::vector<MeanVar> per_n;
    MeanVar limit;
    void merge(const Acc& o) {
      if (per_n.empty()) per_n.resize(o.per_n.size());
      for (std::size_t i = 0; i < o.per_n.size(); ++i) per_n[i].merge(o.per_n[i]);
      limit.merge(o.limit);
    }
  };
  const int d = h.d;
  Acc acc = chunked_reduce<Acc>(n_mc, [&](std::uint64_t b, std::uint64_t e, Acc& part) {
    part.per_n.resize(n_list.size());
    std::array<double, kMaxDim> z;
    for (std::uint64_t r = b; r < e; ++r) {
      q.sample(key.row(r), 0, z.data(), 1);
      const double v = h.neg_log_h(std::span<const double>(z.data(), static_cast<std::size_t>(d)));
      // shared draws across block sizes: n(1 - exp(-v/n)) increases in n
      for (std::size_t i = 0; i < n_list.size(); ++i) {
        const double n = static_cast<double>(n_list[i]);
        part.per_n[i].add(-n * std::expm1(-v / n));
      }
      part.limit.add(v);
    }
  });
  SweepReport report;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    report.rows.push_back(SweepRow{n_list[i], acc.per_n[i].mean(), acc.per_n[i].std_error()});
  }
  report.limit_estimate = acc.limit.mean();
  report.limit_std_error = acc.limit.std_error();
  return report;
}

SweepReport convergence_sweep_lambda(const DistributionSpec& q, const DistributionSpec& h,
                                     const std::vector<std::uint64_t>& n_list, std::uint64_t n_mc,
                                     const StreamKey& key) {
  if (h.d != q.d) throw ConfigError("H and Q dimensions differ");
  if (!q.has_cdf()) throw CapabilityError(q.name + ": no closed-form df");
  if (!h.is_max_stable()) throw CapabilityError(h.name + ": sweep needs a max-stable block law");
  if (!h.exact || !h.sample) throw CapabilityError(h.name + ": no exact sampler");
  for (const std::uint64_t n : n_list)
    if (n == 0) throw ConfigError("sweep block sizes must be >= 1");

  struct Acc {
    std::vector<MeanVar> per_n;
    void merge(const Acc& o) {
      if (per_n.empty()) per_n.resize(o.per_n.size());
      for (std::size_t i = 0; i < o.per_n.size(); ++i) per_n[i].merge(o.per_n[i]);
    }
  };
  const int d = h.d;
  Acc acc = chunked_reduce<Acc>(n_mc, [&](std::uint64_t b, std::uint64_t e, Acc& part) {
    part.per_n.resize(n_list.size());
    std::array<double, kMaxDim> v, scaled;
    for (std::uint64_t r = b; r < e; ++r) {
      h.sample(key.row(r), 0, v.data(), 1);
      // H^(1/n) is the law of V/n for max-stable H
      for (std::size_t i = 0; i < n_list.size(); ++i) {
        const double n = static_cast<double>(n_list[i]);
        for (int c = 0; c < d; ++c) scaled[static_cast<std::size_t>(c)] = v[static_cast<std::size_t>(c)] / n;
        part.per_n[i].add(n * q.cdf(std::span<const double>(scaled.data(), static_cast<std::size_t>(d))));
      }
    }
  });
  SweepReport report;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    report.rows.push_back(SweepRow{n_list[i], acc.per_n[i].mean(), acc.per_n[i].std_error()});
  }
  if (q.exact && h.is_max_stable()) {
    const EstimatorResult lim = estimate_lambda_spectral(
        *h.spectral, q, n_mc, key.with_stream(key.stream + 1000001));
    report.limit_estimate = lim.estimate;
    report.limit_std_error = lim.std_error;
  }
  return report;
}

BatteryReport asymptotic_independence_battery(const DistributionSpec& f,
                                              const DistributionSpec& g,
                                              const std::vector<std::uint64_t>& n_list,
                                              std::uint64_t reps, const StreamKey& key) {
  if (f.d != 2 || g.d != 2) throw CapabilityError("battery needs d == 2");
  if (!f.exact || !f.sample) throw CapabilityError(f.name + ": no exact sampler");
  if (!g.has_cdf()) throw CapabilityError(g.name + ": no closed-form df");
  for (const std::uint64_t n : n_list)
    if (n == 0) throw ConfigError("battery block sizes must be >= 1");

  struct PerN {
    Counter ii;
    MeanVar iii;
    Counter v;
    void merge(const PerN& o) {
      ii.merge(o.ii);
      iii.merge(o.iii);
      v.merge(o.v);
    }
  };
  struct Acc {
    std::vector<PerN> per_n;
    void merge(const Acc& o) {
      if (per_n.empty()) per_n.resize(o.per_n.size());
      for (std::size_t i = 0; i < o.per_n.size(); ++i) per_n[i].merge(o.per_n[i]);
    }
  };
  Acc acc = chunked_reduce<Acc>(reps, [&](std::uint64_t b, std::uint64_t e, Acc& part) {
    part.per_n.resize(n_list.size());
    std::array<double, 2> x;
    for (std::uint64_t r = b; r < e; ++r) {
      f.sample(key.row(r), 0, x.data(), 1);
      const double gx = g.cdf(std::span<const double>(x.data(), 2));
      const double log_gx = gx > 0.0 ? std::log(gx) : -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n_list.size(); ++i) {
        const double n = static_cast<double>(n_list[i]);
        PerN& row = part.per_n[i];
        row.ii.add(x[0] > n && x[1] > n);
        row.iii.add(std::exp(n * log_gx));
        row.v.add(gx > 1.0 - 1.0 / n);
      }
    }
  });
  BatteryReport report;
  report.f_name = f.name;
  report.g_name = g.name;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double n = static_cast<double>(n_list[i]);
    const PerN& a = acc.per_n[i];
    BatteryRow row;
    row.n = n_list[i];
    row.reps = reps;
    row.item_ii = n * a.ii.proportion();
    row.se_ii = n * a.ii.std_error();
    row.item_iii = n * a.iii.mean();
    row.se_iii = n * a.iii.std_error();
    row.item_iv = 2.0 * n / (n + 1.0) - row.item_iii;  // Fubini pairing, same draws
    row.item_v = n * a.v.proportion();
    row.se_v = n * a.v.std_error();
    report.rows.push_back(row);
  }
  return report;
}

EstimatorResult concurrence_probe(const DistributionSpec& f, std::uint64_t n, std::uint64_t reps,
                                  const StreamKey& key, bool brute_force) {
  if (!f.exact || !f.sample) throw CapabilityError(f.name + ": no exact sampler");
  const int d = f.d;
  DomAcc acc = chunked_reduce<DomAcc>(reps, [&](std::uint64_t b, std::uint64_t e, DomAcc& part) {
    std::array<double, kMaxDim> w, m;
    for (std::uint64_t r = b; r < e; ++r) {
      const StreamKey rk = key.row(r);
      f.sample(rk, kLaneW, w.data(), 1);
      draw_block_max(f, n, rk, brute_force, m.data());
      bool all = true;
      for (int i = 0; i < d; ++i)
        if (!(w[static_cast<std::size_t>(i)] > m[static_cast<std::size_t>(i)])) all = false;
      part.complete.add(all);
    }
  });
  EstimatorResult r;
  r.estimate = static_cast<double>(n + 1) * acc.complete.proportion();
  r.std_error = static_cast<double>(n + 1) * acc.complete.std_error();
  r.n_samples = reps;
  r.method = Method::direct;
  r.key = key;
  return r;
}

}  // namespace exdep
