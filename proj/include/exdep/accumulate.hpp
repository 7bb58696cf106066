#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace exdep {

// Worker-count hint for the chunked reducers. Changing it never changes
// results, only wall time.
void set_threads(int t);
int threads();

namespace detail {
inline void neumaier_add(double& sum, double& comp, double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}
}  // namespace detail

// Compensated running mean / standard error.
struct MeanVar {
  double sum = 0.0, c1 = 0.0;
  double sumsq = 0.0, c2 = 0.0;
  std::uint64_t n = 0;

  void add(double x) {
    detail::neumaier_add(sum, c1, x);
    detail::neumaier_add(sumsq, c2, x * x);
    ++n;
  }
  void merge(const MeanVar& o) {
    detail::neumaier_add(sum, c1, o.sum);
    detail::neumaier_add(sum, c1, o.c1);
    detail::neumaier_add(sumsq, c2, o.sumsq);
    detail::neumaier_add(sumsq, c2, o.c2);
    n += o.n;
  }
  double mean() const { return n ? (sum + c1) / static_cast<double>(n) : 0.0; }
  double variance() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double ss = (sumsq + c2) - static_cast<double>(n) * m * m;
    return std::max(0.0, ss / static_cast<double>(n - 1));
  }
  double std_error() const {
    return n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
  }
};

// Bernoulli counter with binomial standard error.
struct Counter {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;

  void add(bool hit) {
    hits += hit ? 1 : 0;
    ++total;
  }
  void merge(const Counter& o) {
    hits += o.hits;
    total += o.total;
  }
  double proportion() const {
    return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
  }
  double std_error() const {
    if (!total) return 0.0;
    const double p = proportion();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
  }
};

// Fixed chunk grid shared by every reducer. The grid, and the order partial
// results are merged in, do not depend on the worker count, so output bits
// do not either.
inline constexpr std::uint64_t kChunkRows = 8192;

template <class Acc, class Fn>
Acc chunked_reduce(std::uint64_t n, const Fn& fn) {
  const std::uint64_t nchunks = n == 0 ? 0 : (n + kChunkRows - 1) / kChunkRows;
  Acc total{};
  if (nchunks == 0) return total;
  const std::uint64_t nt =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads() > 0 ? threads() : 1), nchunks);
  if (nt <= 1) {
    for (std::uint64_t c = 0; c < nchunks; ++c) {
      Acc part{};
      fn(c * kChunkRows, std::min(n, (c + 1) * kChunkRows), part);
      total.merge(part);
    }
    return total;
  }
  std::vector<Acc> parts(nchunks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= nchunks || failed.load(std::memory_order_relaxed)) return;
      try {
        fn(c * kChunkRows, std::min(n, (c + 1) * kChunkRows), parts[c]);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt - 1);
  for (std::uint64_t t = 0; t + 1 < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  for (auto& p : parts) total.merge(p);
  return total;
}

// Row-parallel fill with disjoint writes; same chunk grid as above.
template <class Fn>
void parallel_rows(std::uint64_t n, const Fn& fn) {
  struct Nothing {
    void merge(const Nothing&) {}
  };
  chunked_reduce<Nothing>(n, [&](std::uint64_t b, std::uint64_t e, Nothing&) { fn(b, e); });
}

}  // namespace exdep
