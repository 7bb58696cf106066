#include "exdep/accumulate.hpp"

namespace exdep {
namespace {
std::atomic<int> g_threads{1};
}

void set_threads(int t) { g_threads.store(t < 1 ? 1 : t, std::memory_order_relaxed); }

int threads() { return g_threads.load(std::memory_order_relaxed); }

}  // namespace exdep
