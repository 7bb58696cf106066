#include <atomic>

#include "exdep/kernels.hpp"

namespace exdep::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(EXDEP_HAVE_AVX2) && (defined(__x86_64__) || defined(__amd64__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

#if !defined(EXDEP_HAVE_AVX2)
// AVX2 translation unit not built on this target; forward to the reference
// kernels so the symbol set stays uniform.
namespace avx2 {
void max_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride) {
  scalar::max_ratio(y, z, out, rows, d, stride);
}
void min_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride) {
  scalar::min_ratio(y, z, out, rows, d, stride);
}
void col_max(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  scalar::col_max(x, out, rows, d, stride);
}
void col_min(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  scalar::col_min(x, out, rows, d, stride);
}
void recip_sum(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  scalar::recip_sum(x, out, rows, d, stride);
}
}  // namespace avx2
#endif

bool avx2::available() { return cpu_has_avx2(); }

Backend detect_backend() { return cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2::available()) b = Backend::scalar;
  g_backend.store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void max_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride) {
  if (active_backend() == Backend::avx2)
    avx2::max_ratio(y, z, out, rows, d, stride);
  else
    scalar::max_ratio(y, z, out, rows, d, stride);
}

void min_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride) {
  if (active_backend() == Backend::avx2)
    avx2::min_ratio(y, z, out, rows, d, stride);
  else
    scalar::min_ratio(y, z, out, rows, d, stride);
}

void col_max(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  if (active_backend() == Backend::avx2)
    avx2::col_max(x, out, rows, d, stride);
  else
    scalar::col_max(x, out, rows, d, stride);
}

void col_min(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  if (active_backend() == Backend::avx2)
    avx2::col_min(x, out, rows, d, stride);
  else
    scalar::col_min(x, out, rows, d, stride);
}

void recip_sum(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  if (active_backend() == Backend::avx2)
    avx2::recip_sum(x, out, rows, d, stride);
  else
    scalar::recip_sum(x, out, rows, d, stride);
}

}  // namespace exdep::kernels
