// AVX2 variants of the batch kernels. Same operation order as the scalar
// reference lane by lane: vdivpd/vmaxpd/vminpd/vaddpd are IEEE-exact, so
// results match the scalar kernels bit for bit; the row remainder is
// delegated to the scalar code.

#include <immintrin.h>

#include "exdep/kernels.hpp"

namespace exdep::kernels::avx2 {

void max_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride) {
  std::size_t r = 0;
  for (; r + 4 <= rows; r += 4) {
    __m256d m = _mm256_div_pd(_mm256_loadu_pd(y + r), _mm256_loadu_pd(z + r));
    for (std::size_t i = 1; i < d; ++i) {
      const __m256d v =
          _mm256_div_pd(_mm256_loadu_pd(y + i * stride + r), _mm256_loadu_pd(z + i * stride + r));
      m = _mm256_max_pd(m, v);
    }
    _mm256_storeu_pd(out + r, m);
  }
  scalar::max_ratio(y + r, z + r, out + r, rows - r, d, stride);
}

void min_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride) {
  std::size_t r = 0;
  for (; r + 4 <= rows; r += 4) {
    __m256d m = _mm256_div_pd(_mm256_loadu_pd(y + r), _mm256_loadu_pd(z + r));
    for (std::size_t i = 1; i < d; ++i) {
      const __m256d v =
          _mm256_div_pd(_mm256_loadu_pd(y + i * stride + r), _mm256_loadu_pd(z + i * stride + r));
      m = _mm256_min_pd(m, v);
    }
    _mm256_storeu_pd(out + r, m);
  }
  scalar::min_ratio(y + r, z + r, out + r, rows - r, d, stride);
}

void col_max(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  std::size_t r = 0;
  for (; r + 4 <= rows; r += 4) {
    __m256d m = _mm256_loadu_pd(x + r);
    for (std::size_t i = 1; i < d; ++i) m = _mm256_max_pd(m, _mm256_loadu_pd(x + i * stride + r));
    _mm256_storeu_pd(out + r, m);
  }
  scalar::col_max(x + r, out + r, rows - r, d, stride);
}

void col_min(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  std::size_t r = 0;
  for (; r + 4 <= rows; r += 4) {
    __m256d m = _mm256_loadu_pd(x + r);
    for (std::size_t i = 1; i < d; ++i) m = _mm256_min_pd(m, _mm256_loadu_pd(x + i * stride + r));
    _mm256_storeu_pd(out + r, m);
  }
  scalar::col_min(x + r, out + r, rows - r, d, stride);
}

void recip_sum(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t r = 0;
  for (; r + 4 <= rows; r += 4) {
    __m256d s = _mm256_div_pd(one, _mm256_loadu_pd(x + r));
    for (std::size_t i = 1; i < d; ++i)
      s = _mm256_add_pd(s, _mm256_div_pd(one, _mm256_loadu_pd(x + i * stride + r)));
    _mm256_storeu_pd(out + r, s);
  }
  scalar::recip_sum(x + r, out + r, rows - r, d, stride);
}

}  // namespace exdep::kernels::avx2
