#include "exdep/kernels.hpp"

namespace exdep::kernels::scalar {

void max_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride) {
  for (std::size_t r = 0; r < rows; ++r) {
    double m = y[r] / z[r];
    for (std::size_t i = 1; i < d; ++i) {
      const double v = y[i * stride + r] / z[i * stride + r];
      m = m > v ? m : v;
    }
    out[r] = m;
  }
}

void min_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride) {
  for (std::size_t r = 0; r < rows; ++r) {
    double m = y[r] / z[r];
    for (std::size_t i = 1; i < d; ++i) {
      const double v = y[i * stride + r] / z[i * stride + r];
      m = m < v ? m : v;
    }
    out[r] = m;
  }
}

void col_max(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  for (std::size_t r = 0; r < rows; ++r) {
    double m = x[r];
    for (std::size_t i = 1; i < d; ++i) {
      const double v = x[i * stride + r];
      m = m > v ? m : v;
    }
    out[r] = m;
  }
}

void col_min(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  for (std::size_t r = 0; r < rows; ++r) {
    double m = x[r];
    for (std::size_t i = 1; i < d; ++i) {
      const double v = x[i * stride + r];
      m = m < v ? m : v;
    }
    out[r] = m;
  }
}

void recip_sum(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride) {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 1.0 / x[r];
    for (std::size_t i = 1; i < d; ++i) s += 1.0 / x[i * stride + r];
    out[r] = s;
  }
}

}  // namespace exdep::kernels::scalar
