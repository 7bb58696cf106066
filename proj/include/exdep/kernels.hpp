#pragma once

#include <cstddef>

namespace exdep::kernels {

// Batch kernels for the Monte Carlo inner loops. Data is column-major:
// coordinate i of row r lives at data[i * stride + r]. Each kernel has a
// scalar reference implementation and an AVX2 variant selected at runtime;
// both use only IEEE-exact operations (divide, compare, add in fixed
// order), so their outputs are bit-identical and the selection can never
// change an estimate.

enum class Backend { scalar, avx2 };

// Best backend the current CPU supports.
Backend detect_backend();
Backend active_backend();
void set_backend(Backend b);
const char* backend_name(Backend b);

// out[r] = max_i y[i*stride+r] / z[i*stride+r]
void max_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride);
// out[r] = min_i y[i*stride+r] / z[i*stride+r]
void min_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride);
// out[r] = max_i x[i*stride+r]
void col_max(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride);
// out[r] = min_i x[i*stride+r]
void col_min(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride);
// out[r] = sum_i 1 / x[i*stride+r]
void recip_sum(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride);

namespace scalar {
void max_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride);
void min_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride);
void col_max(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride);
void col_min(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride);
void recip_sum(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride);
}  // namespace scalar

namespace avx2 {
bool available();  // compiled in and supported by this CPU
void max_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride);
void min_ratio(const double* y, const double* z, double* out, std::size_t rows, std::size_t d,
               std::size_t stride);
void col_max(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride);
void col_min(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride);
void recip_sum(const double* x, double* out, std::size_t rows, std::size_t d, std::size_t stride);
}  // namespace avx2

}  // namespace exdep::kernels
