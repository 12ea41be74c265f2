#pragma once

#include <cstddef>

namespace longtail::simd::detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void syr_scalar(double alpha, const double* x, double* a, std::size_t n);

#if defined(LONGTAIL_HAVE_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void syr_avx2(double alpha, const double* x, double* a, std::size_t n);
#endif

#if defined(LONGTAIL_HAVE_NEON)
double dot_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
void syr_neon(double alpha, const double* x, double* a, std::size_t n);
#endif

}  // namespace longtail::simd::detail
