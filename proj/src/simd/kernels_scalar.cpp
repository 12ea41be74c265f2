#include "kernels_impl.hpp"

namespace longtail::simd::detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void syr_scalar(double alpha, const double* x, double* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double w = alpha * x[i];
        double* row = a + i * n;
        for (std::size_t j = 0; j < n; ++j) row[j] += w * x[j];
    }
}

}  // namespace longtail::simd::detail
