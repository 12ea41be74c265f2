#include "longtail/linalg.hpp"

#include <cmath>
#include <string>

#include "longtail/error.hpp"
#include "longtail/simd/kernels.hpp"

namespace longtail {

DenseMatrix gram(const DenseMatrix& m) {
    DenseMatrix g(m.cols(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) simd::syr(1.0, m.row(r), g.data());
    return g;
}

void cholesky_solve(std::span<double> a, std::span<double> b) {
    const std::size_t n = b.size();
    if (a.size() != n * n) throw std::invalid_argument("cholesky_solve: dimension mismatch");

    // Lower factor L stored in the lower triangle, row-major, so that
    // row i of L is contiguous for the dot products below.
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a[i * n + i]));
    const double tiny = max_diag * 1e-14;

    for (std::size_t j = 0; j < n; ++j) {
        double* rj = a.data() + j * n;
        const double d = rj[j] - simd::active().dot(rj, rj, j);
        if (!(d > tiny) || !std::isfinite(d)) {
            throw NumericalError("normal matrix is singular or ill-conditioned (pivot " + std::to_string(j) + ")");
        }
        const double ljj = std::sqrt(d);
        rj[j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double* ri = a.data() + i * n;
            ri[j] = (ri[j] - simd::active().dot(ri, rj, j)) / ljj;
        }
    }
    // L y = b
    for (std::size_t i = 0; i < n; ++i) {
        const double* ri = a.data() + i * n;
        b[i] = (b[i] - simd::active().dot(ri, b.data(), i)) / ri[i];
    }
    // L^T x = y
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a[k * n + ii] * b[k];
        b[ii] = s / a[ii * n + ii];
    }
}

}  // namespace longtail
