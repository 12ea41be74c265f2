#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace longtail {

/// Row-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Gram matrix M^T M (cols x cols), accumulated with rank-1 updates.
DenseMatrix gram(const DenseMatrix& m);

/// Solves A x = b in place for symmetric positive definite A (n x n,
/// row-major). A is overwritten by its Cholesky factor, b by x.
/// Throws NumericalError when A is not numerically positive definite.
void cholesky_solve(std::span<double> a, std::span<double> b);

}  // namespace longtail
