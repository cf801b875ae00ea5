// Small dense linear algebra: just enough for regression and Hessian work.
#pragma once

#include <cstddef>
#include <vector>

namespace volest {

/// Row-major dense matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct LeastSquaresSolution {
    std::vector<double> coefficients;
    Matrix xtx_inverse;  // (X'X)^{-1}, for coefficient covariance
    bool full_rank = true;
};

/// Least squares via Householder QR. Requires rows >= cols. Sets
/// full_rank = false (and leaves outputs unusable) on rank deficiency,
/// detected as |R_jj| below tol relative to the largest diagonal.
LeastSquaresSolution solve_least_squares(const Matrix& design, const std::vector<double>& response,
                                         double rank_tol = 1e-12);

/// Invert a symmetric positive-definite-ish matrix in place via Gauss-Jordan
/// with partial pivoting. Returns false if a pivot collapses.
bool invert_in_place(Matrix& m);

}  // namespace volest
