#include "volest/linalg.hpp"

#include <cmath>

#include "volest/errors.hpp"

namespace volest {

LeastSquaresSolution solve_least_squares(const Matrix& design, const std::vector<double>& response,
                                         double rank_tol) {
    const std::size_t n = design.rows();
    const std::size_t p = design.cols();
    if (response.size() != n) throw InvalidInput("least squares: response length mismatch");
    if (n < p || p == 0) throw InvalidInput("least squares: need more rows than columns");

    // Householder QR of the design, applied to the response as we go.
    Matrix a = design;
    std::vector<double> y = response;
    std::vector<double> beta_diag(p, 0.0);  // Householder scalars folded into R's diagonal
    for (std::size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += a(i, k) * a(i, k);
        norm = std::sqrt(norm);
        if (a(k, k) > 0.0) norm = -norm;
        beta_diag[k] = norm;
        if (norm == 0.0) continue;  // column already zero below the diagonal
        for (std::size_t i = k; i < n; ++i) a(i, k) /= -norm;
        a(k, k) += 1.0;
        for (std::size_t j = k + 1; j < p; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += a(i, k) * a(i, j);
            s = -s / a(k, k);
            for (std::size_t i = k; i < n; ++i) a(i, j) += s * a(i, k);
        }
        double s = 0.0;
        for (std::size_t i = k; i < n; ++i) s += a(i, k) * y[i];
        s = -s / a(k, k);
        for (std::size_t i = k; i < n; ++i) y[i] += s * a(i, k);
    }

    LeastSquaresSolution out;
    double max_diag = 0.0;
    for (std::size_t k = 0; k < p; ++k) max_diag = std::max(max_diag, std::abs(beta_diag[k]));
    for (std::size_t k = 0; k < p; ++k) {
        if (std::abs(beta_diag[k]) <= rank_tol * max_diag || beta_diag[k] == 0.0) {
            out.full_rank = false;
            return out;
        }
    }

    // Back-substitute R beta = Q'y. R's strict upper triangle lives in a.
    out.coefficients.assign(p, 0.0);
    for (std::size_t kk = p; kk-- > 0;) {
        double s = y[kk];
        for (std::size_t j = kk + 1; j < p; ++j) s -= a(kk, j) * out.coefficients[j];
        out.coefficients[kk] = s / beta_diag[kk];
    }

    // (X'X)^{-1} = R^{-1} R^{-T}: invert R, then form the product.
    Matrix rinv(p, p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        rinv(j, j) = 1.0 / beta_diag[j];
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t k = i + 1; k <= j; ++k) {
                s += a(i, k) * rinv(k, j);
            }
            rinv(i, j) = -s / beta_diag[i];
        }
    }
    out.xtx_inverse = Matrix(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = std::max(i, j); k < p; ++k) s += rinv(i, k) * rinv(j, k);
            out.xtx_inverse(i, j) = s;
        }
    }
    return out;
}

bool invert_in_place(Matrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n || n == 0) throw InvalidInput("invert_in_place: matrix must be square");
    Matrix aug(n, 2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1.0;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t i = col + 1; i < n; ++i) {
            if (std::abs(aug(i, col)) > std::abs(aug(pivot, col))) pivot = i;
        }
        if (std::abs(aug(pivot, col)) < 1e-300) return false;
        if (pivot != col) {
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(pivot, j), aug(col, j));
        }
        const double inv = 1.0 / aug(col, col);
        for (std::size_t j = 0; j < 2 * n; ++j) aug(col, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const double f = aug(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(col, j);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = aug(i, n + j);
    }
    return true;
}

}  // namespace volest
