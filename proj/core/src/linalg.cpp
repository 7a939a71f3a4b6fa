#include "dfr/linalg.hpp"

#include <cmath>
#include <string>

namespace dfr::linalg {

namespace {

void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

[[noreturn]] void shape_error(const char* op, std::size_t ar, std::size_t ac,
                              std::size_t br, std::size_t bc) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch, left is " +
                                std::to_string(ar) + "x" + std::to_string(ac) +
                                ", right is " + std::to_string(br) + "x" +
                                std::to_string(bc));
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("Matrix: empty shape");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("Matrix: empty shape");
    if (data_.size() != rows * cols) {
        throw std::invalid_argument("Matrix: entry count " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
    }
    check_finite(data_, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix e(n, n);
    for (std::size_t i = 0; i < n; ++i) e(i, i) = 1.0;
    return e;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) shape_error("matmul", a.rows(), a.cols(), b.rows(), b.cols());
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

Vector matvec(const Matrix& a, const Vector& v) {
    if (a.cols() != v.size()) shape_error("matvec", a.rows(), a.cols(), v.size(), 1);
    Vector out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * v[k];
        out[i] = acc;
    }
    return out;
}

Matrix ridge_solve(const Matrix& a, const Matrix& b, double reg) {
    if (a.cols() != b.cols()) shape_error("ridge_solve", a.rows(), a.cols(), b.rows(), b.cols());
    if (reg < 0.0) throw std::invalid_argument("ridge_solve: negative regularization");

    const std::size_t n = b.rows();

    // Gram = B·Bᵀ + reg·E, symmetric positive (semi)definite
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < b.cols(); ++k) acc += b(i, k) * b(j, k);
            gram(i, j) = acc;
            gram(j, i) = acc;
        }
        gram(i, i) += reg;
    }

    // in-place lower Cholesky
    Matrix chol = gram;
    for (std::size_t j = 0; j < n; ++j) {
        double d = chol(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= chol(j, k) * chol(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw std::runtime_error("singular Gram matrix in ridge_solve (pivot " +
                                     std::to_string(j) + ")");
        }
        const double ljj = std::sqrt(d);
        chol(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double acc = chol(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= chol(i, k) * chol(j, k);
            chol(i, j) = acc / ljj;
        }
        for (std::size_t k = j + 1; k < n; ++k) chol(j, k) = 0.0;
    }

    // rhs = B·Aᵀ so that Gram·Xᵀ = rhs gives X = A·Bᵀ·Gram⁻¹
    Matrix rhs(n, a.rows());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < b.cols(); ++k) acc += b(i, k) * a(j, k);
            rhs(i, j) = acc;
        }

    // forward then back substitution, column by column of rhs
    Matrix xt(n, a.rows());
    for (std::size_t c = 0; c < a.rows(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = rhs(i, c);
            for (std::size_t k = 0; k < i; ++k) acc -= chol(i, k) * xt(k, c);
            xt(i, c) = acc / chol(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double acc = xt(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) acc -= chol(k, ii) * xt(k, c);
            xt(ii, c) = acc / chol(ii, ii);
        }
    }

    Matrix result = xt.transpose();
    check_finite(result.data(), "ridge_solve result");
    return result;
}

Vector flatten(const Matrix& m) { return m.data(); }

Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, v);
}

}  // namespace dfr::linalg
