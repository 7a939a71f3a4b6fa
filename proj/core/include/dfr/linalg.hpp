#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dfr::linalg {

using Vector = std::vector<double>;

/// Dense row-major matrix of 64-bit reals. Entries must be finite.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Matrix transpose() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

// product with fixed left-to-right summation over the inner index
Matrix matmul(const Matrix& a, const Matrix& b);

Vector matvec(const Matrix& a, const Vector& v);

// A·Bᵀ·(B·Bᵀ + reg·E)⁻¹, solved by Cholesky factorization of the Gram matrix.
// Throws std::runtime_error("singular Gram matrix ...") when the factorization
// breaks down (possible when reg = 0 and B·Bᵀ is rank-deficient).
Matrix ridge_solve(const Matrix& a, const Matrix& b, double reg);

// vec(·): row-major flattening, the single ordering used everywhere.
Vector flatten(const Matrix& m);
Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols);

}  // namespace dfr::linalg
