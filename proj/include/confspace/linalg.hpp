#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace confspace {

inline constexpr std::size_t kMaxDimension = 8;

using Vector = std::vector<double>;

// Small dense square matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    std::span<const double> data() const noexcept { return a_; }

    Matrix transpose() const;
    double max_abs() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& m);
Vector operator*(const Matrix& m, std::span<const double> v);

/// Determinant by LU factorisation with partial pivoting.
double det(const Matrix& m);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Throws ConvergenceError if the off-diagonal mass does not vanish.
Vector symmetric_eigenvalues(const Matrix& m);

/// Quadratic form v^T M w.
double bilinear(const Matrix& m, std::span<const double> v, std::span<const double> w);

} // namespace confspace
