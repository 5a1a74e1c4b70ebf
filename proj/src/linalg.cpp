#include "confspace/linalg.hpp"

#include "confspace/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace confspace {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("matrix size mismatch");
    const std::size_t n = a.size();
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator*(double s, const Matrix& m) {
    Matrix r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r(i, j) = s * m(i, j);
    return r;
}

Vector operator*(const Matrix& m, std::span<const double> v) {
    if (m.size() != v.size()) throw std::invalid_argument("matrix/vector size mismatch");
    Vector r(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

double det(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix lu = m;
    double d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(lu(r, k)) > std::abs(lu(pivot, k))) pivot = r;
        if (lu(pivot, k) == 0.0) return 0.0;
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(pivot, c));
            d = -d;
        }
        d *= lu(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double factor = lu(r, k) / lu(k, k);
            for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= factor * lu(k, c);
        }
    }
    return d;
}

Vector symmetric_eigenvalues(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix a = m;
    constexpr int kMaxSweeps = 100;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += a(p, q) * a(p, q);
        return s;
    };
    auto diag_norm = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p) s += a(p, p) * a(p, p);
        return s;
    };

    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        const double off = off_norm();
        if (off == 0.0 || off <= 1e-32 * diag_norm()) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                    a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                }
            }
        }
    }
    if (sweep == kMaxSweeps)
        throw ConvergenceError("Jacobi eigenvalue iteration did not converge", std::sqrt(off_norm()));

    Vector ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double bilinear(const Matrix& m, std::span<const double> v, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) s += m(i, j) * v[i] * w[j];
    return s;
}

} // namespace confspace
