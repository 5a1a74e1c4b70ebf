#pragma once
// Test-only reference computations, written independently of the library.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// Composite Simpson on [a, b] with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
    if (panels % 2) ++panels;
    const double h = (b - a) / static_cast<double>(panels);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    return s * h / 3.0;
}

// Simpson tensor rule on [0,1]^2.
inline double simpson2(const std::function<double(double, double)>& f, std::size_t panels) {
    return simpson([&](double x) { return simpson([&](double y) { return f(x, y); }, 0.0, 1.0, panels); }, 0.0,
                   1.0, panels);
}

// Determinant by Laplace expansion along the first row.
inline double cofactor_det(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    double d = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<double>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<double> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        d += (c % 2 ? -1.0 : 1.0) * m[0][c] * cofactor_det(minor);
    }
    return d;
}

// Fourth-order central difference of f along axis `axis`.
inline double derivative(const std::function<double(const std::vector<double>&)>& f, std::vector<double> p,
                         std::size_t axis, double h = 1e-3) {
    auto at = [&](double dx) {
        std::vector<double> q = p;
        q[axis] += dx;
        return f(q);
    };
    return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

} // namespace oracle
