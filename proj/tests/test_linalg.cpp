#include "confspace/error.hpp"
#include "confspace/linalg.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace confspace;

namespace {

Matrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = u(rng);
    return m;
}

std::vector<std::vector<double>> rows(const Matrix& m) {
    std::vector<std::vector<double>> out(m.size(), std::vector<double>(m.size()));
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m.size(); ++c) out[r][c] = m(r, c);
    return out;
}

} // namespace

TEST_CASE("LU determinant matches cofactor expansion") {
    std::mt19937_64 rng(7);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            const Matrix m = random_matrix(n, rng);
            CHECK(det(m) == doctest::Approx(oracle::cofactor_det(rows(m))).epsilon(1e-12));
        }
    Matrix singular(3, 1.0);
    CHECK(det(singular) == 0.0);
    CHECK(det(Matrix::identity(4)) == 1.0);
}

TEST_CASE("products and transpose") {
    Matrix a(2);
    a(0, 0) = 1; a(0, 1) = 2; a(1, 0) = 3; a(1, 1) = 4;
    const Matrix p = a * a.transpose();
    CHECK(p(0, 0) == 5.0);
    CHECK(p(0, 1) == 11.0);
    CHECK(p(1, 1) == 25.0);
    const Vector v = a * std::vector<double>{1.0, -1.0};
    CHECK(v == Vector{-1.0, -1.0});
    CHECK((2.0 * a)(1, 0) == 6.0);
    CHECK(bilinear(a, std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 2.0);
    CHECK(a.max_abs() == 4.0);
}

TEST_CASE("Jacobi eigenvalues") {
    Matrix m(2);
    m(0, 0) = 2; m(0, 1) = 1; m(1, 0) = 1; m(1, 1) = 2;
    const Vector ev = symmetric_eigenvalues(m);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-14));

    // Spectrum is preserved by an orthogonal similarity built from rotations.
    std::mt19937_64 rng(11);
    const std::size_t n = 5;
    const Vector diag{-3.0, -0.5, 0.25, 1.0, 4.0};
    Matrix q = Matrix::identity(n);
    std::uniform_real_distribution<double> angle(0.0, 6.28);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Matrix g = Matrix::identity(n);
            const double t = angle(rng);
            g(i, i) = std::cos(t); g(j, j) = std::cos(t);
            g(i, j) = -std::sin(t); g(j, i) = std::sin(t);
            q = q * g;
        }
    const Matrix s = q * Matrix::diagonal(diag) * q.transpose();
    Matrix sym(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (s(i, j) + s(j, i));
    const Vector got = symmetric_eigenvalues(sym);
    for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(diag[i]).epsilon(1e-12));

    // Sum and product of eigenvalues agree with trace and determinant.
    double sum = 0, prod = 1, trace = 0;
    for (double x : got) { sum += x; prod *= x; }
    for (std::size_t i = 0; i < n; ++i) trace += sym(i, i);
    CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
    CHECK(prod == doctest::Approx(det(sym)).epsilon(1e-12));
}
