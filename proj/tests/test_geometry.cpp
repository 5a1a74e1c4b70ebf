#include "confspace/geometry.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace confspace;

TEST_CASE("metric fields") {
    const MetricField g = MetricField::from_strings({{"-exp(2*x1)", "x0"}, {"x0", "1"}});
    const Matrix m = g.evaluate(std::vector<double>{0.5, 0.25});
    CHECK(m(0, 0) == -std::exp(0.5));
    CHECK(m(0, 1) == 0.5);
    CHECK(m(1, 0) == 0.5);
    CHECK(g.component(1, 0) == g.component(0, 1));
    CHECK_THROWS_AS(MetricField::from_strings({{"-1", "x0"}, {"x1", "1"}}), PreconditionError);

    const MetricField d = MetricField::diagonal({parse("-1", 3), parse("x0^2", 3), parse("2", 3)});
    const Matrix md = d.evaluate(std::vector<double>{3, 0, 0});
    CHECK(md(1, 1) == 9.0);
    CHECK(md(0, 2) == 0.0);
}

TEST_CASE("Jacobian by dual numbers matches finite differences") {
    const CoordinateMap map = CoordinateMap::from_strings({"x0*(1 + x1)", "exp(x0)*sin(x1) + x2", "x2^3 - x0"});
    const std::vector<double> p{0.3, 0.6, 0.9};
    const Matrix j = jacobian(map, p);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t mu = 0; mu < 3; ++mu) {
            const double fd = oracle::derivative(
                [&](const std::vector<double>& q) { return map.component(a).evaluate(q); }, p, mu);
            CHECK(j(a, mu) == doctest::Approx(fd).epsilon(1e-10));
        }
    CHECK(jacobian(CoordinateMap::identity(3), p) == Matrix::identity(3));
}

TEST_CASE("Sylvester signature") {
    CHECK(signature(Matrix::diagonal(std::vector<double>{-1, 1, 1, 1})) == Signature{3, 1, 0});
    CHECK(signature(Matrix::diagonal(std::vector<double>{-1, 1, 1, 1})).lorentzian());
    CHECK_FALSE(signature(Matrix::diagonal(std::vector<double>{1, 1})).lorentzian());
    CHECK(signature(Matrix::diagonal(std::vector<double>{-1, 0})) == Signature{0, 1, 1});
    CHECK(signature(Matrix::diagonal(std::vector<double>{-1, 1e-14})) == Signature{0, 1, 1});

    // Off-diagonal Minkowski form in null coordinates: [[0,1],[1,0]] has (1,1,0).
    Matrix n(2);
    n(0, 1) = n(1, 0) = 1.0;
    CHECK(signature(n) == Signature{1, 1, 0});

    // Congruence P^T D P keeps the signature.
    Matrix p(3);
    p(0, 0) = 2; p(0, 1) = 1; p(1, 1) = 1; p(1, 2) = -3; p(2, 0) = 0.5; p(2, 2) = 1;
    const Matrix c = p.transpose() * Matrix::diagonal(std::vector<double>{-2, 1, 5}) * p;
    CHECK(signature(c) == Signature{2, 1, 0});
}

TEST_CASE("pullback metric preserves the line element") {
    const MetricField g_tilde = MetricField::from_strings({{"-(1 + x1^2)", "0"}, {"0", "exp(x0)"}});
    const CoordinateMap map = CoordinateMap::from_strings({"x0 + x1^2", "2*x1 - x0"});
    const std::vector<double> p{0.2, 0.7};
    const Matrix pulled = pullback_metric(g_tilde, map, p);

    // Oracle: g_{mu nu} = sum_ab g~_ab(x~) dx~^a/dx^mu dx~^b/dx^nu written out by hand.
    const double j[2][2] = {{1.0, 2 * 0.7}, {-1.0, 2.0}};
    const std::vector<double> xt{0.2 + 0.49, 1.4 - 0.2};
    const double gt[2] = {-(1 + xt[1] * xt[1]), std::exp(xt[0])};
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
            double expect = 0;
            for (int a = 0; a < 2; ++a) expect += gt[a] * j[a][mu] * j[a][nu];
            CHECK(pulled(mu, nu) == doctest::Approx(expect).epsilon(1e-14));
        }

    const MetricField g_const = MetricField::from_grid(
        {{Expression::number(pulled(0, 0), 2), Expression::number(pulled(0, 1), 2)},
         {Expression::number(pulled(1, 0), 2), Expression::number(pulled(1, 1), 2)}});
    CHECK(arc_length_check(g_const, g_tilde, map, p, std::vector<double>{0.3, -1.1}) <= 1e-14);
    CHECK(arc_length_check(g_tilde, g_tilde, map, p, std::vector<double>{0.3, -1.1}) > 1e-3);
}
