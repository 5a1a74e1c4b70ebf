#include "confspace/geometry.hpp"

#include "confspace/error.hpp"

#include <cmath>
#include <stdexcept>

namespace confspace {

namespace {

std::size_t upper_index(std::size_t n, std::size_t mu, std::size_t nu) {
    if (mu > nu) std::swap(mu, nu);
    // Row mu starts after mu rows of lengths n, n-1, ...
    return mu * n - mu * (mu - 1) / 2 + (nu - mu);
}

void check_dimension(std::size_t d) {
    if (d == 0 || d > kMaxDimension)
        throw PreconditionError("dimension " + std::to_string(d) + " outside 1.." +
                                std::to_string(kMaxDimension));
}

} // namespace

MetricField::MetricField(std::size_t dimension, std::vector<Expression> upper)
    : dimension_(dimension), upper_(std::move(upper)) {}

MetricField MetricField::from_grid(const std::vector<std::vector<Expression>>& grid) {
    const std::size_t n = grid.size();
    check_dimension(n);
    std::vector<Expression> upper;
    upper.reserve(n * (n + 1) / 2);
    for (std::size_t mu = 0; mu < n; ++mu) {
        if (grid[mu].size() != n) throw PreconditionError("metric grid is not square");
        for (std::size_t nu = mu; nu < n; ++nu) {
            if (grid[mu][nu].dimension() != n)
                throw PreconditionError("metric component has wrong dimension");
            if (!(grid[mu][nu] == grid[nu][mu]))
                throw PreconditionError("metric is not symmetric: component (" + std::to_string(mu) +
                                        "," + std::to_string(nu) + ") differs from (" +
                                        std::to_string(nu) + "," + std::to_string(mu) + ")");
            upper.push_back(grid[mu][nu]);
        }
    }
    return MetricField(n, std::move(upper));
}

MetricField MetricField::from_strings(const std::vector<std::vector<std::string>>& grid) {
    const std::size_t n = grid.size();
    check_dimension(n);
    std::vector<std::vector<Expression>> parsed;
    for (const auto& row : grid) {
        std::vector<Expression> r;
        for (const auto& s : row) r.push_back(parse(s, n));
        parsed.push_back(std::move(r));
    }
    return from_grid(parsed);
}

MetricField MetricField::diagonal(const std::vector<Expression>& entries) {
    const std::size_t n = entries.size();
    check_dimension(n);
    std::vector<Expression> upper;
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = mu; nu < n; ++nu)
            upper.push_back(mu == nu ? entries[mu] : Expression::number(0.0, n));
    return MetricField(n, std::move(upper));
}

const Expression& MetricField::component(std::size_t mu, std::size_t nu) const {
    if (mu >= dimension_ || nu >= dimension_) throw std::out_of_range("metric component");
    return upper_[upper_index(dimension_, mu, nu)];
}

Matrix MetricField::evaluate(std::span<const double> p) const {
    Matrix m(dimension_);
    std::size_t k = 0;
    for (std::size_t mu = 0; mu < dimension_; ++mu)
        for (std::size_t nu = mu; nu < dimension_; ++nu) {
            const double v = upper_[k++].evaluate(p);
            m(mu, nu) = v;
            m(nu, mu) = v;
        }
    return m;
}

CoordinateMap::CoordinateMap(std::vector<Expression> components)
    : components_(std::move(components)) {
    check_dimension(components_.size());
    for (const auto& c : components_)
        if (c.dimension() != components_.size())
            throw PreconditionError("coordinate map component has wrong dimension");
}

CoordinateMap CoordinateMap::from_strings(const std::vector<std::string>& components) {
    std::vector<Expression> parsed;
    for (const auto& s : components) parsed.push_back(parse(s, components.size()));
    return CoordinateMap(std::move(parsed));
}

CoordinateMap CoordinateMap::identity(std::size_t dimension) {
    std::vector<Expression> c;
    for (std::size_t i = 0; i < dimension; ++i) c.push_back(Expression::variable(i, dimension));
    return CoordinateMap(std::move(c));
}

Vector CoordinateMap::evaluate(std::span<const double> p) const {
    Vector v(components_.size());
    for (std::size_t i = 0; i < components_.size(); ++i) v[i] = components_[i].evaluate(p);
    return v;
}

Matrix jacobian(const CoordinateMap& map, std::span<const double> p) {
    const std::size_t n = map.dimension();
    Matrix j(n);
    Vector direction(n, 0.0);
    for (std::size_t mu = 0; mu < n; ++mu) {
        direction[mu] = 1.0;
        for (std::size_t alpha = 0; alpha < n; ++alpha)
            j(alpha, mu) = map.component(alpha).evaluate_dual(p, direction).derivative;
        direction[mu] = 0.0;
    }
    return j;
}

Signature signature(const Matrix& symmetric) {
    const double eps = 1e-10 * symmetric.max_abs();
    Signature s;
    for (double ev : symmetric_eigenvalues(symmetric)) {
        if (ev > eps)
            ++s.positive;
        else if (ev < -eps)
            ++s.negative;
        else
            ++s.zero;
    }
    return s;
}

Signature signature(const MetricField& g, std::span<const double> p) {
    return signature(g.evaluate(p));
}

Matrix pullback_metric(const MetricField& g_tilde, const CoordinateMap& map,
                       std::span<const double> p) {
    const Matrix j = jacobian(map, p);
    const Matrix gt = g_tilde.evaluate(map.evaluate(p));
    return j.transpose() * gt * j;
}

double arc_length_check(const MetricField& g, const MetricField& g_tilde, const CoordinateMap& map,
                        std::span<const double> p, std::span<const double> v) {
    const Matrix j = jacobian(map, p);
    const Vector jv = j * v;
    const double lhs = bilinear(g.evaluate(p), v, v);
    const double rhs = bilinear(g_tilde.evaluate(map.evaluate(p)), jv, jv);
    return std::abs(lhs - rhs);
}

} // namespace confspace
