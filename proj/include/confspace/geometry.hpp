#pragma once

#include "confspace/fieldlang.hpp"
#include "confspace/linalg.hpp"

#include <span>
#include <string>
#include <vector>

namespace confspace {

/// Symmetric D x D matrix of expressions, stored as the upper triangle.
class MetricField {
public:
    /// From a full grid; (mu,nu) and (nu,mu) must be the same expression.
    static MetricField from_grid(const std::vector<std::vector<Expression>>& grid);
    static MetricField from_strings(const std::vector<std::vector<std::string>>& grid);
    /// Diagonal metric; off-diagonal entries are the literal 0.
    static MetricField diagonal(const std::vector<Expression>& entries);

    std::size_t dimension() const noexcept { return dimension_; }
    const Expression& component(std::size_t mu, std::size_t nu) const;

    Matrix evaluate(std::span<const double> p) const;

private:
    MetricField(std::size_t dimension, std::vector<Expression> upper);

    std::size_t dimension_;
    std::vector<Expression> upper_; // row-major upper triangle incl. diagonal
};

/// A map R^D -> R^D given componentwise by expressions.
class CoordinateMap {
public:
    explicit CoordinateMap(std::vector<Expression> components);
    static CoordinateMap from_strings(const std::vector<std::string>& components);
    static CoordinateMap identity(std::size_t dimension);

    std::size_t dimension() const noexcept { return components_.size(); }
    const Expression& component(std::size_t alpha) const { return components_.at(alpha); }

    Vector evaluate(std::span<const double> p) const;

private:
    std::vector<Expression> components_;
};

/// (alpha, mu) entry is d map^alpha / d x^mu, one dual sweep per column.
Matrix jacobian(const CoordinateMap& map, std::span<const double> p);

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;

    bool operator==(const Signature&) const = default;
    /// (d, 1, 0) for D = d + 1.
    bool lorentzian() const noexcept { return negative == 1 && zero == 0 && positive >= 1; }
};

/// Eigenvalue sign counts; |lambda| <= 1e-10 * max|entry| counts as zero.
Signature signature(const Matrix& symmetric);
Signature signature(const MetricField& g, std::span<const double> p);

/// J^T g_tilde(map(p)) J.
Matrix pullback_metric(const MetricField& g_tilde, const CoordinateMap& map,
                       std::span<const double> p);

/// |g(v,v) - g_tilde(Jv,Jv)|, the mismatch of the squared line element.
double arc_length_check(const MetricField& g, const MetricField& g_tilde, const CoordinateMap& map,
                        std::span<const double> p, std::span<const double> v);

} // namespace confspace
