#pragma once

#include "confspace/error.hpp"
#include "confspace/linalg.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace confspace {

/// Axis-aligned box [lower, upper] in R^D with lower < upper componentwise.
class BoxDomain {
public:
    BoxDomain(Vector lower, Vector upper);
    static BoxDomain unit(std::size_t dimension);

    std::size_t dimension() const noexcept { return lower_.size(); }
    const Vector& lower() const noexcept { return lower_; }
    const Vector& upper() const noexcept { return upper_; }

    double volume() const;
    double diagonal() const;
    bool contains(std::span<const double> p) const;

private:
    Vector lower_;
    Vector upper_;
};

enum class QuadratureKind { gauss_legendre, midpoint };

struct QuadratureRule {
    QuadratureKind kind = QuadratureKind::gauss_legendre;
    std::size_t order = 16; // nodes per axis, 1..64

    static QuadratureRule default_for(std::size_t dimension);
};

std::string to_string(QuadratureKind kind);
QuadratureKind quadrature_kind_from_string(std::string_view name);

struct Rule1D {
    Vector nodes;   // on [-1, 1]
    Vector weights; // sum to 2
};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
Rule1D gauss_legendre(std::size_t order);

/// Flattened tensor-product node set over a box, nodes in lexicographic
/// order (last axis fastest).
struct TensorGrid {
    std::size_t dimension = 0;
    Vector coordinates; // count * dimension
    Vector weights;     // count

    std::size_t size() const noexcept { return weights.size(); }
    std::span<const double> node(std::size_t i) const {
        return std::span<const double>(coordinates).subspan(i * dimension, dimension);
    }
};

TensorGrid make_grid(const BoxDomain& domain, const QuadratureRule& rule);

/// Sum in a fixed binary tree, independent of how terms were produced.
double pairwise_sum(std::span<const double> terms);

/// Raised when the integrand fails at a node; carries the node.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& cause, Vector node);
    const Vector& node() const noexcept { return node_; }

private:
    Vector node_;
};

using PointFunction = std::function<double(std::span<const double>)>;

/// Sum over `grid` of weight * field(node). Any exception from `field` is
/// rethrown as IntegrationError naming the node.
double integrate(const PointFunction& field, const TensorGrid& grid);
double integrate(const PointFunction& field, const BoxDomain& domain, const QuadratureRule& rule);

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t intervals = 0;
};

/// Adaptive bisection with a 16-point Gauss-Legendre panel. A panel is
/// accepted once its estimate and the sum of its halves agree to its share
/// of `abs_tol`. Throws ConvergenceError past `max_depth`.
AdaptiveResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                       double abs_tol = 1e-10, int max_depth = 24);

/// Deterministic validation set: `interior` scrambled-Halton points seeded
/// from `seed_name`, followed by the 2^D corners of the box.
std::vector<Vector> sample_points(const BoxDomain& domain, std::string_view seed_name,
                                  std::size_t interior = 128);

} // namespace confspace
