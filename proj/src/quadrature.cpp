#include "confspace/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace confspace {

BoxDomain::BoxDomain(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty() || lower_.size() != upper_.size())
        throw PreconditionError("box bounds must be nonempty and of equal dimension");
    if (lower_.size() > kMaxDimension)
        throw PreconditionError("box dimension exceeds " + std::to_string(kMaxDimension));
    for (std::size_t i = 0; i < lower_.size(); ++i)
        if (!(lower_[i] < upper_[i]) || !std::isfinite(lower_[i]) || !std::isfinite(upper_[i]))
            throw PreconditionError("box requires finite lower < upper on axis " + std::to_string(i));
}

BoxDomain BoxDomain::unit(std::size_t dimension) {
    return BoxDomain(Vector(dimension, 0.0), Vector(dimension, 1.0));
}

double BoxDomain::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lower_.size(); ++i) v *= upper_[i] - lower_[i];
    return v;
}

double BoxDomain::diagonal() const {
    double s = 0.0;
    for (std::size_t i = 0; i < lower_.size(); ++i) s += (upper_[i] - lower_[i]) * (upper_[i] - lower_[i]);
    return std::sqrt(s);
}

bool BoxDomain::contains(std::span<const double> p) const {
    if (p.size() != lower_.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] < lower_[i] || p[i] > upper_[i]) return false;
    return true;
}

QuadratureRule QuadratureRule::default_for(std::size_t dimension) {
    if (dimension <= 3) return {QuadratureKind::gauss_legendre, 16};
    if (dimension == 4) return {QuadratureKind::gauss_legendre, 8};
    return {QuadratureKind::gauss_legendre, 4};
}

std::string to_string(QuadratureKind kind) {
    return kind == QuadratureKind::gauss_legendre ? "gauss_legendre" : "midpoint";
}

QuadratureKind quadrature_kind_from_string(std::string_view name) {
    if (name == "gauss_legendre") return QuadratureKind::gauss_legendre;
    if (name == "midpoint") return QuadratureKind::midpoint;
    throw PreconditionError("unknown quadrature kind '" + std::string(name) + "'");
}

Rule1D gauss_legendre(std::size_t order) {
    if (order == 0 || order > 64) throw PreconditionError("quadrature order must be in 1..64");
    const std::size_t n = order;
    Rule1D r{Vector(n), Vector(n)};
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / static_cast<double>(j);
            }
            dp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
            const double step = p1 / dp;
            z -= step;
            if (std::abs(step) <= 1e-16) break;
        }
        // Recompute the derivative at the converged root for the weight.
        double p1 = 1.0;
        double p2 = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / static_cast<double>(j);
        }
        dp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

namespace {

Rule1D midpoint_rule(std::size_t order) {
    if (order == 0 || order > 64) throw PreconditionError("quadrature order must be in 1..64");
    Rule1D r{Vector(order), Vector(order, 2.0 / static_cast<double>(order))};
    for (std::size_t k = 0; k < order; ++k)
        r.nodes[k] = -1.0 + (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(order);
    return r;
}

constexpr std::size_t kMaxNodes = std::size_t{1} << 24;

} // namespace

TensorGrid make_grid(const BoxDomain& domain, const QuadratureRule& rule) {
    const Rule1D base =
        rule.kind == QuadratureKind::gauss_legendre ? gauss_legendre(rule.order) : midpoint_rule(rule.order);
    const std::size_t d = domain.dimension();
    const std::size_t m = base.nodes.size();

    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (count > kMaxNodes / m) throw PreconditionError("quadrature grid too large");
        count *= m;
    }

    std::vector<Rule1D> axes(d);
    for (std::size_t a = 0; a < d; ++a) {
        const double half = 0.5 * (domain.upper()[a] - domain.lower()[a]);
        const double mid = 0.5 * (domain.upper()[a] + domain.lower()[a]);
        axes[a].nodes.resize(m);
        axes[a].weights.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            axes[a].nodes[k] = mid + half * base.nodes[k];
            axes[a].weights[k] = half * base.weights[k];
        }
    }

    TensorGrid g;
    g.dimension = d;
    g.coordinates.resize(count * d);
    g.weights.resize(count);
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t i = 0; i < count; ++i) {
        double w = 1.0;
        for (std::size_t a = 0; a < d; ++a) {
            g.coordinates[i * d + a] = axes[a].nodes[idx[a]];
            w *= axes[a].weights[idx[a]];
        }
        g.weights[i] = w;
        for (std::size_t a = d; a-- > 0;) {
            if (++idx[a] < m) break;
            idx[a] = 0;
        }
    }
    return g;
}

double pairwise_sum(std::span<const double> terms) {
    if (terms.size() <= 8) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

namespace {
std::string format_point(std::span<const double> p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(p[i]);
    }
    return s + ")";
}
} // namespace

IntegrationError::IntegrationError(const std::string& cause, Vector node)
    : Error("integrand failed at node " + format_point(node) + ": " + cause), node_(std::move(node)) {}

double integrate(const PointFunction& field, const TensorGrid& grid) {
    Vector terms(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto node = grid.node(i);
        double v = 0.0;
        try {
            v = field(node);
        } catch (const std::exception& e) {
            throw IntegrationError(e.what(), Vector(node.begin(), node.end()));
        }
        if (!std::isfinite(v))
            throw IntegrationError("non-finite integrand value", Vector(node.begin(), node.end()));
        terms[i] = grid.weights[i] * v;
    }
    return pairwise_sum(terms);
}

double integrate(const PointFunction& field, const BoxDomain& domain, const QuadratureRule& rule) {
    return integrate(field, make_grid(domain, rule));
}

namespace {

struct Panel {
    const Rule1D& rule;
    const std::function<double(double)>& f;

    double operator()(double a, double b) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (b + a);
        std::array<double, 16> terms{};
        for (std::size_t k = 0; k < 16; ++k) terms[k] = rule.weights[k] * f(mid + half * rule.nodes[k]);
        return half * pairwise_sum(terms);
    }
};

void refine(const Panel& panel, double a, double b, double whole, double tol, int depth, int max_depth,
            AdaptiveResult& out) {
    const double m = 0.5 * (a + b);
    const double left = panel(a, m);
    const double right = panel(m, b);
    const double halves = left + right;
    const double diff = std::abs(halves - whole);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
    if (diff <= tol || diff <= floor) {
        out.value += halves;
        out.error_estimate += diff;
        out.intervals += 2;
        return;
    }
    if (depth >= max_depth)
        throw ConvergenceError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                                   std::to_string(b) + "], achieved error " + std::to_string(diff),
                               diff);
    refine(panel, a, m, left, 0.5 * tol, depth + 1, max_depth, out);
    refine(panel, m, b, right, 0.5 * tol, depth + 1, max_depth, out);
}

} // namespace

AdaptiveResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                       double abs_tol, int max_depth) {
    static const Rule1D rule = gauss_legendre(16);
    AdaptiveResult out;
    if (a == b) return out;
    const Panel panel{rule, f};
    refine(panel, a, b, panel(a, b), abs_tol, 1, max_depth, out);
    return out;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double radical_inverse(std::size_t index, std::size_t base) {
    double result = 0.0;
    double f = 1.0 / static_cast<double>(base);
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= static_cast<double>(base);
    }
    return result;
}

} // namespace

std::vector<Vector> sample_points(const BoxDomain& domain, std::string_view seed_name,
                                  std::size_t interior) {
    static constexpr std::array<std::size_t, kMaxDimension> primes{2, 3, 5, 7, 11, 13, 17, 19};
    const std::size_t d = domain.dimension();

    std::mt19937_64 rng(fnv1a(seed_name));
    Vector shift(d);
    for (auto& s : shift) s = static_cast<double>(rng() >> 11) * 0x1.0p-53;

    std::vector<Vector> points;
    points.reserve(interior + (std::size_t{1} << d));
    for (std::size_t i = 1; i <= interior; ++i) {
        Vector p(d);
        for (std::size_t a = 0; a < d; ++a) {
            double u = radical_inverse(i, primes[a]) + shift[a];
            if (u >= 1.0) u -= 1.0;
            p[a] = domain.lower()[a] + u * (domain.upper()[a] - domain.lower()[a]);
        }
        points.push_back(std::move(p));
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        Vector p(d);
        for (std::size_t a = 0; a < d; ++a)
            p[a] = (mask >> a) & 1U ? domain.upper()[a] : domain.lower()[a];
        points.push_back(std::move(p));
    }
    return points;
}

} // namespace confspace
