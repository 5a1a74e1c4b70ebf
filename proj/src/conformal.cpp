#include "confspace/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace confspace {

namespace {

std::string point_text(std::span<const double> p) {
    std::ostringstream os;
    os.precision(6);
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ')';
    return os.str();
}

double squared(double v) { return v * v; }

} // namespace

std::string to_string(ScalePreset preset) {
    switch (preset) {
    case ScalePreset::unit: return "unit";
    case ScalePreset::inverse_sqrt_det: return "inverse_sqrt_det";
    case ScalePreset::lambda_one: return "lambda_one";
    case ScalePreset::custom: return "custom";
    }
    return "?";
}

ScalePreset scale_preset_from_string(std::string_view name) {
    for (auto p : {ScalePreset::unit, ScalePreset::inverse_sqrt_det, ScalePreset::lambda_one,
                   ScalePreset::custom})
        if (to_string(p) == name) return p;
    throw PreconditionError("unknown scale preset '" + std::string(name) + "'");
}

ScaleChoice ScaleChoice::preset(ScalePreset p) {
    if (p == ScalePreset::custom) throw PreconditionError("custom scale needs an expression for f");
    return ScaleChoice(p, std::nullopt);
}

ScaleChoice ScaleChoice::custom(Expression f) { return ScaleChoice(ScalePreset::custom, std::move(f)); }

double ScaleChoice::evaluate(std::span<const double> p, double metric_det, double jacobian_det) const {
    switch (preset_) {
    case ScalePreset::unit: return 1.0;
    case ScalePreset::inverse_sqrt_det: return 1.0 / std::sqrt(std::abs(metric_det));
    case ScalePreset::lambda_one: return std::abs(metric_det) / squared(jacobian_det);
    case ScalePreset::custom: return f_->evaluate(p);
    }
    return 0.0;
}

ConformalSystem::ConformalSystem(MetricField g, CoordinateMap map_tilde, ScaleChoice scale,
                                 Vector base_point, BoxDomain domain)
    : g_(std::move(g)), map_(std::move(map_tilde)), scale_(std::move(scale)), base_(std::move(base_point)),
      domain_(std::move(domain)) {
    const std::size_t d = g_.dimension();
    if (map_.dimension() != d || base_.size() != d || domain_.dimension() != d)
        throw PreconditionError("metric, chart, base point and domain must share one dimension");
    if (scale_.expression() && scale_.expression()->dimension() != d)
        throw PreconditionError("scale function has wrong dimension");
    if (!domain_.contains(base_))
        throw PreconditionError("base point " + point_text(base_) + " lies outside the domain");
}

LocalGeometry ConformalSystem::local(std::span<const double> p) const {
    LocalGeometry lg;
    lg.metric = g_.evaluate(p);
    lg.metric_det = det(lg.metric);
    if (!(lg.metric_det < 0.0))
        throw PreconditionError("det g >= 0 at point " + point_text(p));
    lg.jacobian = jacobian(map_, p);
    lg.jacobian_det = det(lg.jacobian);
    if (lg.jacobian_det == 0.0 || !std::isfinite(lg.jacobian_det))
        throw PreconditionError("singular chart Jacobian at point " + point_text(p));
    lg.f = scale_.evaluate(p, lg.metric_det, lg.jacobian_det);
    if (!(lg.f > 0.0) || !std::isfinite(lg.f))
        throw PreconditionError("f <= 0 at point " + point_text(p));
    lg.lambda = scale_factor_from(lg.f, lg.metric_det, lg.jacobian_det, dimension());
    return lg;
}

double scale_factor_from(double f, double metric_det, double jacobian_det, std::size_t dimension) {
    const double radicand = f / std::abs(metric_det) * squared(jacobian_det);
    if (!(radicand > 0.0) || !std::isfinite(radicand))
        throw PreconditionError("nonpositive or non-finite radicand in scale factor");
    return std::pow(radicand, 1.0 / (2.0 * static_cast<double>(dimension)));
}

double scale_factor(const ConformalSystem& sys, std::span<const double> p) { return sys.local(p).lambda; }

double f_from_lambda(double lambda, double metric_det, double jacobian_det, std::size_t dimension) {
    if (!(lambda > 0.0) || metric_det == 0.0 || jacobian_det == 0.0)
        throw PreconditionError("f_from_lambda needs lambda > 0, det g != 0 and det J~ != 0");
    return std::pow(lambda, 2.0 * static_cast<double>(dimension)) * std::abs(metric_det) /
           squared(jacobian_det);
}

double f_from_lambda(const MetricField& g, const CoordinateMap& map_tilde, double lambda,
                     std::span<const double> p) {
    return f_from_lambda(lambda, det(g.evaluate(p)), det(jacobian(map_tilde, p)), g.dimension());
}

double f_from_lambda(const MetricField& g, const CoordinateMap& map_tilde, const Expression& lambda,
                     std::span<const double> p) {
    return f_from_lambda(g, map_tilde, lambda.evaluate(p), p);
}

Matrix conformal_metric(const ConformalSystem& sys, std::span<const double> p) {
    const LocalGeometry lg = sys.local(p);
    return (lg.lambda * lg.lambda) * lg.metric;
}

Vector integrate_inverse_scale(const ConformalSystem& sys, std::span<const double> from,
                               std::span<const double> to, double abs_tol) {
    const std::size_t d = sys.dimension();
    if (from.size() != d || to.size() != d) throw PreconditionError("path endpoint has wrong dimension");
    if (!sys.domain().contains(from) || !sys.domain().contains(to))
        throw PreconditionError("path segment " + point_text(from) + " -> " + point_text(to) +
                                " leaves the domain");

    Vector x(d);
    const auto inverse_scale = [&](double t) {
        for (std::size_t i = 0; i < d; ++i) x[i] = from[i] + t * (to[i] - from[i]);
        return 1.0 / sys.local(x).lambda;
    };
    const AdaptiveResult r = adaptive_gauss_legendre(inverse_scale, 0.0, 1.0, abs_tol);

    Vector out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = (to[i] - from[i]) * r.value;
    return out;
}

Vector integrate_inverse_scale(const ConformalSystem& sys, const std::vector<Vector>& polyline,
                               double abs_tol) {
    Vector total(sys.dimension(), 0.0);
    for (std::size_t k = 1; k < polyline.size(); ++k) {
        const Vector leg = integrate_inverse_scale(sys, polyline[k - 1], polyline[k], abs_tol);
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += leg[i];
    }
    return total;
}

Vector build_X(const ConformalSystem& sys, std::span<const double> p) {
    return integrate_inverse_scale(sys, sys.base_point(), p);
}

double jacobian_identity_defect(const ConformalSystem& sys, std::span<const double> p) {
    const LocalGeometry lg = sys.local(p);
    const double lhs = std::pow(lg.lambda, static_cast<double>(sys.dimension()));
    const double rhs = std::sqrt(std::abs(lg.f / lg.metric_det)) * std::abs(lg.jacobian_det);
    return std::abs(lhs - rhs) / lhs;
}

CompositionFactors composition_factors(const ConformalSystem& sys, std::span<const double> p) {
    const LocalGeometry lg = sys.local(p);
    CompositionFactors c;
    c.x_from_X = std::pow(lg.lambda, static_cast<double>(sys.dimension()));
    c.X_from_tilde = std::sqrt(std::abs(lg.metric_det / lg.f)) / squared(lg.jacobian_det);
    c.tilde_from_x = std::abs(lg.jacobian_det);
    c.jacobian_sign = lg.jacobian_det > 0.0 ? 1.0 : -1.0;
    c.defect = std::abs(c.x_from_X * c.X_from_tilde * c.tilde_from_x - 1.0);
    return c;
}

double composition_identity_defect(const ConformalSystem& sys, std::span<const double> p) {
    return composition_factors(sys, p).defect;
}

ExactnessDefect exactness_defect(const ConformalSystem& sys, std::span<const double> q) {
    const Vector straight = build_X(sys, q);

    std::vector<Vector> path{sys.base_point()};
    Vector corner = sys.base_point();
    for (std::size_t axis = 0; axis < sys.dimension(); ++axis) {
        corner[axis] = q[axis];
        path.push_back(corner);
    }
    const Vector legs = integrate_inverse_scale(sys, path);

    ExactnessDefect out;
    out.per_component.resize(straight.size());
    for (std::size_t i = 0; i < straight.size(); ++i) {
        out.per_component[i] = std::abs(straight[i] - legs[i]);
        out.max = std::max(out.max, out.per_component[i]);
    }
    return out;
}

double jacobian_X_defect(const ConformalSystem& sys, std::span<const double> p) {
    const std::size_t d = sys.dimension();
    const double h = 1e-5 * sys.domain().diagonal();
    const double inv_lambda = 1.0 / scale_factor(sys, p);

    double worst = 0.0;
    Vector plus(p.begin(), p.end());
    Vector minus(p.begin(), p.end());
    for (std::size_t alpha = 0; alpha < d; ++alpha) {
        plus[alpha] = p[alpha] + h;
        minus[alpha] = p[alpha] - h;
        if (!sys.domain().contains(plus) || !sys.domain().contains(minus))
            throw PreconditionError("finite-difference stencil around " + point_text(p) +
                                    " leaves the domain");
        const Vector xp = build_X(sys, plus);
        const Vector xm = build_X(sys, minus);
        for (std::size_t mu = 0; mu < d; ++mu) {
            const double column = (xp[mu] - xm[mu]) / (2.0 * h);
            const double expected = mu == alpha ? inv_lambda : 0.0;
            worst = std::max(worst, std::abs(column - expected));
        }
        plus[alpha] = p[alpha];
        minus[alpha] = p[alpha];
    }
    return worst;
}

} // namespace confspace
