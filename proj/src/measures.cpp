#include "confspace/measures.hpp"

#include <algorithm>
#include <cmath>

namespace confspace {

double riemann_volume(const MetricField& g, const BoxDomain& domain, const QuadratureRule& rule) {
    return integrate(
        [&](std::span<const double> x) {
            const double d = det(g.evaluate(x));
            if (!(d < 0.0)) throw PreconditionError("det g >= 0");
            return std::sqrt(std::abs(d));
        },
        domain, rule);
}

double conformal_volume(const ConformalSystem& sys, const QuadratureRule& rule) {
    return integrate(
        [&](std::span<const double> x) {
            const LocalGeometry lg = sys.local(x);
            return std::sqrt(std::abs(lg.f * lg.metric_det));
        },
        sys.domain(), rule);
}

double conformal_volume_via_metric(const ConformalSystem& sys, const QuadratureRule& rule) {
    const double d = static_cast<double>(sys.dimension());
    return integrate(
        [&](std::span<const double> x) {
            const LocalGeometry lg = sys.local(x);
            const Matrix q = (lg.lambda * lg.lambda) * lg.metric;
            return std::sqrt(lg.f) * std::sqrt(std::abs(det(q))) / std::pow(lg.lambda, d);
        },
        sys.domain(), rule);
}

double unit_scale_volume(const ConformalSystem& sys, const QuadratureRule& rule) {
    return integrate(
        [&](std::span<const double> x) {
            const LocalGeometry lg = sys.local(x);
            return std::abs(lg.metric_det) / std::abs(lg.jacobian_det);
        },
        sys.domain(), rule);
}

MeasureConditionReport measure_condition_check(const ConformalSystem& sys, const QuadratureRule& rule,
                                               double condition_tol, double measure_tol) {
    if (sys.scale().kind() != ScalePreset::lambda_one)
        throw PreconditionError("measure condition check requires the lambda_one preset");

    MeasureConditionReport r;
    const TensorGrid grid = make_grid(sys.domain(), rule);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const LocalGeometry lg = sys.local(grid.node(i));
        const double jac = std::abs(lg.jacobian_det);
        const double g = std::abs(lg.metric_det);
        r.sqrt_condition_defect = std::max(r.sqrt_condition_defect, std::abs(jac - std::sqrt(g)));
        r.det_condition_defect = std::max(r.det_condition_defect, std::abs(jac - g));
    }
    r.sqrt_condition_held = r.sqrt_condition_defect <= condition_tol;
    r.det_condition_held = r.det_condition_defect <= condition_tol;

    r.conformal = conformal_volume(sys, rule);
    r.riemann = riemann_volume(sys.metric(), sys.domain(), rule);
    r.box = sys.domain().volume();
    r.matches_riemann = std::abs(r.conformal - r.riemann) <= measure_tol * std::abs(r.riemann);
    r.matches_box = std::abs(r.conformal - r.box) <= measure_tol * r.box;
    return r;
}

} // namespace confspace
