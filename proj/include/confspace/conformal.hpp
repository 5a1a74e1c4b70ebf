#pragma once

// Conformal rescaling of a Lorentzian metric by a local scale factor.
//
// Given a metric g on the x-chart, a second chart x~(x) and a positive
// function f, the scale factor is
//
//     lambda = [ (f / |det g|) * |det dx~/dx|^2 ]^(1 / 2D)
//
// and conversely f = lambda^(2D) |det g| |det dx~/dx|^-2. The constructed
// chart integrates lambda^-1 dx from a base point; the conformal metric is
// Q = lambda^2 g.

#include "confspace/fieldlang.hpp"
#include "confspace/geometry.hpp"
#include "confspace/quadrature.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace confspace {

enum class ScalePreset {
    unit,             // f = 1
    inverse_sqrt_det, // f = |det g|^(-1/2)
    lambda_one,       // f = |det g| |det J~|^(-2), which forces lambda = 1
    custom,           // f given as an expression
};

std::string to_string(ScalePreset preset);
ScalePreset scale_preset_from_string(std::string_view name);

class ScaleChoice {
public:
    static ScaleChoice preset(ScalePreset p);
    static ScaleChoice custom(Expression f);

    ScalePreset kind() const noexcept { return preset_; }
    const std::optional<Expression>& expression() const noexcept { return f_; }

    /// f at p given det g and det J~ there.
    double evaluate(std::span<const double> p, double metric_det, double jacobian_det) const;

private:
    ScaleChoice(ScalePreset p, std::optional<Expression> f) : preset_(p), f_(std::move(f)) {}

    ScalePreset preset_;
    std::optional<Expression> f_;
};

/// Everything the identities need at one point.
struct LocalGeometry {
    Matrix metric;
    double metric_det = 0.0;
    Matrix jacobian; // d x~ / d x
    double jacobian_det = 0.0;
    double f = 0.0;
    double lambda = 0.0;
};

/// The chart triple (x, x~, X) with its scale choice, base point and box.
class ConformalSystem {
public:
    ConformalSystem(MetricField g, CoordinateMap map_tilde, ScaleChoice scale, Vector base_point,
                    BoxDomain domain);

    std::size_t dimension() const noexcept { return g_.dimension(); }
    const MetricField& metric() const noexcept { return g_; }
    const CoordinateMap& map_tilde() const noexcept { return map_; }
    const ScaleChoice& scale() const noexcept { return scale_; }
    const Vector& base_point() const noexcept { return base_; }
    const BoxDomain& domain() const noexcept { return domain_; }

    /// Throws PreconditionError when f <= 0, det g >= 0, det J~ == 0 or the
    /// radicand of lambda is not a positive finite number.
    LocalGeometry local(std::span<const double> p) const;

private:
    MetricField g_;
    CoordinateMap map_;
    ScaleChoice scale_;
    Vector base_;
    BoxDomain domain_;
};

/// lambda = radicand^(1/2D) on the positive real branch.
double scale_factor_from(double f, double metric_det, double jacobian_det, std::size_t dimension);
double scale_factor(const ConformalSystem& sys, std::span<const double> p);

/// f = lambda^(2D) |det g| |det J~|^-2.
double f_from_lambda(double lambda, double metric_det, double jacobian_det, std::size_t dimension);
double f_from_lambda(const MetricField& g, const CoordinateMap& map_tilde, double lambda,
                     std::span<const double> p);
double f_from_lambda(const MetricField& g, const CoordinateMap& map_tilde, const Expression& lambda,
                     std::span<const double> p);

/// Q = lambda^2 g.
Matrix conformal_metric(const ConformalSystem& sys, std::span<const double> p);

inline constexpr double kChartTolerance = 1e-10;

/// Integral of lambda^-1 dx along the straight segment from `from` to `to`.
Vector integrate_inverse_scale(const ConformalSystem& sys, std::span<const double> from,
                               std::span<const double> to, double abs_tol = kChartTolerance);

/// Integral of lambda^-1 dx along a polyline.
Vector integrate_inverse_scale(const ConformalSystem& sys, const std::vector<Vector>& polyline,
                               double abs_tol = kChartTolerance);

/// X(p): the straight-segment integral from the base point.
Vector build_X(const ConformalSystem& sys, std::span<const double> p);

/// | lambda^D - |f/g|^(1/2) |det J~| | / lambda^D.
double jacobian_identity_defect(const ConformalSystem& sys, std::span<const double> p);

struct CompositionFactors {
    double x_from_X = 0.0;     // |det dx/dX| = lambda^D
    double X_from_tilde = 0.0; // |det dX/dx~| = |g/f|^(1/2) |det J~|^-2
    double tilde_from_x = 0.0; // |det dx~/dx|
    double jacobian_sign = 0.0;
    double defect = 0.0;       // |product - 1|
};

CompositionFactors composition_factors(const ConformalSystem& sys, std::span<const double> p);
double composition_identity_defect(const ConformalSystem& sys, std::span<const double> p);

struct ExactnessDefect {
    Vector per_component; // |X_straight - X_axis_path|
    double max = 0.0;
};

/// Compares X(q) along the straight segment with the axis-by-axis path
/// x0 -> (q^0, x0^1, ...) -> ... -> q. Zero means path independence.
ExactnessDefect exactness_defect(const ConformalSystem& sys, std::span<const double> q);

/// Max-norm distance between the central-difference Jacobian of X at p
/// (step 1e-5 * box diagonal) and lambda(p)^-1 * identity. Requires p and
/// its stencil inside the box.
double jacobian_X_defect(const ConformalSystem& sys, std::span<const double> p);

} // namespace confspace
