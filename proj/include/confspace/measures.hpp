#pragma once

#include "confspace/conformal.hpp"
#include "confspace/quadrature.hpp"

namespace confspace {

/// Integral of |det g|^(1/2) over the box.
double riemann_volume(const MetricField& g, const BoxDomain& domain, const QuadratureRule& rule);

/// Integral of |f det g|^(1/2) over the system's box: the rescaled measure
/// written back in the x-chart.
double conformal_volume(const ConformalSystem& sys, const QuadratureRule& rule);

/// The same measure assembled from its parts: sqrt(f) |det Q|^(1/2) times
/// the volume factor lambda^-D of dX = dx / lambda. Agrees with
/// conformal_volume only if Q = lambda^2 g and det Q = lambda^(2D) det g.
double conformal_volume_via_metric(const ConformalSystem& sys, const QuadratureRule& rule);

/// Integral of |det g| |det J~|^-1, the measure reached when lambda = 1.
double unit_scale_volume(const ConformalSystem& sys, const QuadratureRule& rule);

struct MeasureConditionReport {
    // Pointwise max of | |det J~| - |det g|^(1/2) | and | |det J~| - |det g| |
    // over the quadrature nodes.
    double sqrt_condition_defect = 0.0;
    double det_condition_defect = 0.0;
    bool sqrt_condition_held = false;
    bool det_condition_held = false;

    double conformal = 0.0; // conformal_volume
    double riemann = 0.0;   // riemann_volume
    double box = 0.0;       // bare coordinate volume
    bool matches_riemann = false;
    bool matches_box = false;
};

/// For the lambda_one preset: which of |det J~| = |g|^(1/2) and
/// |det J~| = |g| hold, and whether the corresponding measure equalities
/// (conformal = riemann, conformal = box volume) hold at `measure_tol`
/// relative accuracy.
MeasureConditionReport measure_condition_check(const ConformalSystem& sys, const QuadratureRule& rule,
                                               double condition_tol = 1e-12, double measure_tol = 1e-10);

} // namespace confspace
