#pragma once

#include <cmath>

namespace confspace {

/// Forward-mode dual number: a value together with its directional
/// derivative along a fixed direction. Arithmetic applies the product and
/// chain rules, so evaluating an expression on DualValue inputs yields the
/// exact derivative up to rounding.
struct DualValue {
    double value = 0.0;
    double derivative = 0.0;

    constexpr DualValue() = default;
    constexpr DualValue(double v) : value(v) {}
    constexpr DualValue(double v, double d) : value(v), derivative(d) {}

    constexpr bool operator==(const DualValue&) const = default;
};

constexpr DualValue operator+(DualValue a, DualValue b) {
    return {a.value + b.value, a.derivative + b.derivative};
}

constexpr DualValue operator-(DualValue a, DualValue b) {
    return {a.value - b.value, a.derivative - b.derivative};
}

constexpr DualValue operator-(DualValue a) { return {-a.value, -a.derivative}; }

constexpr DualValue operator*(DualValue a, DualValue b) {
    return {a.value * b.value, a.derivative * b.value + a.value * b.derivative};
}

constexpr DualValue operator/(DualValue a, DualValue b) {
    return {a.value / b.value,
            (a.derivative * b.value - a.value * b.derivative) / (b.value * b.value)};
}

inline DualValue sin(DualValue a) {
    return {std::sin(a.value), a.derivative * std::cos(a.value)};
}

inline DualValue cos(DualValue a) {
    return {std::cos(a.value), -a.derivative * std::sin(a.value)};
}

inline DualValue exp(DualValue a) {
    const double e = std::exp(a.value);
    return {e, a.derivative * e};
}

inline DualValue log(DualValue a) { return {std::log(a.value), a.derivative / a.value}; }

inline DualValue sqrt(DualValue a) {
    const double s = std::sqrt(a.value);
    return {s, a.derivative / (2.0 * s)};
}

inline DualValue tanh(DualValue a) {
    const double t = std::tanh(a.value);
    return {t, a.derivative * (1.0 - t * t)};
}

// Subgradient 0 at the origin.
inline DualValue abs(DualValue a) {
    const double s = a.value > 0.0 ? 1.0 : (a.value < 0.0 ? -1.0 : 0.0);
    return {std::abs(a.value), s * a.derivative};
}

} // namespace confspace
