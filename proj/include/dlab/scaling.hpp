#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dlab {

/// A point expressed simultaneously in physical and self-similar coordinates:
/// xi = x / sqrt(1+t), tau = log(1+t).
struct SpaceTimePoint {
    double x = 0.0;
    double t = 0.0;
    double xi = 0.0;
    double tau = 0.0;
};

inline SpaceTimePoint to_scaling(double x, double t) {
    if (t < 0.0) throw std::invalid_argument("to_scaling: t must be >= 0");
    SpaceTimePoint p;
    p.x = x;
    p.t = t;
    p.xi = x / std::sqrt(1.0 + t);
    p.tau = std::log1p(t);
    return p;
}

inline SpaceTimePoint from_scaling(double xi, double tau) {
    if (tau < 0.0) throw std::invalid_argument("from_scaling: tau must be >= 0");
    SpaceTimePoint p;
    p.xi = xi;
    p.tau = tau;
    p.t = std::expm1(tau);
    p.x = xi * std::exp(0.5 * tau);
    return p;
}

/// Which component of the system a field holds; fixes the self-similar
/// amplitude exponent (1/2 for the conserved field, 1 for the damped one).
enum class FieldKind { W, V };

inline double scaling_amplitude(FieldKind kind, double t) {
    const double p = (kind == FieldKind::W) ? 0.5 : 1.0;
    return std::pow(1.0 + t, -p);
}

/// physical(x, t) = (1+t)^{-p} * scaled(x / sqrt(1+t)), sampled pointwise.
/// `xs` are physical positions; `scaled` is evaluated at the matching xi.
template <typename F>
std::vector<double> field_to_physical(const F& scaled, FieldKind kind,
                                      const std::vector<double>& xs, double t) {
    if (t < 0.0) throw std::invalid_argument("field_to_physical: t must be >= 0");
    const double amp = scaling_amplitude(kind, t);
    const double root = std::sqrt(1.0 + t);
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = amp * scaled(xs[i] / root);
    return out;
}

/// Inverse of field_to_physical: recovers the scaling-variable profile at
/// positions `xis` from a physical-space field.
template <typename F>
std::vector<double> field_to_scaling(const F& physical, FieldKind kind,
                                     const std::vector<double>& xis, double t) {
    if (t < 0.0) throw std::invalid_argument("field_to_scaling: t must be >= 0");
    const double amp = scaling_amplitude(kind, t);
    const double root = std::sqrt(1.0 + t);
    std::vector<double> out(xis.size());
    for (std::size_t i = 0; i < xis.size(); ++i) out[i] = physical(xis[i] * root) / amp;
    return out;
}

}  // namespace dlab
