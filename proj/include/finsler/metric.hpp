#ifndef FINSLER_METRIC_HPP
#define FINSLER_METRIC_HPP

#include <cmath>
#include <string>

#include "finsler/errors.hpp"
#include "finsler/vec2.hpp"

namespace finsler {

/// Which metric lives on the unit disk: the curved Berwald model under study,
/// or the flat Euclidean control used to sanity-check every pipeline.
enum class MetricKind {
    berwald,
    euclidean,
};

struct MetricModel {
    MetricKind kind = MetricKind::berwald;
    double domain_radius = 1.0;

    static MetricModel berwald() { return {MetricKind::berwald, 1.0}; }
    static MetricModel euclidean() { return {MetricKind::euclidean, 1.0}; }
};

/// Value and partial derivatives of the angular profile phi(r, s) at a point.
/// s is the cosine-weighted radial alignment <x, y>/|y| clamped to [-r, r].
struct PhiJet {
    double phi;
    double phi_r;
    double phi_s;
    double phi_ss;
};

namespace detail {

inline void check_phi_domain(const MetricModel& model, double r, double s) {
    if (!(r >= 0.0)) throw DomainError("phi: radius must be nonnegative");
    if (model.kind == MetricKind::berwald && r >= model.domain_radius)
        throw DomainError("phi: point outside the open unit disk (r = " + std::to_string(r) + ")");
    if (std::abs(s) > r + 1e-12)
        throw DomainError("phi: alignment |s| exceeds radius r");
}

} // namespace detail

/// Angular profile of the metric. For the Berwald model on the unit disk
///   phi(r, s) = (sqrt(1 - r^2 + s^2) + s)^2 / ((1 - r^2)^2 sqrt(1 - r^2 + s^2)),
/// and the Euclidean control is phi == 1.
inline double phi(const MetricModel& model, double r, double s) {
    detail::check_phi_domain(model, r, s);
    if (model.kind == MetricKind::euclidean) return 1.0;
    const double q = 1.0 - r * r;
    const double rho = std::sqrt(q + s * s);
    const double u = rho + s;
    return u * u / (q * q * rho);
}

/// phi together with its first radial and first/second alignment derivatives,
/// all in closed form (no finite differencing).
inline PhiJet phi_jet(const MetricModel& model, double r, double s) {
    detail::check_phi_domain(model, r, s);
    if (model.kind == MetricKind::euclidean) return {1.0, 0.0, 0.0, 0.0};
    const double q = 1.0 - r * r;
    const double rho = std::sqrt(q + s * s);
    const double rho_r = -r / rho;
    const double rho_s = s / rho;
    const double rho_ss = q / (rho * rho * rho);
    const double u = rho + s;
    const double u_s = rho_s + 1.0;
    const double q2 = q * q;
    const double value = u * u / (q2 * rho);
    // d/ds of u^2/rho, then the product rule once more for the second derivative.
    const double m = 2.0 * u * u_s * rho - u * u * rho_s;
    const double phi_s = m / (q2 * rho * rho);
    const double m_s = 2.0 * u_s * u_s * rho + 2.0 * u * rho_ss * rho - u * u * rho_ss;
    const double phi_ss = m_s / (q2 * rho * rho) - 2.0 * rho_s * m / (q2 * rho * rho * rho);
    // d/dr hits both the 1/q^2 prefactor and rho.
    const double phi_r = 2.0 * u * rho_r / (q2 * rho)
                         - value * (-4.0 * r * rho + q * rho_r) / (q * rho);
    return {value, phi_r, phi_s, phi_ss};
}

/// Norm of tangent vector y at base point x: |y| * phi(|x|, <x,y>/|y|).
inline double finsler_norm(const MetricModel& model, const Vec2& x, const Vec2& y) {
    const double speed = norm(y);
    if (speed == 0.0) throw ZeroVectorError("finsler_norm: zero tangent vector");
    const double r = norm(x);
    double s = dot(x, y) / speed;
    // Guard against |<x,y>|/|y| creeping past |x| by rounding.
    if (s > r) s = r;
    if (s < -r) s = -r;
    return speed * phi(model, r, s);
}

/// Angular density entering the solid-angle area element, assembled from the
/// profile jet: phi * ((phi - s phi_s) + (r^2 - s^2) phi_ss).
inline double t_integrand(const MetricModel& model, double r, double s) {
    const PhiJet j = phi_jet(model, r, s);
    return j.phi * ((j.phi - s * j.phi_s) + (r * r - s * s) * j.phi_ss);
}

/// Same density for the Berwald model after algebraic reduction; with
/// rho = sqrt(1 - r^2 + s^2) it collapses to (3 - 2 rho^2) / (rho^6 (rho - s)^2).
inline double t_integrand_reduced(double r, double s) {
    detail::check_phi_domain(MetricModel::berwald(), r, s);
    const double rho = std::sqrt(1.0 - r * r + s * s);
    const double d = rho - s;
    return (3.0 - 2.0 * rho * rho) / (std::pow(rho, 6) * d * d);
}

} // namespace finsler

#endif // FINSLER_METRIC_HPP
