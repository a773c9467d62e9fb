#ifndef FINSLER_AREA_HPP
#define FINSLER_AREA_HPP

#include <cmath>
#include <vector>

#include "finsler/curve.hpp"
#include "finsler/errors.hpp"
#include "finsler/quadrature.hpp"

namespace finsler {

/// Radial density of the solid-angle area measure, closed form:
/// (1 + r^2 - r^4/8) / (1 - r^2)^{7/2}.
inline double sigma_ht_closed(double r) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("sigma_ht_closed: need 0 <= r < 1");
    const double r2 = r * r;
    return (1.0 + r2 - 0.125 * r2 * r2) / std::pow(1.0 - r2, 3.5);
}

/// The same density straight from its defining angular integral
///   (1/pi) * Int_0^pi (1 + 2 r^2 sin^2 t) /
///            ((1 - r^2 sin^2 t)^3 (sqrt(1 - r^2 sin^2 t) - r cos t)^2) dt,
/// evaluated by adaptive quadrature. Matching sigma_ht_closed is the central
/// consistency check of the whole area pipeline.
inline double sigma_ht_quadrature(double r, const QuadratureSpec& quad = QuadratureSpec::integral_default()) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("sigma_ht_quadrature: need 0 <= r < 1");
    const double r2 = r * r;
    const auto integrand = [r, r2](double t) {
        const double st = std::sin(t);
        const double w = 1.0 - r2 * st * st;
        const double d = std::sqrt(w) - r * std::cos(t);
        return (1.0 + 2.0 * r2 * st * st) / (w * w * w * d * d);
    };
    return integrate_adaptive(integrand, 0.0, M_PI, quad) / M_PI;
}

/// Signed area density along a curve; integrating it over one period of a
/// counterclockwise simple closed curve gives the enclosed area:
///   (x1^2 + x2^2 - 4) / (8 (1 - x1^2 - x2^2)^{5/2}) * (x2 dx1 - x1 dx2).
inline double green_integrand_f(double x1, double x2, double dx1, double dx2) {
    const double s2 = x1 * x1 + x2 * x2;
    if (!(s2 < 1.0)) throw DomainError("green_integrand_f: point outside the open disk");
    const double cross = x2 * dx1 - x1 * dx2;
    return (s2 - 4.0) * cross / (8.0 * std::pow(1.0 - s2, 2.5));
}

/// Length density along a curve. With q = 1 - x1^2 - x2^2,
/// b = x1 dx1 + x2 dx2 and al = sqrt(q (dx1^2 + dx2^2) + b^2):
///   g = (al + b)^2 / (q^2 al).
/// Positively homogeneous of degree 1 in (dx1, dx2); agrees with finsler_norm.
inline double length_integrand_g(double x1, double x2, double dx1, double dx2) {
    const double s2 = x1 * x1 + x2 * x2;
    if (!(s2 < 1.0)) throw DomainError("length_integrand_g: point outside the open disk");
    const double v2 = dx1 * dx1 + dx2 * dx2;
    if (v2 == 0.0) throw ZeroVectorError("length_integrand_g: zero velocity");
    const double q = 1.0 - s2;
    const double b = x1 * dx1 + x2 * dx2;
    const double al = std::sqrt(q * v2 + b * b);
    const double u = al + b;
    return u * u / (q * q * al);
}

namespace detail {

/// Vector field whose circulation reproduces the enclosed solid-angle area:
/// the density above is p * dx1 + q * dx2 with these components.
inline double green_p(double x1, double x2) {
    const double s2 = x1 * x1 + x2 * x2;
    if (!(s2 < 1.0)) throw DomainError("green_p: point outside the open disk");
    return x2 * (s2 - 4.0) / (8.0 * std::pow(1.0 - s2, 2.5));
}

inline double green_q(double x1, double x2) {
    const double s2 = x1 * x1 + x2 * x2;
    if (!(s2 < 1.0)) throw DomainError("green_q: point outside the open disk");
    return -x1 * (s2 - 4.0) / (8.0 * std::pow(1.0 - s2, 2.5));
}

} // namespace detail

/// Curve length: integral of length_integrand_g over the curve's own samples
/// (composite Simpson on the uniform grid).
inline double curve_length(const SampledCurve& c, const QuadratureSpec& quad = QuadratureSpec::curve_default()) {
    quad.validate();
    std::vector<double> vals(c.sample_count());
    for (std::size_t i = 0; i < c.sample_count(); ++i)
        vals[i] = length_integrand_g(c.points[i].x, c.points[i].y, c.velocities[i].x,
                                     c.velocities[i].y);
    return integrate_samples(vals, c.dt());
}

/// Enclosed solid-angle area of a closed curve via the circulation integral;
/// positive for counterclockwise traversal.
inline double curve_area_ht(const SampledCurve& c, const QuadratureSpec& quad = QuadratureSpec::curve_default()) {
    quad.validate();
    if (!c.closed) throw NotClosedError("curve_area_ht: curve is not closed");
    std::vector<double> vals(c.sample_count());
    for (std::size_t i = 0; i < c.sample_count(); ++i)
        vals[i] = green_integrand_f(c.points[i].x, c.points[i].y, c.velocities[i].x,
                                    c.velocities[i].y);
    return integrate_samples(vals, c.dt());
}

/// Residual |dq/dx1 - dp/dx2 - sigma(r)| of the circulation field against the
/// radial density, with the curl taken by central finite differences
/// (step 1e-5). Small residuals certify that the line-integral area and the
/// solid-angle area measure agree.
inline double green_consistency(double x1, double x2) {
    const double s2 = x1 * x1 + x2 * x2;
    if (!(s2 < 1.0)) throw DomainError("green_consistency: point outside the open disk");
    const double h = 1e-5;
    const double dq_dx1 = (detail::green_q(x1 + h, x2) - detail::green_q(x1 - h, x2)) / (2.0 * h);
    const double dp_dx2 = (detail::green_p(x1, x2 + h) - detail::green_p(x1, x2 - h)) / (2.0 * h);
    return std::abs(dq_dx1 - dp_dx2 - sigma_ht_closed(std::sqrt(s2)));
}

/// Closed-form length of the centered circle of radius a: 2 pi a / (1-a^2)^{3/2}.
inline double circle_length_closed(double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("circle_length_closed: need 0 < a < 1");
    return 2.0 * M_PI * a / std::pow(1.0 - a * a, 1.5);
}

/// Closed-form solid-angle area of the centered circle of radius a:
/// pi a^2 (4 - a^2) / (4 (1-a^2)^{5/2}).
inline double circle_area_closed(double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("circle_area_closed: need 0 < a < 1");
    const double a2 = a * a;
    return M_PI * a2 * (4.0 - a2) / (4.0 * std::pow(1.0 - a2, 2.5));
}

} // namespace finsler

#endif // FINSLER_AREA_HPP
