#ifndef FINSLER_VARIATIONAL_HPP
#define FINSLER_VARIATIONAL_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "finsler/area.hpp"
#include "finsler/curve.hpp"
#include "finsler/errors.hpp"
#include "finsler/quadrature.hpp"
#include "finsler/vec2.hpp"

namespace finsler {

/// Lagrange multiplier coupling the length constraint into the area objective.
struct Multiplier {
    double lambda = 0.0;
};

/// Coefficients of the scalar Jacobi equation along a centered critical
/// circle of radius a, plus the multiplier that makes the circle critical.
/// Signs: b < 0 (restoring), c < 0 (forcing), U > 0 (constraint density).
struct JacobiData {
    double a;
    double b;
    double c;
    double U;
    double lambda0;
};

/// Multiplier that makes the centered circle of radius a critical for the
/// constrained problem: -a (1 + a^2 - a^4/8) / (1 + a^2 - 2 a^4), negative on (0,1).
inline double lambda0(double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("lambda0: need 0 < a < 1");
    const double a2 = a * a;
    return -a * (1.0 + a2 - 0.125 * a2 * a2) / (1.0 + a2 - 2.0 * a2 * a2);
}

/// Constrained integrand h = f + lambda * g (area density plus weighted
/// length density).
inline double lagrangian_h(double x1, double x2, double dx1, double dx2, Multiplier lam) {
    return green_integrand_f(x1, x2, dx1, dx2) +
           lam.lambda * length_integrand_g(x1, x2, dx1, dx2);
}

/// First partials of an integrand with respect to position and velocity.
struct Gradients {
    Vec2 position;
    Vec2 velocity;
};

/// Closed-form partials of the length density g. With q = 1 - |x|^2,
/// b = <x, v>, al = sqrt(q |v|^2 + b^2) and u = al + b:
///   g       = u^2 / (q^2 al)
///   dal/dv_i = (q v_i + b x_i)/al,  dal/dx_i = (-x_i |v|^2 + b v_i)/al
/// and the quotient rule gives the rest.
inline Gradients length_gradients(double x1, double x2, double dx1, double dx2) {
    const double s2 = x1 * x1 + x2 * x2;
    if (!(s2 < 1.0)) throw DomainError("length_gradients: point outside the open disk");
    const double v2 = dx1 * dx1 + dx2 * dx2;
    if (v2 == 0.0) throw ZeroVectorError("length_gradients: zero velocity");
    const double q = 1.0 - s2;
    const double b = x1 * dx1 + x2 * dx2;
    const double al = std::sqrt(q * v2 + b * b);
    const double u = al + b;
    const double q2 = q * q, q3 = q2 * q;
    const double al_v1 = (q * dx1 + b * x1) / al;
    const double al_v2 = (q * dx2 + b * x2) / al;
    const double al_x1 = (-x1 * v2 + b * dx1) / al;
    const double al_x2 = (-x2 * v2 + b * dx2) / al;
    Gradients out;
    out.velocity = {2.0 * u * (al_v1 + x1) / (q2 * al) - u * u * al_v1 / (q2 * al * al),
                    2.0 * u * (al_v2 + x2) / (q2 * al) - u * u * al_v2 / (q2 * al * al)};
    out.position = {2.0 * u * (al_x1 + dx1) / (q2 * al) + 4.0 * u * u * x1 / (q3 * al) -
                        u * u * al_x1 / (q2 * al * al),
                    2.0 * u * (al_x2 + dx2) / (q2 * al) + 4.0 * u * u * x2 / (q3 * al) -
                        u * u * al_x2 / (q2 * al * al)};
    return out;
}

/// Closed-form partials of the area density f. With s2 = |x|^2,
/// k = x2 v1 - x1 v2 and powers of (1 - s2):
///   f = (s2 - 4) k / (8 (1-s2)^{5/2}),
/// linear in velocity, so the velocity partials are velocity-free.
inline Gradients area_density_gradients(double x1, double x2, double dx1, double dx2) {
    const double s2 = x1 * x1 + x2 * x2;
    if (!(s2 < 1.0)) throw DomainError("area_density_gradients: point outside the open disk");
    const double k = x2 * dx1 - x1 * dx2;
    const double p5 = 8.0 * std::pow(1.0 - s2, 2.5);
    const double p7 = 8.0 * std::pow(1.0 - s2, 3.5);
    Gradients out;
    out.velocity = {(s2 - 4.0) * x2 / p5, -(s2 - 4.0) * x1 / p5};
    out.position = {(2.0 * x1 * k - (s2 - 4.0) * dx2) / p5 + 5.0 * x1 * (s2 - 4.0) * k / p7,
                    (2.0 * x2 * k + (s2 - 4.0) * dx1) / p5 + 5.0 * x2 * (s2 - 4.0) * k / p7};
    return out;
}

/// Partials of h = f + lambda g.
inline Gradients lagrangian_gradients(double x1, double x2, double dx1, double dx2,
                                      Multiplier lam) {
    const Gradients gf = area_density_gradients(x1, x2, dx1, dx2);
    const Gradients gg = length_gradients(x1, x2, dx1, dx2);
    return {gf.position + lam.lambda * gg.position, gf.velocity + lam.lambda * gg.velocity};
}

namespace detail {

/// Sixth-order central first derivative of periodic samples (m distinct
/// values, spacing h). The high order keeps the differencing error of the
/// momentum series below the extremality gates even for circles near the
/// disk boundary, where the momenta are large.
inline std::vector<double> periodic_derivative6(const std::vector<double>& f, double h) {
    const std::size_t m = f.size();
    std::vector<double> df(m);
    const auto at = [&](std::ptrdiff_t i) {
        const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
        return f[static_cast<std::size_t>(((i % mm) + mm) % mm)];
    };
    for (std::size_t i = 0; i < m; ++i) {
        const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i);
        df[i] = (45.0 * (at(j + 1) - at(j - 1)) - 9.0 * (at(j + 2) - at(j - 2)) +
                 (at(j + 3) - at(j - 3))) /
                (60.0 * h);
    }
    return df;
}

inline double det3(const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

} // namespace detail

/// Per-sample residuals of both extremality equations
///   d/dt (dh/dv_i) - dh/dx_i = 0
/// along a closed sampled curve. The momentum samples dh/dv_i are
/// differentiated in t by sixth-order central differences on the periodic
/// grid (this is where the curve's second derivatives enter).
struct ElResidual {
    std::vector<double> r1;
    std::vector<double> r2;

    double max_abs() const {
        double m = 0.0;
        for (double v : r1) m = std::max(m, std::abs(v));
        for (double v : r2) m = std::max(m, std::abs(v));
        return m;
    }
};

inline ElResidual el_residual(const SampledCurve& c, Multiplier lam) {
    const std::size_t n = c.sample_count();
    if (n < 64) throw TooCoarseError("el_residual: need at least 64 samples");
    if (!c.closed) throw NotClosedError("el_residual: periodic differencing needs a closed curve");
    const std::size_t m = n - 1; // distinct samples
    std::vector<double> p1(m), p2(m), hx1(m), hx2(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Gradients g = lagrangian_gradients(c.points[i].x, c.points[i].y,
                                                 c.velocities[i].x, c.velocities[i].y, lam);
        p1[i] = g.velocity.x;
        p2[i] = g.velocity.y;
        hx1[i] = g.position.x;
        hx2[i] = g.position.y;
    }
    const std::vector<double> dp1 = detail::periodic_derivative6(p1, c.dt());
    const std::vector<double> dp2 = detail::periodic_derivative6(p2, c.dt());
    ElResidual out;
    out.r1.resize(n);
    out.r2.resize(n);
    for (std::size_t i = 0; i < m; ++i) {
        out.r1[i] = hx1[i] - dp1[i];
        out.r2[i] = hx2[i] - dp2[i];
    }
    out.r1[m] = out.r1[0];
    out.r2[m] = out.r2[0];
    return out;
}

/// Conserved quantity along polar extremals r(t):
///   C = r^2 (4 - r^2) / (8 (1-r^2)^{5/2}) + lambda r^2 (rd^2 + r^2) / (rd^2 + r^2 - r^4)^{3/2}.
inline double first_integral(double r, double rdot, Multiplier lam) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("first_integral: need 0 < r < 1");
    const double r2 = r * r;
    const double w = rdot * rdot + r2 - r2 * r2;
    return r2 * (4.0 - r2) / (8.0 * std::pow(1.0 - r2, 2.5)) +
           lam.lambda * r2 * (rdot * rdot + r2) / std::pow(w, 1.5);
}

/// Radial acceleration of the polar extremal ODE, obtained by implicit
/// differentiation of the conserved quantity: rdd = -C_r / C_w, where C_r is
/// the radial partial and C_w = (dC/d rdot)/rdot (the rdot factor cancels, so
/// the expression stays finite at turning points). Needs lambda != 0.
inline double radial_acceleration(double r, double rdot, Multiplier lam) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radial_acceleration: need 0 < r < 1");
    if (lam.lambda == 0.0)
        throw DomainError("radial_acceleration: zero multiplier gives a degenerate equation");
    const double r2 = r * r;
    const double rd2 = rdot * rdot;
    const double w = rd2 + r2 - r2 * r2;
    const double w32 = std::pow(w, 1.5);
    const double w52 = w32 * w;
    // d/dr of the area part is r * sigma(r); d/dr of the constraint part by chain rule.
    const double area_part = r * sigma_ht_closed(r);
    const double constraint_part = (2.0 * r * rd2 + 4.0 * r * r2) / w32 -
                                   3.0 * r2 * (rd2 + r2) * (r - 2.0 * r * r2) / w52;
    const double c_r = area_part + lam.lambda * constraint_part;
    const double c_w = -lam.lambda * r2 * (rd2 + r2 + 2.0 * r2 * r2) / w52;
    return -c_r / c_w;
}

/// Integrate the polar extremal ODE from (r0, rdot0) by classical RK4 and
/// report the largest excursion of the conserved quantity from its initial
/// value — a direct conservation check of the whole polar reduction.
inline double first_integral_drift(double r0, double rdot0, Multiplier lam,
                                   double t_end = 2.0 * M_PI, int steps = 20000) {
    if (steps < 16) throw TooCoarseError("first_integral_drift: need at least 16 steps");
    const double c0 = first_integral(r0, rdot0, lam);
    const double h = t_end / steps;
    double r = r0, rd = rdot0, drift = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double k1r = rd;
        const double k1v = radial_acceleration(r, rd, lam);
        const double k2r = rd + 0.5 * h * k1v;
        const double k2v = radial_acceleration(r + 0.5 * h * k1r, rd + 0.5 * h * k1v, lam);
        const double k3r = rd + 0.5 * h * k2v;
        const double k3v = radial_acceleration(r + 0.5 * h * k2r, rd + 0.5 * h * k2v, lam);
        const double k4r = rd + h * k3v;
        const double k4v = radial_acceleration(r + h * k3r, rd + h * k3v, lam);
        r += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        rd += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!(r > 0.0 && r < 1.0))
            throw DomainError("first_integral_drift: trajectory left the open disk");
        drift = std::max(drift, std::abs(first_integral(r, rd, lam) - c0));
    }
    return drift;
}

/// Closed-form extremality defect of the length density alone along the
/// centered circle of radius a:
///   (P1, P2) = (1 + 2 a^2) / (1 - a^2)^{5/2} * (cos t, sin t).
/// Never zero — the length constraint is normal at every circle point.
inline Vec2 normality(double a, double t) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("normality: need 0 < a < 1");
    const double amp = (1.0 + 2.0 * a * a) / std::pow(1.0 - a * a, 2.5);
    return {amp * std::cos(t), amp * std::sin(t)};
}

/// Same defect computed without any closed-form derivatives: position and
/// velocity partials of g by central differences (step 1e-6), the time
/// derivative of the momentum by fourth-order differences along the circle
/// (step 1e-2). Independent cross-check of normality().
inline Vec2 normality_fd(double a, double t) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("normality_fd: need 0 < a < 1");
    const double hx = 1e-6, ht = 1e-2;
    const auto g = [](double x1, double x2, double v1, double v2) {
        return length_integrand_g(x1, x2, v1, v2);
    };
    const auto momentum = [&](double tt, int comp) {
        const double x1 = a * std::cos(tt), x2 = a * std::sin(tt);
        const double v1 = -a * std::sin(tt), v2 = a * std::cos(tt);
        return comp == 0 ? (g(x1, x2, v1 + hx, v2) - g(x1, x2, v1 - hx, v2)) / (2.0 * hx)
                         : (g(x1, x2, v1, v2 + hx) - g(x1, x2, v1, v2 - hx)) / (2.0 * hx);
    };
    const auto ddt = [&](int comp) {
        return (-momentum(t + 2.0 * ht, comp) + 8.0 * momentum(t + ht, comp) -
                8.0 * momentum(t - ht, comp) + momentum(t - 2.0 * ht, comp)) /
               (12.0 * ht);
    };
    const double x1 = a * std::cos(t), x2 = a * std::sin(t);
    const double v1 = -a * std::sin(t), v2 = a * std::cos(t);
    const double gx1 = (g(x1 + hx, x2, v1, v2) - g(x1 - hx, x2, v1, v2)) / (2.0 * hx);
    const double gx2 = (g(x1, x2 + hx, v1, v2) - g(x1, x2 - hx, v1, v2)) / (2.0 * hx);
    return {gx1 - ddt(0), gx2 - ddt(1)};
}

/// Excess function by its definition: h at the comparison direction minus the
/// tangent-plane prediction from the reference direction,
///   E = h(x, p) - h(x, v) - <p - v, dh/dv (x, v)>.
inline double weierstrass_e(const Vec2& x, const Vec2& xdot, const Vec2& p, Multiplier lam) {
    if (norm(xdot) == 0.0 || norm(p) == 0.0)
        throw ZeroVectorError("weierstrass_e: directions must be nonzero");
    const double h_p = lagrangian_h(x.x, x.y, p.x, p.y, lam);
    const double h_v = lagrangian_h(x.x, x.y, xdot.x, xdot.y, lam);
    const Gradients gr = lagrangian_gradients(x.x, x.y, xdot.x, xdot.y, lam);
    return h_p - h_v - dot(p - xdot, gr.velocity);
}

/// Excess function after cancellation of every area term (the area density is
/// linear in velocity, so it drops out): E = lambda * (same construction on g
/// alone). Must agree with weierstrass_e to roundoff — a standing dual-path
/// test.
inline double weierstrass_e_reduced(const Vec2& x, const Vec2& xdot, const Vec2& p,
                                    Multiplier lam) {
    if (norm(xdot) == 0.0 || norm(p) == 0.0)
        throw ZeroVectorError("weierstrass_e_reduced: directions must be nonzero");
    const double g_p = length_integrand_g(x.x, x.y, p.x, p.y);
    const double g_v = length_integrand_g(x.x, x.y, xdot.x, xdot.y);
    const Gradients gr = length_gradients(x.x, x.y, xdot.x, xdot.y);
    return lam.lambda * (g_p - g_v - dot(p - xdot, gr.velocity));
}

/// Excess-function scan over the centered circle of radius a: at n_points
/// circle samples, evaluate E against unit comparison directions at n_dirs
/// angles, excluding directions within 1e-3 radians of the forward tangent
/// ray (where E is identically zero).
struct EScanResult {
    std::vector<double> t;         ///< circle parameters scanned
    std::vector<double> max_e_at_t; ///< largest E over admitted directions at each t
    double max_e;                   ///< largest E over the whole scan
    double min_abs_e;               ///< smallest |E| over admitted directions
};

inline EScanResult e_scan(double a, Multiplier lam, int n_points, int n_dirs) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("e_scan: need 0 < a < 1");
    if (n_points < 1 || n_dirs < 4) throw DomainError("e_scan: scan grid too small");
    constexpr double kTangentTol = 1e-3; // radians
    EScanResult out;
    out.t.reserve(static_cast<std::size_t>(n_points));
    out.max_e_at_t.reserve(static_cast<std::size_t>(n_points));
    out.max_e = -std::numeric_limits<double>::infinity();
    out.min_abs_e = std::numeric_limits<double>::infinity();
    const double two_pi = 2.0 * M_PI;
    for (int i = 0; i < n_points; ++i) {
        const double t = two_pi * i / n_points;
        const Vec2 x{a * std::cos(t), a * std::sin(t)};
        const Vec2 v{-a * std::sin(t), a * std::cos(t)};
        const double tangent_angle = t + M_PI / 2.0;
        double max_here = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < n_dirs; ++j) {
            const double phi = two_pi * j / n_dirs;
            double delta = std::fmod(std::abs(phi - tangent_angle), two_pi);
            if (delta > M_PI) delta = two_pi - delta;
            if (delta < kTangentTol) continue; // forward tangent ray: E == 0 there
            const Vec2 p{std::cos(phi), std::sin(phi)};
            const double e = weierstrass_e(x, v, p, lam);
            max_here = std::max(max_here, e);
            out.min_abs_e = std::min(out.min_abs_e, std::abs(e));
        }
        out.t.push_back(t);
        out.max_e_at_t.push_back(max_here);
        out.max_e = std::max(out.max_e, max_here);
    }
    return out;
}

/// Velocity Hessian of h at (x, v) by central second differences (step 1e-4).
/// Along a critical circle this matrix is the second-variation kernel and is
/// rank one: a negative eigenvalue on the radial direction, zero on the
/// tangent.
inline SymMat2 velocity_hessian_fd(const Vec2& x, const Vec2& xdot, Multiplier lam) {
    const double h = 1e-4;
    const auto f = [&](double v1, double v2) { return lagrangian_h(x.x, x.y, v1, v2, lam); };
    const double f0 = f(xdot.x, xdot.y);
    const double f11 = (f(xdot.x + h, xdot.y) - 2.0 * f0 + f(xdot.x - h, xdot.y)) / (h * h);
    const double f22 = (f(xdot.x, xdot.y + h) - 2.0 * f0 + f(xdot.x, xdot.y - h)) / (h * h);
    const double f12 = (f(xdot.x + h, xdot.y + h) - f(xdot.x + h, xdot.y - h) -
                        f(xdot.x - h, xdot.y + h) + f(xdot.x - h, xdot.y - h)) /
                       (4.0 * h * h);
    return {f11, f12, f22};
}

/// Second-variation quadratic form at circle parameter t applied to y:
///   lambda0(a) (2a^2+1) / (a (1-a^2)^{5/2}) * (cos t y1 + sin t y2)^2,
/// i.e. a nonpositive multiple of the squared radial component. Each call
/// cross-checks the closed form against the finite-difference velocity
/// Hessian and refuses to return silently wrong values.
inline double second_variation_form(double a, double t, const Vec2& y) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("second_variation_form: need 0 < a < 1");
    const double u_density = (2.0 * a * a + 1.0) / (a * std::pow(1.0 - a * a, 2.5));
    const double radial = std::cos(t) * y.x + std::sin(t) * y.y;
    const double closed = lambda0(a) * u_density * radial * radial;
    const Vec2 x{a * std::cos(t), a * std::sin(t)};
    const Vec2 v{-a * std::sin(t), a * std::cos(t)};
    const SymMat2 hess = velocity_hessian_fd(x, v, Multiplier{lambda0(a)});
    const Vec2 hy = hess.apply(y);
    const double fd = dot(y, hy);
    if (std::abs(fd - closed) > 1e-5 * (1.0 + dot(y, y)))
        throw Error("second_variation_form: closed form and FD Hessian disagree");
    return closed;
}

/// Coefficients of the scalar Jacobi equation along the critical circle of
/// radius a, with their sign structure enforced.
inline JacobiData jacobi_coefficients(double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("jacobi_coefficients: need 0 < a < 1");
    const double a2 = a * a;
    const double a4 = a2 * a2, a6 = a4 * a2, a8 = a4 * a4;
    const double den = a4 - 8.0 * a2 - 8.0; // negative on (0,1)
    JacobiData jd;
    jd.a = a;
    jd.b = (2.0 * a8 + 13.0 * a6 + 51.0 * a4 + 16.0 * a2 + 8.0) /
           ((2.0 * a2 + 1.0) * (1.0 - a2) * den);
    jd.c = 8.0 * a * (2.0 * a2 + 1.0) * (1.0 - a2) / den;
    jd.U = (2.0 * a2 + 1.0) / (a * std::pow(1.0 - a2, 2.5));
    jd.lambda0 = lambda0(a);
    if (!(jd.b < 0.0 && jd.c < 0.0 && jd.U > 0.0))
        throw Error("jacobi_coefficients: sign structure violated");
    return jd;
}

/// Conjugate-point determinant in closed form. With w = sqrt(-b) and
/// x = w (t1 - t0) / 2:
///   D = 4 c U / (-b)^{3/2} * sinh x * (sinh x - x cosh x).
/// The prefactor is negative and the bracket is negative for x > 0, so D > 0
/// for every t1 > t0 — no conjugate point ever forms. The factor signs are
/// asserted, not assumed.
inline double conjugate_determinant(double a, double t0, double t1) {
    if (t1 <= t0) throw OrderError("conjugate_determinant: need t1 > t0");
    const JacobiData jd = jacobi_coefficients(a);
    const double w = std::sqrt(-jd.b);
    const double x = 0.5 * w * (t1 - t0);
    const double pref = 4.0 * jd.c * jd.U / ((-jd.b) * w);
    const double sh = std::sinh(x);
    const double bracket = sh - x * std::cosh(x);
    if (!(pref < 0.0)) throw Error("conjugate_determinant: prefactor sign violated");
    if (!(sh > 0.0)) throw Error("conjugate_determinant: sinh sign violated");
    if (!(bracket < 0.0)) throw Error("conjugate_determinant: bracket sign violated");
    return pref * sh * bracket;
}

/// The same determinant assembled the long way: solution basis
/// th1 = sinh(w t), th2 = cosh(w t), th3 = -c/b, boundary rows at t0 and t1,
/// and a quadrature row of the weighted integrals Int U th_k dt. Agreement
/// with the closed form validates the whole reduction.
inline double conjugate_determinant_numeric(double a, double t0, double t1,
                                            const QuadratureSpec& quad = QuadratureSpec::integral_default()) {
    if (t1 <= t0) throw OrderError("conjugate_determinant_numeric: need t1 > t0");
    const JacobiData jd = jacobi_coefficients(a);
    const double w = std::sqrt(-jd.b);
    const double th3 = -jd.c / jd.b;
    const auto th1 = [w](double t) { return std::sinh(w * t); };
    const auto th2 = [w](double t) { return std::cosh(w * t); };
    const double i1 = integrate_adaptive([&](double t) { return jd.U * th1(t); }, t0, t1, quad);
    const double i2 = integrate_adaptive([&](double t) { return jd.U * th2(t); }, t0, t1, quad);
    const double i3 = integrate_adaptive([&](double /*t*/) { return jd.U * th3; }, t0, t1, quad);
    const std::array<std::array<double, 3>, 3> m = {{{th1(t0), th2(t0), th3},
                                                     {th1(t1), th2(t1), th3},
                                                     {i1, i2, i3}}};
    return detail::det3(m);
}

/// Evaluate the conjugate-point determinant over offsets dt in (0, span] and
/// collect every interval where it changes sign. Expected empty: the closed
/// form is positive throughout.
struct ConjugateScanResult {
    std::vector<double> dt;
    std::vector<double> d;
    std::vector<std::pair<double, double>> sign_changes;
};

inline ConjugateScanResult conjugate_scan(double a, double span, double step) {
    if (!(span > 0.0) || !(step > 0.0)) throw DomainError("conjugate_scan: need positive span and step");
    if (span > 4.0 * M_PI + 1e-12) throw DomainError("conjugate_scan: span must not exceed 4*pi");
    ConjugateScanResult out;
    for (double dt = step; dt <= span + 1e-12; dt += step) {
        out.dt.push_back(dt);
        out.d.push_back(conjugate_determinant(a, 0.0, dt));
    }
    for (std::size_t i = 0; i + 1 < out.d.size(); ++i) {
        if ((out.d[i] > 0.0 && out.d[i + 1] < 0.0) || (out.d[i] < 0.0 && out.d[i + 1] > 0.0))
            out.sign_changes.emplace_back(out.dt[i], out.dt[i + 1]);
    }
    return out;
}

} // namespace finsler

#endif // FINSLER_VARIATIONAL_HPP
