#ifndef FINSLER_QUADRATURE_HPP
#define FINSLER_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "finsler/errors.hpp"

namespace finsler {

enum class QuadratureRule {
    composite_simpson,
    gauss_legendre_panels,
};

/// Integration request: which rule, how many panels to start from, and the
/// absolute tolerance at which adaptive refinement stops.
struct QuadratureSpec {
    QuadratureRule rule = QuadratureRule::composite_simpson;
    int panels = 64;
    double abs_tol = 1e-12;

    /// Default for integrating data sampled along a curve.
    static QuadratureSpec curve_default() {
        return {QuadratureRule::composite_simpson, 64, 1e-12};
    }

    /// Default for function-based integrals refined by panel doubling.
    static QuadratureSpec integral_default() {
        return {QuadratureRule::gauss_legendre_panels, 8, 1e-12};
    }

    void validate() const {
        if (panels < 8) throw DomainError("QuadratureSpec: panels must be >= 8");
        if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be > 0");
    }
};

struct GaussNode {
    double x; ///< abscissa on [-1, 1]
    double w; ///< weight
};

/// Gauss–Legendre nodes and weights on [-1, 1], found by Newton iteration on
/// the Legendre polynomial recurrence.
inline std::vector<GaussNode> gauss_legendre_nodes(int n) {
    if (n < 1) throw DomainError("gauss_legendre_nodes: order must be >= 1");
    std::vector<GaussNode> nodes(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2; // roots come in +/- pairs
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th root.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            // p0 = P_n(z); derivative from the standard identity.
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        nodes[static_cast<std::size_t>(i)] = {-z, w};
        nodes[static_cast<std::size_t>(n - 1 - i)] = {z, w};
    }
    return nodes;
}

/// Fixed-panel Gauss–Legendre: `panels` equal subintervals, `order` points each.
template <typename Func>
double gauss_legendre_panels(Func&& f, double a, double b, int panels, int order = 8) {
    if (panels < 1) throw DomainError("gauss_legendre_panels: panels must be >= 1");
    static thread_local std::vector<GaussNode> cache;
    static thread_local int cache_order = 0;
    if (cache_order != order) {
        cache = gauss_legendre_nodes(order);
        cache_order = order;
    }
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double acc = 0.0;
        for (const GaussNode& nd : cache) acc += nd.w * f(mid + 0.5 * h * nd.x);
        total += 0.5 * h * acc;
    }
    return total;
}

/// Composite Simpson with `panels` parabolic segments (2*panels intervals).
template <typename Func>
double composite_simpson(Func&& f, double a, double b, int panels) {
    if (panels < 1) throw DomainError("composite_simpson: panels must be >= 1");
    const int n = 2 * panels;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// Adaptive panel doubling under the requested rule: refine until two
/// successive values differ by less than abs_tol, giving up (ConvergenceError)
/// after 16 doublings.
template <typename Func>
double integrate_adaptive(Func&& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    const auto eval = [&](int panels) {
        return spec.rule == QuadratureRule::gauss_legendre_panels
                   ? gauss_legendre_panels(f, a, b, panels)
                   : composite_simpson(f, a, b, panels);
    };
    int panels = spec.panels;
    double value = eval(panels);
    for (int doubling = 0; doubling < 16; ++doubling) {
        panels *= 2;
        const double refined = eval(panels);
        if (std::abs(refined - value) < spec.abs_tol) return refined;
        value = refined;
    }
    throw ConvergenceError("integrate_adaptive: not converged after 16 doublings");
}

/// Composite-Simpson integration of uniformly spaced samples with spacing dt.
/// An odd interval count is handled with a Simpson 3/8 tail, keeping the rule
/// fourth-order accurate throughout.
inline double integrate_samples(std::span<const double> values, double dt) {
    if (!(dt > 0.0)) throw DomainError("integrate_samples: dt must be > 0");
    const std::size_t n_values = values.size();
    if (n_values < 2) throw TooCoarseError("integrate_samples: need at least 2 samples");
    const std::size_t intervals = n_values - 1;
    if (intervals == 1) return 0.5 * dt * (values[0] + values[1]); // trapezoid fallback
    std::size_t simpson_end = intervals;      // index after the last 1/3-rule interval
    double tail = 0.0;
    if (intervals % 2 != 0) {
        if (intervals < 3) throw TooCoarseError("integrate_samples: need >= 3 intervals for odd count");
        simpson_end = intervals - 3;
        const std::size_t i = simpson_end;
        tail = 3.0 * dt / 8.0 *
               (values[i] + 3.0 * values[i + 1] + 3.0 * values[i + 2] + values[i + 3]);
    }
    double acc = 0.0;
    if (simpson_end >= 2) {
        acc = values[0] + values[simpson_end];
        for (std::size_t i = 1; i < simpson_end; ++i)
            acc += values[i] * ((i % 2 == 1) ? 4.0 : 2.0);
        acc *= dt / 3.0;
    }
    return acc + tail;
}

} // namespace finsler

#endif // FINSLER_QUADRATURE_HPP
