#ifndef FINSLER_OPTIMIZER_HPP
#define FINSLER_OPTIMIZER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "finsler/area.hpp"
#include "finsler/curve.hpp"
#include "finsler/errors.hpp"

namespace finsler {

/// Closed star-shaped curve in polar form,
///   r(t) = a0 + sum_k (cos_coef[k-1] cos kt + sin_coef[k-1] sin kt),
/// the optimizer's decision variable. Closedness and smoothness are built in;
/// the centered circle is exactly representable (all harmonics zero).
struct FourierCurve {
    double a0 = 0.5;
    std::vector<double> cos_coef; // harmonics 1..K
    std::vector<double> sin_coef;

    std::size_t harmonics() const { return cos_coef.size(); }

    double radius(double t) const {
        double r = a0;
        for (std::size_t k = 0; k < cos_coef.size(); ++k) {
            const double kt = static_cast<double>(k + 1) * t;
            r += cos_coef[k] * std::cos(kt) + sin_coef[k] * std::sin(kt);
        }
        return r;
    }

    double radius_dot(double t) const {
        double rd = 0.0;
        for (std::size_t k = 0; k < cos_coef.size(); ++k) {
            const double kk = static_cast<double>(k + 1);
            rd += kk * (-cos_coef[k] * std::sin(kk * t) + sin_coef[k] * std::cos(kk * t));
        }
        return rd;
    }

    void scale(double rho) {
        a0 *= rho;
        for (double& v : cos_coef) v *= rho;
        for (double& v : sin_coef) v *= rho;
    }

    /// Radius bounds sampled at 8K+64 points, the resolution the invariant is
    /// defined at.
    std::pair<double, double> radius_range() const {
        const std::size_t n = 8 * harmonics() + 64;
        double lo = radius(0.0), hi = lo;
        for (std::size_t i = 1; i < n; ++i) {
            const double r = radius(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n));
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        return {lo, hi};
    }

    /// Radius must stay in (0.01, 0.95) at the sampled resolution.
    void validate() const {
        if (cos_coef.size() != sin_coef.size())
            throw DomainError("FourierCurve: cos/sin coefficient count mismatch");
        const auto [lo, hi] = radius_range();
        if (!(lo > 0.01))
            throw OutOfDiskError("FourierCurve: min radius " + std::to_string(lo) + " <= 0.01");
        if (!(hi < 0.95))
            throw OutOfDiskError("FourierCurve: max radius " + std::to_string(hi) + " >= 0.95");
    }
};

/// Sample the polar curve on n uniform intervals of [0, 2*pi] with exact
/// analytic velocities
///   dx1 = rd cos t - r sin t,  dx2 = rd sin t + r cos t.
inline SampledCurve synthesize(const FourierCurve& fc, std::size_t n) {
    if (n < 64) throw TooCoarseError("synthesize: need at least 64 intervals");
    fc.validate();
    std::vector<double> t(n + 1);
    std::vector<Vec2> pts(n + 1), vel(n + 1);
    const double h = 2.0 * M_PI / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) {
        const double ti = (i == n) ? 0.0 : static_cast<double>(i) * h; // exact closure
        t[i] = static_cast<double>(i) * h;
        const double r = fc.radius(ti), rd = fc.radius_dot(ti);
        const double ct = std::cos(ti), st = std::sin(ti);
        pts[i] = {r * ct, r * st};
        vel[i] = {rd * ct - r * st, rd * st + r * ct};
    }
    return SampledCurve::create(std::move(t), std::move(pts), std::move(vel), true);
}

/// Rescale all coefficients by one factor rho (found by bisection) so that
/// the synthesized curve has the requested length to relative 1e-10. Length
/// is strictly increasing in rho while the curve stays inside the radius
/// bounds, so the bracket is reliable when it exists at all.
inline FourierCurve fix_length(const FourierCurve& fc, double l_target,
                               std::size_t n_samples = 512) {
    if (!(l_target > 0.0)) throw DomainError("fix_length: target length must be positive");
    fc.validate();
    const auto length_at = [&](double rho) {
        FourierCurve scaled = fc;
        scaled.scale(rho);
        return curve_length(synthesize(scaled, n_samples));
    };
    const double l1 = length_at(1.0);
    if (std::abs(l1 - l_target) <= 1e-12 * l_target) return fc; // already there: rho = 1 exactly
    const auto [r_lo, r_hi] = fc.radius_range();
    const double rho_max = 0.95 / r_hi * (1.0 - 1e-9);
    const double rho_min = 0.01 / r_lo * (1.0 + 1e-9);
    double lo, hi;
    if (l1 < l_target) {
        lo = 1.0;
        hi = rho_max;
        if (!(hi > lo) || length_at(hi) < l_target)
            throw UnreachableLengthError("fix_length: target exceeds the longest admissible rescale");
    } else {
        lo = rho_min;
        hi = 1.0;
        if (!(hi > lo) || length_at(lo) > l_target)
            throw UnreachableLengthError("fix_length: target below the shortest admissible rescale");
    }
    double rho = 1.0;
    for (int it = 0; it < 200; ++it) {
        rho = 0.5 * (lo + hi);
        const double l = length_at(rho);
        if (std::abs(l - l_target) <= 1e-11 * l_target) break;
        (l < l_target ? lo : hi) = rho;
        if (hi - lo < 1e-15 * rho) break;
    }
    FourierCurve out = fc;
    out.scale(rho);
    return out;
}

struct OptimizeOptions {
    std::size_t n_samples = 512; ///< sampling density for all functionals
    double fd_step = 1e-6;       ///< central-difference step per coefficient
    int max_iterations = 10000;
    double improvement_tol = 1e-12; ///< stop when an accepted step gains less
    double gradient_tol = 1e-7;     ///< stop when the projected gradient is this small
    double initial_step = 0.1;
};

struct OptimizerReport {
    FourierCurve final_curve;
    std::vector<double> area_history;      ///< area after each accepted step (index 0 = start)
    std::vector<double> violation_history; ///< |length - target| after restoration
    int iterations = 0;                    ///< accepted steps
    bool converged = false;
    double projected_gradient_norm = 0.0;  ///< at the final iterate
};

/// Maximize enclosed area over polar Fourier curves of fixed length by
/// reduced-gradient ascent: central-difference area and length gradients in
/// coefficient space, combined so the step direction is first-order neutral
/// to the restoration rescale (ascent for the restored area), backtracking
/// step accepted only on strict improvement, and exact constraint restoration
/// via fix_length after every step.
inline OptimizerReport optimize_isoperimetric(double l_target, const FourierCurve& init,
                                              std::size_t n_harmonics,
                                              const OptimizeOptions& opts = {}) {
    if (n_harmonics > 16) throw DomainError("optimize_isoperimetric: at most 16 harmonics");
    FourierCurve cur = init;
    cur.cos_coef.resize(n_harmonics, 0.0);
    cur.sin_coef.resize(n_harmonics, 0.0);
    cur = fix_length(cur, l_target, opts.n_samples);

    const auto pack = [&](const FourierCurve& fc, std::vector<double>& v) {
        v.clear();
        v.push_back(fc.a0);
        v.insert(v.end(), fc.cos_coef.begin(), fc.cos_coef.end());
        v.insert(v.end(), fc.sin_coef.begin(), fc.sin_coef.end());
    };
    const auto unpack = [&](const std::vector<double>& v) {
        FourierCurve fc;
        fc.a0 = v[0];
        fc.cos_coef.assign(v.begin() + 1, v.begin() + 1 + static_cast<std::ptrdiff_t>(n_harmonics));
        fc.sin_coef.assign(v.begin() + 1 + static_cast<std::ptrdiff_t>(n_harmonics), v.end());
        return fc;
    };
    const auto area_of = [&](const FourierCurve& fc) {
        return curve_area_ht(synthesize(fc, opts.n_samples));
    };
    const auto length_of = [&](const FourierCurve& fc) {
        return curve_length(synthesize(fc, opts.n_samples));
    };

    OptimizerReport rep;
    double area = area_of(cur);
    rep.area_history.push_back(area);
    rep.violation_history.push_back(std::abs(length_of(cur) - l_target));

    std::vector<double> coef, grad_a, grad_l, grad, trial_coef;
    double step = opts.initial_step;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        pack(cur, coef);
        // Central-difference gradients of the raw area and raw length per
        // coefficient.
        grad_a.assign(coef.size(), 0.0);
        grad_l.assign(coef.size(), 0.0);
        for (std::size_t j = 0; j < coef.size(); ++j) {
            trial_coef = coef;
            trial_coef[j] = coef[j] + opts.fd_step;
            const FourierCurve up = unpack(trial_coef);
            const double ap = area_of(up), lp = length_of(up);
            trial_coef[j] = coef[j] - opts.fd_step;
            const FourierCurve dn = unpack(trial_coef);
            const double am = area_of(dn), lm = length_of(dn);
            grad_a[j] = (ap - am) / (2.0 * opts.fd_step);
            grad_l[j] = (lp - lm) / (2.0 * opts.fd_step);
        }
        // Restoration rescales along the coefficient ray, so the first-order
        // area change of a restored step in direction d is
        //   <grad_a, d> - mu <grad_l, d>,  mu = <grad_a, coef> / <grad_l, coef>.
        // The reduced gradient d = grad_a - mu grad_l therefore has restored
        // directional derivative |d|^2 >= 0, vanishing exactly at constrained
        // critical points.
        double a_theta = 0.0, l_theta = 0.0;
        for (std::size_t j = 0; j < coef.size(); ++j) {
            a_theta += grad_a[j] * coef[j];
            l_theta += grad_l[j] * coef[j]; // > 0: length grows along the ray
        }
        const double mu = a_theta / l_theta;
        grad.assign(coef.size(), 0.0);
        double pg_norm2 = 0.0;
        for (std::size_t j = 0; j < coef.size(); ++j) {
            grad[j] = grad_a[j] - mu * grad_l[j];
            pg_norm2 += grad[j] * grad[j];
        }
        rep.projected_gradient_norm = std::sqrt(pg_norm2);
        if (rep.projected_gradient_norm < opts.gradient_tol) {
            rep.converged = true;
            break;
        }
        // Backtracking ascent: accept the first strictly improving restored step.
        bool accepted = false;
        double improvement = 0.0;
        double last_trial_area = area;
        while (step > 1e-14) {
            trial_coef = coef;
            for (std::size_t j = 0; j < coef.size(); ++j) trial_coef[j] += step * grad[j];
            FourierCurve trial = unpack(trial_coef);
            const auto [lo, hi] = trial.radius_range();
            if (!(lo > 0.01 && hi < 0.95)) {
                step *= 0.5;
                continue;
            }
            trial = fix_length(trial, l_target, opts.n_samples);
            const double trial_area = area_of(trial);
            last_trial_area = trial_area;
            if (trial_area > area) {
                improvement = trial_area - area;
                cur = trial;
                area = trial_area;
                rep.area_history.push_back(area);
                rep.violation_history.push_back(std::abs(length_of(cur) - l_target));
                rep.iterations = iter + 1;
                accepted = true;
                step = std::min(step * 1.3, 10.0);
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // A vanishing step must not lose measurable area; if it does, the
            // step control or the restoration is broken.
            if (last_trial_area < area - 1e-10)
                throw NonMonotoneError("optimize_isoperimetric: vanishing step still loses area");
            rep.converged = true;
            break;
        }
        if (improvement < opts.improvement_tol) {
            rep.converged = true;
            break;
        }
    }
    rep.final_curve = cur;
    return rep;
}

/// One row of the circle-perturbation table: radial mode k at amplitude eps,
/// length-restored, compared against the centered circle of the same length.
struct PerturbationRow {
    int mode;
    double eps;
    double delta_area;          ///< A(perturbed) - A(circle)
    double delta_area_over_eps2; ///< second-order rate (0 when eps == 0)
};

/// Perturb the circle radius by eps*cos(k t) for each requested mode and
/// amplitude, restore the length, and tabulate the area change. Modes k >= 2
/// lose area; the k = 1 rows are reported for inspection only (they track a
/// near-translation of the circle, where centering itself is what is tested).
inline std::vector<PerturbationRow> perturbation_study(double a, const std::vector<int>& modes,
                                                       const std::vector<double>& eps_list,
                                                       std::size_t n_samples = 512) {
    if (!(a > 0.0 && a < 0.95)) throw DomainError("perturbation_study: need 0 < a < 0.95");
    FourierCurve circle;
    circle.a0 = a;
    const double l_target = curve_length(synthesize(circle, n_samples));
    const double area_circle = curve_area_ht(synthesize(circle, n_samples));
    std::vector<PerturbationRow> table;
    table.reserve(modes.size() * eps_list.size());
    for (int k : modes) {
        if (k < 1) throw DomainError("perturbation_study: modes must be >= 1");
        for (double eps : eps_list) {
            FourierCurve fc;
            fc.a0 = a;
            fc.cos_coef.assign(static_cast<std::size_t>(k), 0.0);
            fc.sin_coef.assign(static_cast<std::size_t>(k), 0.0);
            fc.cos_coef[static_cast<std::size_t>(k - 1)] = eps;
            const FourierCurve restored = fix_length(fc, l_target, n_samples);
            const double da = curve_area_ht(synthesize(restored, n_samples)) - area_circle;
            table.push_back({k, eps, da, eps != 0.0 ? da / (eps * eps) : 0.0});
        }
    }
    return table;
}

/// OptimizerReport history as CSV: `iter,area,violation`.
inline void write_report_csv(const OptimizerReport& rep, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("write_report_csv: cannot open " + path);
    std::fputs("iter,area,violation\n", fp);
    for (std::size_t i = 0; i < rep.area_history.size(); ++i)
        std::fprintf(fp, "%zu,%.17g,%.17g\n", i, rep.area_history[i], rep.violation_history[i]);
    std::fclose(fp);
}

/// FourierCurve as CSV: `k,cos_coef,sin_coef`, with row k=0 holding a0.
inline void write_fourier_csv(const FourierCurve& fc, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("write_fourier_csv: cannot open " + path);
    std::fputs("k,cos_coef,sin_coef\n", fp);
    std::fprintf(fp, "0,%.17g,0\n", fc.a0);
    for (std::size_t k = 0; k < fc.cos_coef.size(); ++k)
        std::fprintf(fp, "%zu,%.17g,%.17g\n", k + 1, fc.cos_coef[k], fc.sin_coef[k]);
    std::fclose(fp);
}

} // namespace finsler

#endif // FINSLER_OPTIMIZER_HPP
