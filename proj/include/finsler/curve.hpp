#ifndef FINSLER_CURVE_HPP
#define FINSLER_CURVE_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/vec2.hpp"

namespace finsler {

/// A planar curve sampled on a uniform parameter grid: positions and exact
/// (or consistently computed) velocities at each node. A closed curve stores
/// a duplicated endpoint, so it has sample_count() - 1 distinct samples.
struct SampledCurve {
    std::vector<double> t;
    std::vector<Vec2> points;
    std::vector<Vec2> velocities;
    bool closed = true;

    std::size_t sample_count() const { return t.size(); }
    double dt() const { return t.size() > 1 ? (t.back() - t.front()) / double(t.size() - 1) : 0.0; }
    double period() const { return t.back() - t.front(); }

    /// Validate and wrap externally produced samples.
    ///  - at least 16 samples, else TooCoarseError
    ///  - parameter grid uniform and increasing, else DomainError
    ///  - if closed, first and last positions equal to 1e-10, else NotClosedError
    ///  - every point strictly inside the unit disk, else OutOfDiskError
    ///  - every velocity nonzero, else ZeroVectorError
    static SampledCurve create(std::vector<double> t,
                               std::vector<Vec2> points,
                               std::vector<Vec2> velocities,
                               bool closed = true) {
        const std::size_t n = t.size();
        if (points.size() != n || velocities.size() != n)
            throw DomainError("SampledCurve: array length mismatch");
        if (n < 16) throw TooCoarseError("SampledCurve: need at least 16 samples");
        const double span = t.back() - t.front();
        if (!(span > 0.0)) throw DomainError("SampledCurve: parameter span must be positive");
        const double h = span / static_cast<double>(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs((t[i + 1] - t[i]) - h) > 1e-9 * span)
                throw DomainError("SampledCurve: parameter grid is not uniform");
        }
        if (closed && norm(points.front() - points.back()) > 1e-10)
            throw NotClosedError("SampledCurve: endpoint positions do not match");
        for (std::size_t i = 0; i < n; ++i) {
            if (norm(points[i]) >= 1.0)
                throw OutOfDiskError("SampledCurve: sample leaves the unit disk at index " +
                                     std::to_string(i));
            if (norm(velocities[i]) == 0.0)
                throw ZeroVectorError("SampledCurve: zero velocity at index " + std::to_string(i));
        }
        SampledCurve c;
        c.t = std::move(t);
        c.points = std::move(points);
        c.velocities = std::move(velocities);
        c.closed = closed;
        return c;
    }

    /// Centered circle of radius a on [0, 2*pi], counterclockwise, with
    /// n_intervals intervals (n_intervals + 1 samples).
    static SampledCurve circle(double a, std::size_t n_intervals) {
        if (!(a > 0.0 && a < 1.0))
            throw DomainError("SampledCurve::circle: radius must lie in (0,1)");
        std::vector<double> t(n_intervals + 1);
        std::vector<Vec2> pts(n_intervals + 1), vel(n_intervals + 1);
        const double h = 2.0 * M_PI / static_cast<double>(n_intervals);
        for (std::size_t i = 0; i <= n_intervals; ++i) {
            const double ti = (i == n_intervals) ? 0.0 : static_cast<double>(i) * h; // exact closure
            t[i] = static_cast<double>(i) * h;
            pts[i] = {a * std::cos(ti), a * std::sin(ti)};
            vel[i] = {-a * std::sin(ti), a * std::cos(ti)};
        }
        return create(std::move(t), std::move(pts), std::move(vel), true);
    }

    /// Same curve traversed backwards (orientation flip).
    SampledCurve reversed() const {
        std::vector<Vec2> pts(points.rbegin(), points.rend());
        std::vector<Vec2> vel;
        vel.reserve(velocities.size());
        for (auto it = velocities.rbegin(); it != velocities.rend(); ++it)
            vel.push_back(-1.0 * *it);
        return create(t, std::move(pts), std::move(vel), closed);
    }
};

/// Write the curve as CSV: header `t,x1,x2,dx1,dx2`, one row per sample,
/// %.17g everywhere, LF line endings.
inline void write_curve_csv(const SampledCurve& curve, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("write_curve_csv: cannot open " + path);
    std::fputs("t,x1,x2,dx1,dx2\n", fp);
    for (std::size_t i = 0; i < curve.sample_count(); ++i) {
        std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g\n", curve.t[i], curve.points[i].x,
                     curve.points[i].y, curve.velocities[i].x, curve.velocities[i].y);
    }
    std::fclose(fp);
}

} // namespace finsler

#endif // FINSLER_CURVE_HPP
