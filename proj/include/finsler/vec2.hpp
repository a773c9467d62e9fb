#ifndef FINSLER_VEC2_HPP
#define FINSLER_VEC2_HPP

#include <cmath>

namespace finsler {

/// Plain 2D vector used for positions and velocities in the disk.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Symmetric 2x2 matrix (a b; b c) with a closed-form spectral decomposition.
struct SymMat2 {
    double a = 0.0, b = 0.0, c = 0.0;

    Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, b * v.x + c * v.y}; }

    /// Eigenvalues in ascending order.
    void eigenvalues(double& lo, double& hi) const {
        const double mean = 0.5 * (a + c);
        const double disc = std::hypot(0.5 * (a - c), b);
        lo = mean - disc;
        hi = mean + disc;
    }

    /// Unit eigenvector for the given eigenvalue.
    Vec2 eigenvector(double lambda) const {
        // Pick the better-conditioned row of (M - lambda I).
        Vec2 v;
        if (std::abs(a - lambda) + std::abs(b) >= std::abs(b) + std::abs(c - lambda))
            v = {-b, a - lambda};
        else
            v = {-(c - lambda), b};
        const double n = norm(v);
        if (n == 0.0) return {1.0, 0.0}; // multiple eigenvalue: any direction
        return {v.x / n, v.y / n};
    }
};

} // namespace finsler

#endif // FINSLER_VEC2_HPP
