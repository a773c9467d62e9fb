#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <finsler/rng.hpp>
#include <finsler/variational.hpp>

#include "support/fd.hpp"
#include "support/frozen.hpp"

using namespace finsler;
using testsupport::Fraction;

TEST_CASE("multiplier matches frozen value and exact rational arithmetic") {
    CHECK(lambda0(0.5) == Catch::Approx(frozen::lambda0_05).epsilon(1e-16));
    const Fraction exact = testsupport::lambda0_exact(Fraction(1, 2));
    CHECK(exact == Fraction(-53, 96));
    CHECK(std::abs(lambda0(0.5) - exact.to_double()) < 1e-16);
    CHECK(lambda0(0.5) < 0.0);
    for (int i = 1; i <= 19; ++i) CHECK(lambda0(0.05 * i) < 0.0);
    CHECK_THROWS_AS(lambda0(0.0), DomainError);
    CHECK_THROWS_AS(lambda0(1.0), DomainError);
    CHECK_THROWS_AS(lambda0(-0.3), DomainError);
}

TEST_CASE("constrained integrand matches the frozen circle value") {
    const Multiplier lam{lambda0(0.5)};
    // Point on the circle of radius 1/2 at angle 0, unit-parameter velocity.
    CHECK(lagrangian_h(0.5, 0.0, 0.0, 0.5, lam) ==
          Catch::Approx(frozen::h_c0_05).epsilon(1e-14));
}

TEST_CASE("density gradients agree with finite differences of the densities") {
    SeededRng rng(11);
    const double h = 1e-5;
    for (int n = 0; n < 50; ++n) {
        double x1, x2;
        do {
            x1 = rng.uniform(-0.8, 0.8);
            x2 = rng.uniform(-0.8, 0.8);
        } while (x1 * x1 + x2 * x2 >= 0.64);
        const double ang = rng.uniform(0.0, 2.0 * M_PI);
        const double speed = rng.uniform(0.3, 1.5);
        const double v1 = speed * std::cos(ang), v2 = speed * std::sin(ang);

        const Gradients lg = length_gradients(x1, x2, v1, v2);
        const Gradients ag = area_density_gradients(x1, x2, v1, v2);
        const auto checks = {
            std::pair<double, double>{lg.position.x,
                                      testsupport::fd4_first(
                                          [&](double u) { return length_integrand_g(u, x2, v1, v2); },
                                          x1, h)},
            {lg.position.y,
             testsupport::fd4_first([&](double u) { return length_integrand_g(x1, u, v1, v2); }, x2,
                                    h)},
            {lg.velocity.x,
             testsupport::fd4_first([&](double u) { return length_integrand_g(x1, x2, u, v2); }, v1,
                                    h)},
            {lg.velocity.y,
             testsupport::fd4_first([&](double u) { return length_integrand_g(x1, x2, v1, u); }, v2,
                                    h)},
            {ag.position.x,
             testsupport::fd4_first([&](double u) { return green_integrand_f(u, x2, v1, v2); }, x1,
                                    h)},
            {ag.position.y,
             testsupport::fd4_first([&](double u) { return green_integrand_f(x1, u, v1, v2); }, x2,
                                    h)},
            {ag.velocity.x,
             testsupport::fd4_first([&](double u) { return green_integrand_f(x1, x2, u, v2); }, v1,
                                    h)},
            {ag.velocity.y,
             testsupport::fd4_first([&](double u) { return green_integrand_f(x1, x2, v1, u); }, v2,
                                    h)},
        };
        for (const auto& [closed, fd] : checks)
            CHECK(closed == Catch::Approx(fd).margin(1e-7 * (1.0 + std::abs(closed))));
    }
}

TEST_CASE("extremality residual vanishes on the critical circle only") {
    const double a = 0.5;
    const Multiplier lam{lambda0(a)};
    const SampledCurve circle = SampledCurve::circle(a, 512);

    const double on_circle = el_residual(circle, lam).max_abs();
    CHECK(on_circle < 1e-7);

    // Wrong multiplier: same circle, residual jumps by many orders.
    const Multiplier wrong{lambda0(a) * 1.1};
    CHECK(el_residual(circle, wrong).max_abs() > 1e-2);

    // Non-circular control: an ellipse is not critical for this functional.
    const std::size_t n = 512;
    std::vector<double> t(n + 1);
    std::vector<Vec2> pts(n + 1), vel(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double ti = (i == n) ? 0.0 : 2.0 * M_PI * double(i) / double(n);
        t[i] = 2.0 * M_PI * double(i) / double(n);
        pts[i] = {0.5 * std::cos(ti), 0.35 * std::sin(ti)};
        vel[i] = {-0.5 * std::sin(ti), 0.35 * std::cos(ti)};
    }
    const SampledCurve ellipse = SampledCurve::create(t, pts, vel, true);
    CHECK(el_residual(ellipse, lam).max_abs() > 1e-2);
}

TEST_CASE("extremality residual needs a fine closed grid") {
    CHECK_THROWS_AS(el_residual(SampledCurve::circle(0.5, 32), Multiplier{lambda0(0.5)}),
                    TooCoarseError);
    // Open curve: periodic differencing is meaningless.
    const std::size_t n = 129;
    std::vector<double> t(n);
    std::vector<Vec2> pts(n), vel(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = 2.0 * M_PI * double(i) / double(n - 1);
        const double r = 0.3 + 0.01 * t[i];
        pts[i] = {r * std::cos(t[i]), r * std::sin(t[i])};
        vel[i] = {0.01 * std::cos(t[i]) - r * std::sin(t[i]),
                  0.01 * std::sin(t[i]) + r * std::cos(t[i])};
    }
    const SampledCurve open_curve = SampledCurve::create(t, pts, vel, false);
    CHECK_THROWS_AS(el_residual(open_curve, Multiplier{lambda0(0.5)}), NotClosedError);
}

TEST_CASE("conserved quantity matches the constrained integrand on circles") {
    const Multiplier lam{lambda0(0.5)};
    CHECK(first_integral(0.5, 0.0, lam) == Catch::Approx(frozen::h_c0_05).epsilon(1e-14));
    CHECK_THROWS_AS(first_integral(0.0, 0.1, lam), DomainError);
    CHECK_THROWS_AS(first_integral(1.0, 0.1, lam), DomainError);
}

TEST_CASE("critical circles are equilibria of the polar reduction") {
    for (double a : {0.3, 0.5, 0.7}) {
        CHECK(std::abs(radial_acceleration(a, 0.0, Multiplier{lambda0(a)})) < 1e-12);
    }
    CHECK_THROWS_AS(radial_acceleration(0.5, 0.0, Multiplier{0.0}), DomainError);
}

TEST_CASE("conserved quantity stays constant along shooting solutions") {
    CHECK(first_integral_drift(0.5, 0.1, Multiplier{-0.5}) < 1e-6);
    CHECK(first_integral_drift(0.4, -0.05, Multiplier{lambda0(0.4)}) < 1e-6);
    CHECK_THROWS_AS(first_integral_drift(0.5, 0.1, Multiplier{-0.5}, 2.0 * M_PI, 8),
                    TooCoarseError);
}

TEST_CASE("length-constraint defect never vanishes on circles") {
    CHECK(normality(0.5, 0.0).x == Catch::Approx(frozen::p_amp_05).epsilon(1e-15));
    CHECK(normality(0.5, 0.0).y == Catch::Approx(0.0).margin(1e-300));
    for (double a : {0.1, 0.5, 0.9}) {
        for (int i = 0; i < 16; ++i) {
            const double t = 2.0 * M_PI * i / 16.0;
            CHECK(norm(normality(a, t)) > 0.5);
        }
    }
    CHECK_THROWS_AS(normality(1.0, 0.0), DomainError);
}

TEST_CASE("defect closed form matches a derivative-free evaluation") {
    for (double a : {0.3, 0.5, 0.7}) {
        for (int i = 0; i < 8; ++i) {
            const double t = 2.0 * M_PI * i / 8.0 + 0.1;
            const Vec2 closed = normality(a, t);
            const Vec2 fd = normality_fd(a, t);
            CHECK(norm(closed - fd) < 1e-6);
        }
    }
}

TEST_CASE("excess function vanishes exactly along the reference ray") {
    const Vec2 x{0.3, -0.2};
    const Vec2 v{0.8, 0.5};
    const Multiplier lam{-0.6};
    CHECK(weierstrass_e(x, v, v, lam) == 0.0);
    // Positive homogeneity: any positive multiple of v is on the tangent ray.
    CHECK(std::abs(weierstrass_e(x, v, {2.0 * v.x, 2.0 * v.y}, lam)) < 1e-14);
    CHECK(std::abs(weierstrass_e(x, v, {0.25 * v.x, 0.25 * v.y}, lam)) < 1e-14);
    CHECK_THROWS_AS(weierstrass_e(x, v, {0.0, 0.0}, lam), ZeroVectorError);
    CHECK_THROWS_AS(weierstrass_e(x, {0.0, 0.0}, v, lam), ZeroVectorError);
}

TEST_CASE("excess function via definition equals its reduced form") {
    SeededRng rng(23);
    for (int n = 0; n < 500; ++n) {
        double x1, x2;
        do {
            x1 = rng.uniform(-0.85, 0.85);
            x2 = rng.uniform(-0.85, 0.85);
        } while (x1 * x1 + x2 * x2 >= 0.7225);
        const double av = rng.uniform(0.0, 2.0 * M_PI);
        const double ap = rng.uniform(0.0, 2.0 * M_PI);
        const Vec2 x{x1, x2};
        const Vec2 v{rng.uniform(0.2, 2.0) * std::cos(av), rng.uniform(0.2, 2.0) * std::sin(av)};
        const Vec2 p{rng.uniform(0.2, 2.0) * std::cos(ap), rng.uniform(0.2, 2.0) * std::sin(ap)};
        const Multiplier lam{rng.uniform(-2.0, 2.0)};
        const double ed = weierstrass_e(x, v, p, lam);
        const double er = weierstrass_e_reduced(x, v, p, lam);
        CHECK(std::abs(ed - er) < 1e-10 * (1.0 + std::abs(ed)));
    }
}

TEST_CASE("excess function is negative off the tangent ray on critical circles") {
    const double a = 0.5;
    const Multiplier lam{lambda0(a)};
    const Vec2 x{a, 0.0};
    const Vec2 v{0.0, a}; // forward tangent at t = 0
    // Sweep comparison directions well away from the forward tangent ray.
    for (int j = 1; j < 16; ++j) {
        const double ang = M_PI / 2.0 + 2.0 * M_PI * j / 16.0;
        const Vec2 p{std::cos(ang), std::sin(ang)};
        CHECK(weierstrass_e(x, v, p, lam) < 0.0);
    }
}

TEST_CASE("excess scan stays negative and validates its grid") {
    const EScanResult res = e_scan(0.5, Multiplier{lambda0(0.5)}, 32, 64);
    REQUIRE(res.t.size() == 32);
    REQUIRE(res.max_e_at_t.size() == 32);
    CHECK(res.max_e < 0.0);
    CHECK(res.min_abs_e > 0.0);
    for (double e : res.max_e_at_t) CHECK(e < 0.0);
    CHECK_THROWS_AS(e_scan(0.5, Multiplier{-0.5}, 32, 0), DomainError);
    CHECK_THROWS_AS(e_scan(0.5, Multiplier{-0.5}, 0, 64), DomainError);
    CHECK_THROWS_AS(e_scan(1.2, Multiplier{-0.5}, 32, 64), DomainError);
}

TEST_CASE("velocity hessian is rank one along critical circles") {
    const double a = 0.5;
    const Multiplier lam{lambda0(a)};
    const double amp = lam.lambda * (2.0 * a * a + 1.0) / (a * std::pow(1.0 - a * a, 2.5));
    for (int i = 0; i < 8; ++i) {
        const double t = 2.0 * M_PI * i / 8.0;
        const double ct = std::cos(t), st = std::sin(t);
        const SymMat2 h = velocity_hessian_fd({a * ct, a * st}, {-a * st, a * ct}, lam);
        CHECK(h.a == Catch::Approx(amp * ct * ct).margin(1e-5));
        CHECK(h.b == Catch::Approx(amp * ct * st).margin(1e-5));
        CHECK(h.c == Catch::Approx(amp * st * st).margin(1e-5));
        double lo, hi;
        h.eigenvalues(lo, hi);
        CHECK(lo == Catch::Approx(amp).margin(1e-4));
        CHECK(std::abs(hi) < 1e-4);
        const Vec2 null_dir = h.eigenvector(hi);
        CHECK(std::abs(std::abs(dot(null_dir, Vec2{-st, ct})) - 1.0) < 1e-4);
    }
}

TEST_CASE("second variation form is the squared radial component times a negative weight") {
    const double a = 0.5;
    for (int i = 0; i < 6; ++i) {
        const double t = 2.0 * M_PI * i / 6.0;
        const double ct = std::cos(t), st = std::sin(t);
        CHECK(second_variation_form(a, t, {ct, st}) ==
              Catch::Approx(frozen::sv_radial_05).epsilon(1e-12));
        CHECK(second_variation_form(a, t, {-st, ct}) == 0.0);
        // Mixed direction: weight times squared radial part.
        const Vec2 y{0.3 * ct - 0.4 * st, 0.3 * st + 0.4 * ct};
        CHECK(second_variation_form(a, t, y) ==
              Catch::Approx(frozen::sv_radial_05 * 0.09).epsilon(1e-10));
    }
    CHECK_THROWS_AS(second_variation_form(0.0, 0.0, {1.0, 0.0}), DomainError);
}

TEST_CASE("jacobi coefficients match frozen values and exact rationals") {
    const JacobiData jd = jacobi_coefficients(0.5);
    CHECK(jd.b == Catch::Approx(frozen::b_05).epsilon(1e-15));
    CHECK(jd.c == Catch::Approx(frozen::c_05).epsilon(1e-15));
    CHECK(jd.U == Catch::Approx(frozen::u_05).epsilon(1e-15));
    CHECK(testsupport::jacobi_b_exact(Fraction(1, 2)) == Fraction(-73, 53));
    CHECK(testsupport::jacobi_c_exact(Fraction(1, 2)) == Fraction(-24, 53));
    CHECK(std::abs(jd.b - Fraction(-73, 53).to_double()) < 1e-15);
    CHECK(std::abs(jd.c - Fraction(-24, 53).to_double()) < 1e-15);
    for (int i = 1; i <= 19; ++i) {
        const JacobiData g = jacobi_coefficients(0.05 * i);
        CHECK(g.b < 0.0);
        CHECK(g.c < 0.0);
        CHECK(g.U > 0.0);
    }
    CHECK_THROWS_AS(jacobi_coefficients(0.0), DomainError);
    CHECK_THROWS_AS(jacobi_coefficients(1.0), DomainError);
}

TEST_CASE("conjugate determinant is positive with the expected quartic onset") {
    CHECK_THROWS_AS(conjugate_determinant(0.5, 1.0, 1.0), OrderError);
    CHECK_THROWS_AS(conjugate_determinant(0.5, 1.0, 0.5), OrderError);
    for (double dt : {0.1, 0.5, 1.0, M_PI, 2.0 * M_PI}) {
        CHECK(conjugate_determinant(0.5, 0.0, dt) > 0.0);
        CHECK(conjugate_determinant(0.8, 1.0, 1.0 + dt) > 0.0);
    }
    const double delta = 1e-3;
    CHECK(conjugate_determinant(0.5, 0.0, delta) / std::pow(delta, 4) ==
          Catch::Approx(frozen::d_quartic_05).epsilon(1e-6));
}

TEST_CASE("conjugate determinant agrees with its quadrature assembly") {
    const QuadratureSpec quad{QuadratureRule::gauss_legendre_panels, 8, 1e-7};
    const double probes[][2] = {{0.5, M_PI}, {0.2, 2.0 * M_PI}, {0.7, 1.5}};
    for (const auto& pr : probes) {
        const double closed = conjugate_determinant(pr[0], 0.0, pr[1]);
        const double numeric = conjugate_determinant_numeric(pr[0], 0.0, pr[1], quad);
        CHECK(std::abs(numeric - closed) / std::abs(closed) < 1e-8);
    }
}

TEST_CASE("conjugate scan over a full period finds no sign change") {
    const ConjugateScanResult scan = conjugate_scan(0.5, 2.0 * M_PI, 0.01);
    CHECK(scan.sign_changes.empty());
    CHECK(scan.dt.size() >= 627);
    CHECK(scan.dt.size() <= 629);
    CHECK(scan.dt.front() == Catch::Approx(0.01).margin(1e-15));
    for (double d : scan.d) CHECK(d > 0.0);
    CHECK_THROWS_AS(conjugate_scan(0.5, -1.0, 0.01), DomainError);
    CHECK_THROWS_AS(conjugate_scan(0.5, 2.0 * M_PI, 0.0), DomainError);
    CHECK_THROWS_AS(conjugate_scan(0.5, 4.0 * M_PI + 0.1, 0.01), DomainError);
}
