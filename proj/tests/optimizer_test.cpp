#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <finsler/area.hpp>
#include <finsler/optimizer.hpp>

using namespace finsler;

namespace {

FourierCurve single_mode(double a0, int mode, double amp, bool use_sin = false) {
    FourierCurve fc;
    fc.a0 = a0;
    fc.cos_coef.assign(static_cast<std::size_t>(mode), 0.0);
    fc.sin_coef.assign(static_cast<std::size_t>(mode), 0.0);
    (use_sin ? fc.sin_coef : fc.cos_coef)[static_cast<std::size_t>(mode - 1)] = amp;
    return fc;
}

double max_harmonic(const FourierCurve& fc) {
    double m = 0.0;
    for (double v : fc.cos_coef) m = std::max(m, std::abs(v));
    for (double v : fc.sin_coef) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST_CASE("polar curve evaluates radius and its rate analytically") {
    const FourierCurve fc = single_mode(0.5, 1, 0.1);
    const double t = 0.7;
    CHECK(fc.radius(t) == Catch::Approx(0.5 + 0.1 * std::cos(t)).epsilon(1e-15));
    CHECK(fc.radius_dot(t) == Catch::Approx(-0.1 * std::sin(t)).epsilon(1e-15));
    const FourierCurve two = single_mode(0.4, 3, 0.05, true);
    CHECK(two.radius(t) == Catch::Approx(0.4 + 0.05 * std::sin(3.0 * t)).epsilon(1e-15));
    CHECK(two.radius_dot(t) == Catch::Approx(0.15 * std::cos(3.0 * t)).epsilon(1e-15));
}

TEST_CASE("polar curve validation rejects radius excursions") {
    CHECK_THROWS_AS(single_mode(0.5, 1, 0.6).validate(), OutOfDiskError); // max radius 1.1
    CHECK_THROWS_AS(single_mode(0.94, 2, 0.02).validate(), OutOfDiskError);
    CHECK_THROWS_AS(single_mode(0.02, 2, 0.015).validate(), OutOfDiskError); // min radius too small
    FourierCurve mismatched;
    mismatched.cos_coef = {0.1};
    CHECK_THROWS_AS(mismatched.validate(), DomainError);
    CHECK_NOTHROW(single_mode(0.5, 3, 0.05).validate());
}

TEST_CASE("synthesis produces an exactly closed curve with analytic velocities") {
    const FourierCurve fc = single_mode(0.5, 2, 0.08);
    const SampledCurve c = synthesize(fc, 256);
    CHECK(c.sample_count() == 257);
    CHECK(c.closed);
    CHECK(c.points.front().x == c.points.back().x);
    CHECK(c.points.front().y == c.points.back().y);
    CHECK(c.velocities.front().x == c.velocities.back().x);
    // Velocities agree with differences of neighbouring positions.
    const double h = c.dt();
    for (std::size_t i = 1; i + 1 < c.sample_count(); ++i) {
        const Vec2 fd = (1.0 / (2.0 * h)) * (c.points[i + 1] - c.points[i - 1]);
        CHECK(norm(fd - c.velocities[i]) < 2e-3); // central difference is O(h^2)
    }
    CHECK_THROWS_AS(synthesize(fc, 32), TooCoarseError);
}

TEST_CASE("length restoration rescales to the requested length") {
    const FourierCurve fc = single_mode(0.4, 1, 0.02);
    FourierCurve grown = fc;
    grown.scale(1.1);
    const double l_target = curve_length(synthesize(grown, 512));
    const FourierCurve restored = fix_length(fc, l_target);
    CHECK(restored.a0 == Catch::Approx(0.44).epsilon(1e-9));
    CHECK(restored.cos_coef[0] == Catch::Approx(0.022).epsilon(1e-9));
    CHECK(curve_length(synthesize(restored, 512)) == Catch::Approx(l_target).epsilon(1e-10));
}

TEST_CASE("length restoration is exact when nothing needs restoring") {
    FourierCurve circle;
    circle.a0 = 0.5;
    const double l = curve_length(synthesize(circle, 512));
    const FourierCurve out = fix_length(circle, l);
    CHECK(out.a0 == 0.5); // bitwise: the early exit hands back the input
    CHECK(curve_area_ht(synthesize(out, 512)) ==
          curve_area_ht(synthesize(circle, 512))); // delta area is exactly zero
}

TEST_CASE("length restoration reports unreachable targets") {
    FourierCurve circle;
    circle.a0 = 0.5;
    CHECK_THROWS_AS(fix_length(circle, 1e6), UnreachableLengthError);
    CHECK_THROWS_AS(fix_length(circle, 1e-6), UnreachableLengthError);
    CHECK_THROWS_AS(fix_length(circle, 0.0), DomainError);
    CHECK_THROWS_AS(fix_length(circle, -2.0), DomainError);
}

TEST_CASE("optimizer recognizes the circle as a fixed point") {
    FourierCurve circle;
    circle.a0 = 0.5;
    const double l_target = curve_length(synthesize(circle, 512));
    const OptimizerReport rep = optimize_isoperimetric(l_target, circle, 8);
    CHECK(rep.converged);
    CHECK(rep.iterations == 0);
    CHECK(rep.projected_gradient_norm < 1e-6);
    CHECK(max_harmonic(rep.final_curve) == 0.0);
}

TEST_CASE("optimizer returns perturbed starts to the circle") {
    FourierCurve circle;
    circle.a0 = 0.5;
    const double l_target = curve_length(synthesize(circle, 512));
    const double area_circle = curve_area_ht(synthesize(circle, 512));

    SECTION("third cosine mode, amplitude 0.05") {
        const OptimizerReport rep = optimize_isoperimetric(l_target, single_mode(0.5, 3, 0.05), 8);
        CHECK(rep.converged);
        CHECK(max_harmonic(rep.final_curve) < 1e-4);
        CHECK(std::abs(rep.area_history.back() - area_circle) < 1e-8);
    }
    SECTION("second sine mode, amplitude 0.1") {
        const OptimizerReport rep =
            optimize_isoperimetric(l_target, single_mode(0.5, 2, 0.1, true), 8);
        CHECK(rep.converged);
        CHECK(max_harmonic(rep.final_curve) < 1e-4);
        CHECK(std::abs(rep.area_history.back() - area_circle) < 1e-8);
    }
}

TEST_CASE("optimizer history is monotone and the constraint stays satisfied") {
    FourierCurve circle;
    circle.a0 = 0.5;
    const double l_target = curve_length(synthesize(circle, 512));
    const OptimizerReport rep = optimize_isoperimetric(l_target, single_mode(0.5, 2, 0.05), 8);
    REQUIRE(rep.area_history.size() == rep.violation_history.size());
    for (std::size_t i = 0; i + 1 < rep.area_history.size(); ++i)
        CHECK(rep.area_history[i + 1] >= rep.area_history[i] - 1e-13);
    for (double v : rep.violation_history) CHECK(v < 1e-8 * l_target);
}

TEST_CASE("optimizer propagates invalid starting data") {
    FourierCurve circle;
    circle.a0 = 0.5;
    const double l_target = curve_length(synthesize(circle, 512));
    CHECK_THROWS_AS(optimize_isoperimetric(l_target, single_mode(0.5, 1, 0.6), 8),
                    OutOfDiskError);
    CHECK_THROWS_AS(optimize_isoperimetric(1e6, circle, 8), UnreachableLengthError);
    CHECK_THROWS_AS(optimize_isoperimetric(l_target, circle, 17), DomainError);
}

TEST_CASE("circle perturbations at fixed length lose area for modes two and up") {
    const auto table = perturbation_study(0.5, {2, 3}, {0.01, 0.05});
    REQUIRE(table.size() == 4);
    for (const auto& row : table) {
        CHECK(row.delta_area < 0.0);
        CHECK(row.delta_area_over_eps2 == Catch::Approx(row.delta_area / (row.eps * row.eps)));
    }
    // Second-order rate is stable in eps for each mode.
    CHECK(table[0].delta_area_over_eps2 ==
          Catch::Approx(table[1].delta_area_over_eps2).epsilon(0.2));
    CHECK(table[2].delta_area_over_eps2 ==
          Catch::Approx(table[3].delta_area_over_eps2).epsilon(0.2));
}

TEST_CASE("zero perturbation changes nothing at all") {
    const auto table = perturbation_study(0.5, {2}, {0.0});
    REQUIRE(table.size() == 1);
    CHECK(table[0].delta_area == 0.0);
    CHECK(table[0].delta_area_over_eps2 == 0.0);
}

TEST_CASE("perturbation study validates its inputs") {
    CHECK_THROWS_AS(perturbation_study(0.5, {0}, {0.01}), DomainError);
    CHECK_THROWS_AS(perturbation_study(0.96, {2}, {0.01}), DomainError);
    CHECK_THROWS_AS(perturbation_study(-0.1, {2}, {0.01}), DomainError);
}

TEST_CASE("report and coefficient files use the documented schemas") {
    FourierCurve circle;
    circle.a0 = 0.5;
    const double l_target = curve_length(synthesize(circle, 512));
    const OptimizerReport rep = optimize_isoperimetric(l_target, circle, 2);

    const std::string rep_path = "optimizer_test_report.csv";
    write_report_csv(rep, rep_path);
    std::FILE* fp = std::fopen(rep_path.c_str(), "rb");
    REQUIRE(fp != nullptr);
    char line[256];
    REQUIRE(std::fgets(line, sizeof(line), fp) != nullptr);
    CHECK(std::string(line) == "iter,area,violation\n");
    REQUIRE(std::fgets(line, sizeof(line), fp) != nullptr);
    CHECK(std::string(line).rfind("0,", 0) == 0);
    std::fclose(fp);
    std::remove(rep_path.c_str());

    const std::string fc_path = "optimizer_test_fourier.csv";
    write_fourier_csv(rep.final_curve, fc_path);
    fp = std::fopen(fc_path.c_str(), "rb");
    REQUIRE(fp != nullptr);
    REQUIRE(std::fgets(line, sizeof(line), fp) != nullptr);
    CHECK(std::string(line) == "k,cos_coef,sin_coef\n");
    REQUIRE(std::fgets(line, sizeof(line), fp) != nullptr);
    CHECK(std::string(line) == "0,0.5,0\n"); // row k = 0 carries the mean radius
    int rows = 0;
    while (std::fgets(line, sizeof(line), fp)) ++rows;
    std::fclose(fp);
    CHECK(rows == 2);
    std::remove(fc_path.c_str());
}
