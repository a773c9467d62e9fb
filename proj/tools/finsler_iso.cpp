// finsler-iso: command-line driver for the disk-metric isoperimetric toolkit.
//
// Subcommands run the individual verification pipelines (area element
// identity, circle extremality, excess-function scan, conjugate-point scan,
// direct optimization); `all` chains every check and the randomized
// cross-validations into one pass/fail run.
//
// Exit codes: 0 = all checks passed, 1 = a mathematical check failed,
// 2 = invalid input or configuration.

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <finsler/finsler.hpp>

namespace fs = std::filesystem;
using namespace finsler;

namespace {

std::string default_out_dir() {
    const char* env = std::getenv("FINSLER_ISO_OUT");
    return (env && *env) ? std::string(env) : std::string(".");
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(fs::path(dir), ec);
}

double rel_diff(double x, double ref) {
    return std::abs(x - ref) / std::max(std::abs(ref), 1e-300);
}

// ------------------------------------------------------------- config files
//
// Configuration files are flat `key = value` lines (# starts a comment,
// blank lines allowed). They are expanded into `--key=value` tokens spliced
// into the argument list right after the subcommand name, so flags given on
// the command line come later and win (every option uses take-last
// semantics).

std::string trimmed(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> config_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config file " + path + " line " + std::to_string(lineno) +
                                     ": expected key = value");
        std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        key.erase(0, key.find_first_not_of('-'));
        if (key.empty())
            throw std::runtime_error("config file " + path + " line " + std::to_string(lineno) +
                                     ": empty key");
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

/// Expand a trailing-wins `--config FILE` (or `--config=FILE`) into option
/// tokens placed directly after the subcommand name. Help and version
/// requests skip expansion so they never fail on a bad file.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    if (args.empty() || args[0].empty() || args[0][0] == '-') return args;
    std::string path;
    bool found = false;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--help" || args[i] == "-h" || args[i] == "--version") return args;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            found = true;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            found = true;
        }
    }
    if (!found) return args;
    const std::vector<std::string> tokens = config_tokens(path);
    args.insert(args.begin() + 1, tokens.begin(), tokens.end());
    return args;
}

struct CheckList {
    int failures = 0;
    std::vector<std::string> lines;

    void report(bool ok, const std::string& name, const std::string& detail) {
        std::printf("[%s] %-26s %s\n", ok ? " ok " : "FAIL", name.c_str(), detail.c_str());
        lines.push_back(name + "," + (ok ? "pass" : "fail"));
        if (!ok) ++failures;
    }
};

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

// ---------------------------------------------------------------- commands

int cmd_area_element(double r_min, double r_max, double step, const std::string& csv_path,
                     const std::string& svg_path) {
    if (!(r_min >= 0.0 && r_min < r_max && r_max <= 0.95 && step > 0.0))
        throw DomainError("area-element: need 0 <= r_min < r_max <= 0.95 and step > 0");
    std::FILE* fp = std::fopen(csv_path.c_str(), "wb");
    if (!fp) throw Error("area-element: cannot open " + csv_path);
    std::fputs("r,sigma_closed,sigma_quadrature,rel_err\n", fp);
    double max_rel = 0.0;
    int rows = 0;
    for (double r = r_min; r <= r_max + 1e-12; r += step) {
        const double closed = sigma_ht_closed(r);
        const double quad = sigma_ht_quadrature(r);
        const double rel = rel_diff(quad, closed);
        std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g\n", r, closed, quad, rel);
        max_rel = std::max(max_rel, rel);
        ++rows;
    }
    std::fclose(fp);
    if (!svg_path.empty()) {
        std::vector<double> xs, ys;
        for (int i = 0; i <= 160; ++i) {
            const double r = r_min + (r_max - r_min) * i / 160.0;
            xs.push_back(r);
            ys.push_back(sigma_ht_closed(r));
        }
        write_svg_plot(svg_path, xs, ys, "area element density vs radius");
    }
    std::printf("area-element: %d rows, max rel err %.3g (gate 1e-8) -> %s\n", rows, max_rel,
                csv_path.c_str());
    return max_rel < 1e-8 ? 0 : 1;
}

int cmd_verify_extremal(double a, const std::string& csv_path) {
    const double lam = lambda0(a); // throws DomainError if a is out of range
    const SampledCurve circle = SampledCurve::circle(a, 512);
    const double residual = el_residual(circle, Multiplier{lam}).max_abs();
    double normality_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 256; ++i)
        normality_min = std::min(normality_min, norm(normality(a, 2.0 * M_PI * i / 256.0)));
    const double c0 = first_integral(a, 0.0, Multiplier{lam});
    std::FILE* fp = std::fopen(csv_path.c_str(), "wb");
    if (!fp) throw Error("verify-extremal: cannot open " + csv_path);
    std::fputs("quantity,value\n", fp);
    std::fprintf(fp, "a,%.17g\n", a);
    std::fprintf(fp, "lambda0,%.17g\n", lam);
    std::fprintf(fp, "max_el_residual,%.17g\n", residual);
    std::fprintf(fp, "normality_min,%.17g\n", normality_min);
    std::fprintf(fp, "first_integral,%.17g\n", c0);
    std::fclose(fp);
    std::printf(
        "verify-extremal: a=%g lambda0=%.9g max residual %.3g (gate 1e-7) normality min %.4g\n", a,
        lam, residual, normality_min);
    return residual < 1e-7 ? 0 : 1;
}

int cmd_escan(double a, int n_points, int n_dirs, const std::string& csv_path) {
    const double lam = lambda0(a);
    const EScanResult res = e_scan(a, Multiplier{lam}, n_points, n_dirs);
    write_scan_csv(csv_path, a, res.t, res.max_e_at_t,
                   "max_e=" + fmt("%.17g", res.max_e) + " min_abs_e=" + fmt("%.17g", res.min_abs_e));
    std::printf("escan: a=%g %dx%d samples, max E %.6g (gate < 0), min |E| %.3g\n", a, n_points,
                n_dirs, res.max_e, res.min_abs_e);
    return res.max_e < 0.0 ? 0 : 1;
}

int cmd_conjugate(double a, double span, double step, const std::string& csv_path) {
    const ConjugateScanResult scan = conjugate_scan(a, span, step);
    double min_d = std::numeric_limits<double>::infinity();
    for (double d : scan.d) min_d = std::min(min_d, d);
    // Dual-path probes: determinant assembled from the solution basis and
    // quadrature must match the closed form.
    const QuadratureSpec probe_quad{QuadratureRule::gauss_legendre_panels, 8, 1e-7};
    double max_probe_rel = 0.0;
    for (int i = 1; i <= 32; ++i) {
        const double dt = span * i / 32.0;
        const double closed = conjugate_determinant(a, 0.0, dt);
        const double numeric = conjugate_determinant_numeric(a, 0.0, dt, probe_quad);
        max_probe_rel = std::max(max_probe_rel, rel_diff(numeric, closed));
    }
    write_scan_csv(csv_path, a, scan.dt, scan.d,
                   "sign_changes=" + std::to_string(scan.sign_changes.size()) +
                       " min_d=" + fmt("%.17g", min_d) +
                       " max_probe_rel=" + fmt("%.3g", max_probe_rel));
    const std::string intervals_path =
        csv_path.size() > 4 ? csv_path.substr(0, csv_path.size() - 4) + "_sign_changes.csv"
                            : csv_path + "_sign_changes.csv";
    write_intervals_csv(intervals_path, scan.sign_changes);
    std::printf("conjugate: a=%g span=%g, %zu samples, %zu sign changes, min D %.4g, "
                "probe rel %.3g (gate 1e-6)\n",
                a, span, scan.d.size(), scan.sign_changes.size(), min_d, max_probe_rel);
    return (scan.sign_changes.empty() && max_probe_rel < 1e-6) ? 0 : 1;
}

int cmd_optimize(double a_equiv, double l_target, int harmonics, int init_mode, double init_amp,
                 bool init_sin, const std::string& dir) {
    if (harmonics < 1 || harmonics > 16)
        throw DomainError("optimize: harmonics must lie in [1, 16]");
    if (init_mode < 0 || init_mode > harmonics)
        throw DomainError("optimize: init mode must lie in [0, harmonics]");
    ensure_dir(dir);
    FourierCurve base;
    base.a0 = a_equiv;
    if (l_target <= 0.0) l_target = curve_length(synthesize(base, 512));
    FourierCurve init = base;
    if (init_mode > 0) {
        init.cos_coef.assign(static_cast<std::size_t>(init_mode), 0.0);
        init.sin_coef.assign(static_cast<std::size_t>(init_mode), 0.0);
        (init_sin ? init.sin_coef : init.cos_coef)[static_cast<std::size_t>(init_mode - 1)] =
            init_amp;
    }
    const FourierCurve start = fix_length(init, l_target);
    const OptimizerReport rep =
        optimize_isoperimetric(l_target, init, static_cast<std::size_t>(harmonics));
    write_report_csv(rep, join(dir, "report.csv"));
    write_fourier_csv(rep.final_curve, join(dir, "final_curve.csv"));
    write_svg_curves(join(dir, "curves.svg"), synthesize(start, 256).points,
                     synthesize(rep.final_curve, 256).points,
                     "initial (red) vs optimized (blue) curve");
    const FourierCurve circle_same_length = fix_length(base, l_target);
    const double area_circle = curve_area_ht(synthesize(circle_same_length, 512));
    const double delta_area = rep.area_history.back() - area_circle;
    double max_harm = 0.0;
    for (double v : rep.final_curve.cos_coef) max_harm = std::max(max_harm, std::abs(v));
    for (double v : rep.final_curve.sin_coef) max_harm = std::max(max_harm, std::abs(v));
    std::printf("optimize: %d accepted steps, final area %.12g, vs circle %+.3g, max harmonic "
                "%.3g (gate 1e-4), projected grad %.3g, %s\n",
                rep.iterations, rep.area_history.back(), delta_area, max_harm,
                rep.projected_gradient_norm, rep.converged ? "converged" : "iteration cap");
    return (rep.converged && max_harm < 1e-4) ? 0 : 1;
}

int cmd_all(std::uint64_t seed, const std::string& dir) {
    ensure_dir(dir);
    CheckList checks;

    // 1. Area element: closed form vs defining integral.
    checks.report(cmd_area_element(0.0, 0.9, 0.1, join(dir, "area_element.csv"),
                                   join(dir, "area_element.svg")) == 0,
                  "area-element", "identity grid r=0..0.9");

    // 2. Circulation field curl vs density on a disk grid.
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 20; ++j) {
                const double x = -0.85 + 1.70 * i / 19.0;
                const double y = -0.85 + 1.70 * j / 19.0;
                if (x * x + y * y > 0.85 * 0.85) continue;
                worst = std::max(worst, green_consistency(x, y));
            }
        }
        checks.report(worst < 1e-5, "green-consistency", "max residual " + fmt("%.3g", worst));
    }

    // 3. Length density vs metric norm on random admissible samples.
    {
        SeededRng rng(seed);
        const MetricModel model = MetricModel::berwald();
        double worst = 0.0;
        for (int n = 0; n < 1000; ++n) {
            double x1, x2;
            do {
                x1 = rng.uniform(-0.9, 0.9);
                x2 = rng.uniform(-0.9, 0.9);
            } while (x1 * x1 + x2 * x2 >= 0.81);
            const double ang = rng.uniform(0.0, 2.0 * M_PI);
            const double speed = rng.uniform(0.1, 2.0);
            const Vec2 y{speed * std::cos(ang), speed * std::sin(ang)};
            const double g = length_integrand_g(x1, x2, y.x, y.y);
            const double f = finsler_norm(model, {x1, x2}, y);
            worst = std::max(worst, rel_diff(g, f));
        }
        checks.report(worst < 1e-10, "norm-identity", "1000 samples, max rel " + fmt("%.3g", worst));
    }

    // 4. Circle extremality across radii.
    {
        std::FILE* fp = std::fopen(join(dir, "verify_extremal.csv").c_str(), "wb");
        if (!fp) throw Error("all: cannot open verify_extremal.csv");
        std::fputs("a,lambda0,max_el_residual,normality_min,first_integral\n", fp);
        double worst = 0.0;
        double worst_norm = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 9; ++i) {
            const double a = 0.1 * i;
            const double lam = lambda0(a);
            const double res = el_residual(SampledCurve::circle(a, 512), Multiplier{lam}).max_abs();
            double nmin = std::numeric_limits<double>::infinity();
            for (int k = 0; k < 128; ++k)
                nmin = std::min(nmin, norm(normality(a, 2.0 * M_PI * k / 128.0)));
            std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g\n", a, lam, res, nmin,
                         first_integral(a, 0.0, Multiplier{lam}));
            worst = std::max(worst, res);
            worst_norm = std::min(worst_norm, nmin);
        }
        std::fclose(fp);
        checks.report(worst < 1e-7 && worst_norm > 0.0, "circle-extremality",
                      "a=0.1..0.9, max residual " + fmt("%.3g", worst));
    }

    // 5. Normality closed form vs derivative-free evaluation.
    {
        double worst = 0.0;
        for (double a : {0.3, 0.5, 0.7}) {
            for (int i = 0; i < 32; ++i) {
                const double t = 2.0 * M_PI * i / 32.0;
                const Vec2 closed = normality(a, t);
                const Vec2 fd = normality_fd(a, t);
                worst = std::max(worst, norm(closed - fd));
            }
        }
        checks.report(worst < 1e-6, "normality-fd", "max diff " + fmt("%.3g", worst));
    }

    // 6. Conservation along shooting solutions of the polar extremal ODE.
    {
        SeededRng rng(seed);
        std::FILE* fp = std::fopen(join(dir, "first_integral_drift.csv").c_str(), "wb");
        if (!fp) throw Error("all: cannot open first_integral_drift.csv");
        std::fprintf(fp, "# seed=%" PRIu64 "\n", seed);
        std::fputs("r0,rdot0,lambda,drift\n", fp);
        double worst = 0.0;
        for (int n = 0; n < 3; ++n) {
            const double r0 = rng.uniform(0.40, 0.60);
            const double rd0 = rng.uniform(-0.10, 0.10);
            const double lm = rng.uniform(-0.70, -0.40);
            const double drift = first_integral_drift(r0, rd0, Multiplier{lm});
            std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g\n", r0, rd0, lm, drift);
            worst = std::max(worst, drift);
        }
        std::fclose(fp);
        checks.report(worst < 1e-6, "first-integral", "3 orbits, max drift " + fmt("%.3g", worst));
    }

    // 7. Excess function: definition path vs reduced path on random samples.
    {
        SeededRng rng(seed);
        double worst = 0.0;
        for (int n = 0; n < 10000; ++n) {
            double x1, x2;
            do {
                x1 = rng.uniform(-0.85, 0.85);
                x2 = rng.uniform(-0.85, 0.85);
            } while (x1 * x1 + x2 * x2 >= 0.85 * 0.85);
            const double av = rng.uniform(0.0, 2.0 * M_PI);
            const double ap = rng.uniform(0.0, 2.0 * M_PI);
            const double sv = rng.uniform(0.2, 2.0);
            const double sp = rng.uniform(0.2, 2.0);
            const double lm = rng.uniform(-2.0, 2.0);
            const Vec2 x{x1, x2};
            const Vec2 v{sv * std::cos(av), sv * std::sin(av)};
            const Vec2 p{sp * std::cos(ap), sp * std::sin(ap)};
            const double ed = weierstrass_e(x, v, p, Multiplier{lm});
            const double er = weierstrass_e_reduced(x, v, p, Multiplier{lm});
            worst = std::max(worst, std::abs(ed - er) / (1.0 + std::abs(ed)));
        }
        checks.report(worst < 1e-10, "excess-dual-path",
                      "1e4 samples, max scaled diff " + fmt("%.3g", worst));
    }

    // 8. Excess-function sign over circle scans.
    {
        bool ok = true;
        double worst = -std::numeric_limits<double>::infinity();
        for (double a : {0.3, 0.5, 0.7, 0.9}) {
            char name[32];
            std::snprintf(name, sizeof(name), "escan_%03d.csv", static_cast<int>(a * 100 + 0.5));
            ok = cmd_escan(a, 64, 256, join(dir, name)) == 0 && ok;
            // cmd_escan prints its own line; reuse its gate for the roll-up.
            const EScanResult res = e_scan(a, Multiplier{lambda0(a)}, 64, 256);
            worst = std::max(worst, res.max_e);
        }
        checks.report(ok, "excess-sign", "4 radii, max E " + fmt("%.4g", worst));
    }

    // 9. Jacobi coefficients, dual-path determinant, conjugate-point scan.
    {
        bool signs_ok = true, scan_ok = true;
        for (int i = 1; i <= 19; ++i) {
            const double a = 0.05 * i;
            const JacobiData jd = jacobi_coefficients(a);
            signs_ok = signs_ok && jd.b < 0.0 && jd.c < 0.0 && jd.U > 0.0;
            scan_ok = scan_ok && conjugate_scan(a, 2.0 * M_PI, 0.01).sign_changes.empty();
        }
        const QuadratureSpec probe_quad{QuadratureRule::gauss_legendre_panels, 8, 1e-7};
        double probe_rel = 0.0;
        const double probes[][2] = {{0.5, M_PI}, {0.2, 2.0 * M_PI}, {0.35, 3.0}, {0.7, 1.5}};
        for (const auto& pr : probes) {
            const double closed = conjugate_determinant(pr[0], 0.0, pr[1]);
            const double numeric = conjugate_determinant_numeric(pr[0], 0.0, pr[1], probe_quad);
            probe_rel = std::max(probe_rel, rel_diff(numeric, closed));
        }
        const int rc = cmd_conjugate(0.5, 2.0 * M_PI, 0.01, join(dir, "conjugate_050.csv"));
        checks.report(signs_ok && scan_ok && probe_rel < 1e-8 && rc == 0, "conjugate-points",
                      "19 radii, dual-path rel " + fmt("%.3g", probe_rel));
    }

    // 10. Velocity Hessian: finite differences vs rank-1 closed form.
    {
        const double a = 0.5;
        const double lam = lambda0(a);
        const double amp = lam * (2.0 * a * a + 1.0) / (a * std::pow(1.0 - a * a, 2.5));
        double worst_entry = 0.0, worst_null = 0.0, worst_tangent = 0.0;
        bool neg_ok = true;
        for (int i = 0; i < 16; ++i) {
            const double t = 2.0 * M_PI * i / 16.0;
            const double ct = std::cos(t), st = std::sin(t);
            const Vec2 x{a * ct, a * st};
            const Vec2 v{-a * st, a * ct};
            const SymMat2 h = velocity_hessian_fd(x, v, Multiplier{lam});
            worst_entry = std::max({worst_entry, std::abs(h.a - amp * ct * ct),
                                    std::abs(h.b - amp * ct * st), std::abs(h.c - amp * st * st)});
            double lo, hi;
            h.eigenvalues(lo, hi);
            neg_ok = neg_ok && lo < 0.0;
            worst_null = std::max(worst_null, std::abs(hi));
            const Vec2 null_dir = h.eigenvector(hi);
            const Vec2 tangent{-st, ct};
            worst_tangent = std::max(worst_tangent, 1.0 - std::abs(dot(null_dir, tangent)));
        }
        checks.report(worst_entry < 1e-5 && neg_ok && worst_null < 1e-4 && worst_tangent < 1e-4,
                      "velocity-hessian",
                      "16 points, max entry diff " + fmt("%.3g", worst_entry));
    }

    // 11. Perturbation table: every mode k >= 2 loses area.
    {
        std::vector<int> modes{1, 2, 3, 4, 5, 6, 7, 8};
        std::vector<double> eps{0.01, 0.02, 0.05};
        const auto table = perturbation_study(0.5, modes, eps);
        std::FILE* fp = std::fopen(join(dir, "perturbation.csv").c_str(), "wb");
        if (!fp) throw Error("all: cannot open perturbation.csv");
        std::fputs("k,eps,delta_area,delta_area_over_eps2\n", fp);
        bool ok = true;
        for (const auto& row : table) {
            std::fprintf(fp, "%d,%.17g,%.17g,%.17g\n", row.mode, row.eps, row.delta_area,
                         row.delta_area_over_eps2);
            if (row.mode >= 2 && !(row.delta_area < 0.0)) ok = false;
        }
        std::fclose(fp);
        checks.report(ok, "perturbation-table", "k=2..8 all lose area (k=1 reported only)");
    }

    // 12. Direct optimization returns to the circle from seeded starts.
    {
        SeededRng rng(seed);
        FourierCurve base;
        base.a0 = 0.5;
        const double l_target = curve_length(synthesize(base, 512));
        const double area_circle = curve_area_ht(synthesize(base, 512));
        std::FILE* fp = std::fopen(join(dir, "optimizer_runs.csv").c_str(), "wb");
        if (!fp) throw Error("all: cannot open optimizer_runs.csv");
        std::fprintf(fp, "# seed=%" PRIu64 "\n", seed);
        std::fputs("start,mode,amplitude,component,iterations,final_area,delta_area,"
                   "max_harmonic,converged\n",
                   fp);
        bool ok = true;
        for (int s = 0; s < 4; ++s) {
            const int mode = 2 + static_cast<int>(rng.uniform01() * 4.0); // 2..5
            const double amp = rng.uniform(0.02, 0.05);
            const bool use_sin = rng.uniform01() < 0.5;
            FourierCurve init = base;
            init.cos_coef.assign(static_cast<std::size_t>(mode), 0.0);
            init.sin_coef.assign(static_cast<std::size_t>(mode), 0.0);
            (use_sin ? init.sin_coef : init.cos_coef)[static_cast<std::size_t>(mode - 1)] = amp;
            const OptimizerReport rep = optimize_isoperimetric(l_target, init, 8);
            double max_harm = 0.0;
            for (double v : rep.final_curve.cos_coef) max_harm = std::max(max_harm, std::abs(v));
            for (double v : rep.final_curve.sin_coef) max_harm = std::max(max_harm, std::abs(v));
            const double da = rep.area_history.back() - area_circle;
            const bool run_ok = rep.converged && max_harm < 1e-4 && std::abs(da) < 1e-8;
            std::fprintf(fp, "%d,%d,%.17g,%s,%d,%.17g,%.17g,%.17g,%d\n", s, mode, amp,
                         use_sin ? "sin" : "cos", rep.iterations, rep.area_history.back(), da,
                         max_harm, rep.converged ? 1 : 0);
            ok = ok && run_ok;
        }
        std::fclose(fp);
        checks.report(ok, "optimizer-basin", "4 seeded starts back to the circle");
    }

    std::FILE* fp = std::fopen(join(dir, "all_summary.csv").c_str(), "wb");
    if (!fp) throw Error("all: cannot open all_summary.csv");
    std::fprintf(fp, "# seed=%" PRIu64 "\n", seed);
    std::fputs("check,status\n", fp);
    for (const std::string& line : checks.lines) std::fprintf(fp, "%s\n", line.c_str());
    std::fclose(fp);
    std::printf("all: %d/%zu checks passed\n",
                static_cast<int>(checks.lines.size()) - checks.failures, checks.lines.size());
    return checks.failures == 0 ? 0 : 1;
}

int map_error(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const DomainError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const OrderError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const TooCoarseError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const OutOfDiskError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const UnreachableLengthError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const ZeroVectorError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const NotClosedError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "check failed: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "check failed: %s\n", e.what());
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    const std::string out = default_out_dir();
    CLI::App app{"finsler-iso: verification toolkit for the disk-metric isoperimetric problem"};
    app.require_subcommand(1);
    std::string cfg_file;

    double ae_rmin = 0.0, ae_rmax = 0.9, ae_step = 0.1;
    std::string ae_csv = join(out, "area_element.csv");
    std::string ae_svg = join(out, "area_element.svg");
    CLI::App* ae = app.add_subcommand("area-element",
                                      "Compare the closed-form area element with its integral");
    ae->add_option("--r-min", ae_rmin, "Grid start")->capture_default_str();
    ae->add_option("--r-max", ae_rmax, "Grid end (<= 0.95)")->capture_default_str();
    ae->add_option("--step", ae_step, "Grid step")->capture_default_str();
    ae->add_option("--out", ae_csv, "Output CSV path")->capture_default_str();
    ae->add_option("--svg", ae_svg, "Output SVG path (empty to skip)")->capture_default_str();
    ae->add_option("--config", cfg_file, "Flat key=value config file (# comments); flags override");

    double ve_a = 0.5;
    std::string ve_csv = join(out, "verify_extremal.csv");
    CLI::App* ve = app.add_subcommand("verify-extremal",
                                      "Check the centered circle solves the constrained problem");
    ve->add_option("--a", ve_a, "Circle radius in (0,1)")->capture_default_str();
    ve->add_option("--out", ve_csv, "Output CSV path")->capture_default_str();
    ve->add_option("--config", cfg_file, "Flat key=value config file (# comments); flags override");

    double es_a = 0.5;
    int es_points = 64, es_dirs = 256;
    std::string es_csv = join(out, "escan.csv");
    CLI::App* es = app.add_subcommand("escan", "Scan the excess function over the circle");
    es->add_option("--a", es_a, "Circle radius in (0,1)")->capture_default_str();
    es->add_option("--n-points", es_points, "Circle sample count")->capture_default_str();
    es->add_option("--n-dirs", es_dirs, "Comparison direction count")->capture_default_str();
    es->add_option("--out", es_csv, "Output CSV path")->capture_default_str();
    es->add_option("--config", cfg_file, "Flat key=value config file (# comments); flags override");

    double cj_a = 0.5, cj_span = 2.0 * M_PI, cj_step = 0.01;
    std::string cj_csv = join(out, "conjugate.csv");
    CLI::App* cj = app.add_subcommand("conjugate", "Scan the conjugate-point determinant");
    cj->add_option("--a", cj_a, "Circle radius in (0,1)")->capture_default_str();
    cj->add_option("--span", cj_span, "Offset span (<= 4*pi)")->capture_default_str();
    cj->add_option("--step", cj_step, "Offset step")->capture_default_str();
    cj->add_option("--out", cj_csv, "Output CSV path")->capture_default_str();
    cj->add_option("--config", cfg_file, "Flat key=value config file (# comments); flags override");

    double op_a = 0.5, op_l = 0.0, op_amp = 0.05;
    int op_k = 8, op_mode = 3;
    bool op_sin = false;
    std::string op_dir = join(out, "optimize");
    CLI::App* op = app.add_subcommand("optimize",
                                      "Maximize enclosed area at fixed length from a perturbed start");
    op->add_option("--a-equiv", op_a, "Radius of the equal-length circle")->capture_default_str();
    op->add_option("--l-target", op_l, "Explicit target length (overrides --a-equiv)")
        ->capture_default_str();
    op->add_option("--harmonics", op_k, "Number of Fourier harmonics (<= 16)")
        ->capture_default_str();
    op->add_option("--init-mode", op_mode, "Perturbation mode of the start (0 = circle)")
        ->capture_default_str();
    op->add_option("--init-amp", op_amp, "Perturbation amplitude of the start")
        ->capture_default_str();
    op->add_flag("--init-sin", op_sin, "Perturb the sine component instead of cosine");
    op->add_option("--out-dir", op_dir, "Output directory")->capture_default_str();
    op->add_option("--config", cfg_file, "Flat key=value config file (# comments); flags override");

    std::uint64_t all_seed = 42;
    std::string all_dir = out;
    CLI::App* al = app.add_subcommand("all", "Run the complete verification suite");
    al->add_option("--rng-seed", all_seed, "Seed for randomized cross-checks")
        ->capture_default_str();
    al->add_option("--out-dir", all_dir, "Output directory")->capture_default_str();
    al->add_option("--config", cfg_file, "Flat key=value config file (# comments); flags override");

    for (CLI::App* sub : {ae, ve, es, cj, op, al})
        for (CLI::Option* o : sub->get_options())
            o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = expand_config(std::move(args));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    }
    std::reverse(args.begin(), args.end());

    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.got_subcommand(ae))
        return map_error([&] { return cmd_area_element(ae_rmin, ae_rmax, ae_step, ae_csv, ae_svg); });
    if (app.got_subcommand(ve)) return map_error([&] { return cmd_verify_extremal(ve_a, ve_csv); });
    if (app.got_subcommand(es))
        return map_error([&] { return cmd_escan(es_a, es_points, es_dirs, es_csv); });
    if (app.got_subcommand(cj))
        return map_error([&] { return cmd_conjugate(cj_a, cj_span, cj_step, cj_csv); });
    if (app.got_subcommand(op))
        return map_error(
            [&] { return cmd_optimize(op_a, op_l, op_k, op_mode, op_amp, op_sin, op_dir); });
    if (app.got_subcommand(al)) return map_error([&] { return cmd_all(all_seed, all_dir); });
    return 2;
}
