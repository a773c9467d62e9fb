#ifndef FINSLER_SVG_HPP
#define FINSLER_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/vec2.hpp"

namespace finsler {
namespace detail {

inline void svg_polyline(std::FILE* fp, const std::vector<double>& xs,
                         const std::vector<double>& ys, double x0, double x1, double y0,
                         double y1, int w, int h, int margin, const char* color) {
    std::fprintf(fp, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"", color);
    const double xs_span = (x1 > x0) ? (x1 - x0) : 1.0;
    const double ys_span = (y1 > y0) ? (y1 - y0) : 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double px = margin + (xs[i] - x0) / xs_span * (w - 2 * margin);
        const double py = h - margin - (ys[i] - y0) / ys_span * (h - 2 * margin);
        std::fprintf(fp, "%.2f,%.2f ", px, py);
    }
    std::fputs("\"/>\n", fp);
}

} // namespace detail

/// Hand-rolled single-series line plot; no plotting stack, just a framed
/// polyline with min/max labels.
inline void write_svg_plot(const std::string& path, const std::vector<double>& xs,
                           const std::vector<double>& ys, const std::string& title) {
    if (xs.size() != ys.size() || xs.empty()) throw DomainError("write_svg_plot: bad series");
    const int w = 640, h = 420, margin = 48;
    double x0 = xs[0], x1 = xs[0], y0 = ys[0], y1 = ys[0];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        x0 = std::min(x0, xs[i]);
        x1 = std::max(x1, xs[i]);
        y0 = std::min(y0, ys[i]);
        y1 = std::max(y1, ys[i]);
    }
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("write_svg_plot: cannot open " + path);
    std::fprintf(fp,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                 "viewBox=\"0 0 %d %d\">\n",
                 w, h, w, h);
    std::fputs("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n", fp);
    std::fprintf(fp,
                 "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
                 "stroke=\"#888\"/>\n",
                 margin, margin, w - 2 * margin, h - 2 * margin);
    std::fprintf(fp, "<text x=\"%d\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">%s</text>\n",
                 margin, title.c_str());
    std::fprintf(fp,
                 "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\">%g</text>\n",
                 4, h - margin, y0);
    std::fprintf(fp, "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\">%g</text>\n",
                 4, margin + 10, y1);
    std::fprintf(fp,
                 "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\">%g</text>\n",
                 margin, h - margin + 16, x0);
    std::fprintf(fp,
                 "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\">%g</text>\n",
                 w - margin - 24, h - margin + 16, x1);
    detail::svg_polyline(fp, xs, ys, x0, x1, y0, y1, w, h, margin, "#1565c0");
    std::fputs("</svg>\n", fp);
    std::fclose(fp);
}

/// Two closed curves drawn over the unit-circle outline — used to compare the
/// optimizer's initial and final iterates.
inline void write_svg_curves(const std::string& path, const std::vector<Vec2>& first,
                             const std::vector<Vec2>& second, const std::string& title) {
    if (first.empty() || second.empty()) throw DomainError("write_svg_curves: empty curve");
    const int w = 480, h = 480, margin = 32;
    const double scale = (w - 2 * margin) / 2.0; // unit disk fills the frame
    const auto px = [&](double x) { return w / 2.0 + x * scale; };
    const auto py = [&](double y) { return h / 2.0 - y * scale; };
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("write_svg_curves: cannot open " + path);
    std::fprintf(fp,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                 "viewBox=\"0 0 %d %d\">\n",
                 w, h, w, h);
    std::fputs("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n", fp);
    std::fprintf(fp, "<text x=\"%d\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">%s</text>\n",
                 margin, title.c_str());
    std::fprintf(fp,
                 "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"none\" stroke=\"#bbb\" "
                 "stroke-dasharray=\"4 3\"/>\n",
                 w / 2.0, h / 2.0, scale);
    for (int pass = 0; pass < 2; ++pass) {
        const auto& pts = (pass == 0) ? first : second;
        std::fprintf(fp, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"",
                     pass == 0 ? "#c62828" : "#1565c0");
        for (const Vec2& p : pts) std::fprintf(fp, "%.2f,%.2f ", px(p.x), py(p.y));
        std::fputs("\"/>\n", fp);
    }
    std::fputs("</svg>\n", fp);
    std::fclose(fp);
}

} // namespace finsler

#endif // FINSLER_SVG_HPP
