#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "advectlab/bench.hpp"
#include "advectlab/contours.hpp"

namespace advectlab {

enum class PlotKind { error_vs_h, time_vs_h, time_vs_error };

namespace detail {

inline const char* scheme_color(const std::string& scheme) {
    if (scheme == "weno") return "#1f77b4";
    if (scheme == "weno-nolimit") return "#17becf";
    if (scheme == "dg") return "#2ca02c";
    if (scheme == "jet") return "#d62728";
    if (scheme == "jet-epsfd") return "#ff7f0e";
    return "#555555";
}

class Svg {
public:
    Svg(double w, double h) : w_(w), h_(h) {
        os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
            << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width) {
        os_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2 << "\" stroke=\""
            << stroke << "\" stroke-width=\"" << width << "\"/>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width,
                  bool closed, double opacity = 1.0) {
        os_ << '<' << (closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"" << width << "\" stroke-opacity=\"" << opacity
            << "\" stroke-linejoin=\"round\" points=\"";
        for (const auto& [x, y] : pts) os_ << x << ',' << y << ' ';
        os_ << "\"/>\n";
    }
    void marker(double x, double y, const std::string& fill) {
        os_ << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3.5\" fill=\"" << fill << "\"/>\n";
    }
    void text(double x, double y, const std::string& s, int size = 12, const char* anchor = "middle") {
        os_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"" << size
            << "\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
    }
    void rect(double x, double y, double w, double h) {
        os_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
            << "\" fill=\"none\" stroke=\"black\"/>\n";
    }

    void save(const std::filesystem::path& path) {
        os_ << "</svg>\n";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << os_.str();
        if (!out) throw std::runtime_error("write failed for " + path.string());
    }

private:
    double w_, h_;
    std::ostringstream os_;
};

inline std::string decade_label(int e) { return "1e" + std::to_string(e); }

}  // namespace detail

/// Log-log scatter-with-lines, one series per scheme. Failed rows are skipped;
/// with nothing to draw the axes carry a "no data" note.
inline void emit_plot(const std::vector<ConvergenceRecord>& records, PlotKind kind, const std::filesystem::path& path) {
    constexpr double W = 560, H = 420, L = 70, R = 130, T = 30, B = 50;
    detail::Svg svg(W, H);

    auto xval = [kind](const ConvergenceRecord& r) { return kind == PlotKind::time_vs_error ? r.linf_error : r.h; };
    auto yval = [kind](const ConvergenceRecord& r) {
        return kind == PlotKind::error_vs_h ? r.linf_error : r.wall_seconds;
    };
    const char* xlabel = kind == PlotKind::time_vs_error ? "L-inf error" : "h";
    const char* ylabel = kind == PlotKind::error_vs_h ? "L-inf error" : "wall time [s]";

    std::map<std::string, std::vector<std::pair<double, double>>> series;
    std::vector<std::string> order;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& r : records) {
        const double x = xval(r), y = yval(r);
        if (r.failed || !(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) continue;
        if (!series.count(r.scheme)) order.push_back(r.scheme);
        series[r.scheme].push_back({std::log10(x), std::log10(y)});
        xmin = std::min(xmin, std::log10(x));
        xmax = std::max(xmax, std::log10(x));
        ymin = std::min(ymin, std::log10(y));
        ymax = std::max(ymax, std::log10(y));
    }

    svg.rect(L, T, W - L - R, H - T - B);
    svg.text(L + (W - L - R) / 2, H - 12, xlabel);
    svg.text(16, T + (H - T - B) / 2, ylabel, 12, "middle");
    if (series.empty()) {
        svg.text(L + (W - L - R) / 2, T + (H - T - B) / 2, "no data", 16);
        svg.save(path);
        return;
    }

    const int x0 = static_cast<int>(std::floor(xmin)), x1 = std::max(x0 + 1, static_cast<int>(std::ceil(xmax)));
    const int y0 = static_cast<int>(std::floor(ymin)), y1 = std::max(y0 + 1, static_cast<int>(std::ceil(ymax)));
    auto px = [&](double lx) { return L + (lx - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double ly) { return H - B - (ly - y0) / (y1 - y0) * (H - T - B); };
    for (int e = x0; e <= x1; ++e) {
        svg.line(px(e), H - B, px(e), H - B + 5, "black", 1);
        svg.text(px(e), H - B + 18, detail::decade_label(e), 10);
    }
    for (int e = y0; e <= y1; ++e) {
        svg.line(L - 5, py(e), L, py(e), "black", 1);
        svg.text(L - 8, py(e) + 4, detail::decade_label(e), 10, "end");
    }

    double legend_y = T + 10;
    for (const std::string& name : order) {
        auto pts = series[name];
        std::sort(pts.begin(), pts.end());
        std::vector<std::pair<double, double>> screen;
        for (const auto& [lx, ly] : pts) screen.push_back({px(lx), py(ly)});
        const char* color = detail::scheme_color(name);
        svg.polyline(screen, color, 1.5, false);
        for (const auto& [sx, sy] : screen) svg.marker(sx, sy, color);
        svg.line(W - R + 10, legend_y, W - R + 30, legend_y, color, 2);
        svg.text(W - R + 35, legend_y + 4, name, 11, "start");
        legend_y += 18;
    }
    svg.save(path);
}

/// Contours of one scheme over the thick gray reference contours, with the
/// computational grid (`grid_cells` per axis) in the background.
inline void emit_plot(const ContourSet& contours, const std::string& scheme, int grid_cells,
                      const std::filesystem::path& path) {
    constexpr double S = 600, M = 20;
    detail::Svg svg(S + 2 * M, S + 2 * M);
    auto px = [](double x) { return M + x * S; };
    auto py = [](double y) { return M + (1.0 - y) * S; };

    for (int k = 0; k <= grid_cells; ++k) {
        const double c = static_cast<double>(k) / grid_cells;
        svg.line(px(c), py(0), px(c), py(1), "#dddddd", 0.5);
        svg.line(px(0), py(c), px(1), py(c), "#dddddd", 0.5);
    }
    svg.rect(M, M, S, S);

    std::vector<double> levels;
    for (const Polyline& l : contours.lines)
        if (l.scheme == scheme && std::find(levels.begin(), levels.end(), l.level) == levels.end())
            levels.push_back(l.level);
    std::sort(levels.begin(), levels.end(), std::greater<>());  // inner contour first
    const char* palette[] = {"#d62728", "#9467bd", "#1f77b4", "#2ca02c", "#8c564b"};

    bool drawn = false;
    for (const Polyline& l : contours.lines) {
        if (l.scheme != "reference") continue;
        std::vector<std::pair<double, double>> pts;
        for (const Vec2& p : l.points) pts.push_back({px(p.x), py(p.y)});
        svg.polyline(pts, "#999999", 5.0, l.closed, 0.6);
    }
    for (const Polyline& l : contours.lines) {
        if (l.scheme != scheme) continue;
        const auto idx = std::find(levels.begin(), levels.end(), l.level) - levels.begin();
        std::vector<std::pair<double, double>> pts;
        for (const Vec2& p : l.points) pts.push_back({px(p.x), py(p.y)});
        svg.polyline(pts, palette[idx % 5], 1.2, l.closed);
        drawn = true;
    }
    if (!drawn) svg.text(M + S / 2, M + S / 2, "no data", 16);
    svg.text(M + 4, M + 14, scheme.empty() ? "contours" : scheme, 12, "start");
    svg.save(path);
}

}  // namespace advectlab
