#include "priorisk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace priorisk {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;
constexpr double kMarginL = 70.0, kMarginR = 20.0, kMarginT = 30.0, kMarginB = 50.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

double svg_map(double v, double lo, double hi, double lo_px, double hi_px, bool log_scale) {
    double a = log_scale ? std::log10(v) : v;
    double l = log_scale ? std::log10(lo) : lo;
    double h = log_scale ? std::log10(hi) : hi;
    if (h == l) return 0.5 * (lo_px + hi_px);
    return lo_px + (a - l) / (h - l) * (hi_px - lo_px);
}

std::string emit_svg(const std::vector<CurveSeries>& series, const AxesConfig& axes) {
    if (series.empty()) throw std::invalid_argument("nothing to plot");

    bool any = false;
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    for (const CurveSeries& s : series)
        for (const CurvePoint& p : s.points) {
            double x = static_cast<double>(p.n), y = p.value;
            if ((axes.log_x && x <= 0.0) || (axes.log_y && y <= 0.0)) continue;
            if (!any) {
                x_lo = x_hi = x;
                y_lo = y_hi = y;
                any = true;
            } else {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
    if (!any) throw std::invalid_argument("no plottable points");
    if (x_hi == x_lo) { x_lo *= 0.9; x_hi = x_hi == 0.0 ? 1.0 : x_hi * 1.1; }
    if (y_hi == y_lo) { y_lo = axes.log_y ? y_lo * 0.9 : y_lo - 1.0; y_hi = axes.log_y ? y_hi * 1.1 : y_hi + 1.0; }

    double px_l = kMarginL, px_r = axes.width - kMarginR;
    double px_t = kMarginT, px_b = axes.height - kMarginB;
    auto map_x = [&](double v) { return svg_map(v, x_lo, x_hi, px_l, px_r, axes.log_x); };
    auto map_y = [&](double v) { return svg_map(v, y_lo, y_hi, px_b, px_t, axes.log_y); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(axes.width) + "\" height=\"" +
           fmt(axes.height) + "\" viewBox=\"0 0 " + fmt(axes.width) + " " + fmt(axes.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!axes.title.empty())
        out += "<text x=\"" + fmt(0.5 * axes.width) + "\" y=\"18\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"14\">" + axes.title + "</text>\n";

    // Axis lines.
    out += "<line x1=\"" + fmt(px_l) + "\" y1=\"" + fmt(px_b) + "\" x2=\"" + fmt(px_r) + "\" y2=\"" +
           fmt(px_b) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fmt(px_l) + "\" y1=\"" + fmt(px_t) + "\" x2=\"" + fmt(px_l) + "\" y2=\"" +
           fmt(px_b) + "\" stroke=\"black\"/>\n";

    // Ticks: decades on log axes, five even steps otherwise.
    auto ticks = [](double lo, double hi, bool log_scale) {
        std::vector<double> ts;
        if (log_scale) {
            int k0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
            int k1 = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
            for (int k = k0; k <= k1; ++k) ts.push_back(std::pow(10.0, k));
            if (ts.empty()) ts = {lo, hi};
        } else {
            for (int i = 0; i <= 4; ++i) ts.push_back(lo + (hi - lo) * i / 4.0);
        }
        return ts;
    };
    for (double t : ticks(x_lo, x_hi, axes.log_x)) {
        double x = map_x(t);
        out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(px_b) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
               fmt(px_b + 5.0) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(px_b + 18.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + fmt_tick(t) +
               "</text>\n";
    }
    for (double t : ticks(y_lo, y_hi, axes.log_y)) {
        double y = map_y(t);
        out += "<line x1=\"" + fmt(px_l - 5.0) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(px_l) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fmt(px_l - 8.0) + "\" y=\"" + fmt(y + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt_tick(t) +
               "</text>\n";
    }

    out += "<text x=\"" + fmt(0.5 * (px_l + px_r)) + "\" y=\"" + fmt(axes.height - 10.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + axes.x_label +
           "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt(0.5 * (px_t + px_b)) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 " +
           fmt(0.5 * (px_t + px_b)) + ")\">" + axes.y_label + "</text>\n";

    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPaletteSize];
        std::string pts;
        for (const CurvePoint& p : series[s].points) {
            double x = static_cast<double>(p.n), y = p.value;
            if ((axes.log_x && x <= 0.0) || (axes.log_y && y <= 0.0)) continue;
            if (!pts.empty()) pts += ' ';
            pts += fmt(map_x(x)) + "," + fmt(map_y(y));
        }
        if (!pts.empty())
            out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        for (const CurvePoint& p : series[s].points) {
            double x = static_cast<double>(p.n), y = p.value;
            if ((axes.log_x && x <= 0.0) || (axes.log_y && y <= 0.0)) continue;
            out += "<circle cx=\"" + fmt(map_x(x)) + "\" cy=\"" + fmt(map_y(y)) + "\" r=\"3\" fill=\"" +
                   std::string(color) + "\"/>\n";
        }
        // Legend entry.
        double ly = px_t + 16.0 * static_cast<double>(s);
        out += "<line x1=\"" + fmt(px_r - 150.0) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
               fmt(px_r - 130.0) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fmt(px_r - 124.0) + "\" y=\"" + fmt(ly + 4.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + series[s].label + "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace priorisk
