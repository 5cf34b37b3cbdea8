#include "svg_boxplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

namespace fpls::svg {

namespace {

void appendf(std::string& out, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    const int n = std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    out.append(buf, static_cast<std::size_t>(std::min<int>(n, sizeof buf - 1)));
}

struct Scale {
    double lo, hi, plot_top, plot_bottom;
    double y(double v) const {
        return plot_bottom - (v - lo) / (hi - lo) * (plot_bottom - plot_top);
    }
};

// round tick step to 1/2/5 x 10^k
double tick_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r < 1.5) return mag;
    if (r < 3.5) return 2.0 * mag;
    if (r < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

}  // namespace

std::string render_boxplots(const std::vector<Panel>& panels) {
    const double panel_w = 300.0, panel_h = 340.0;
    const double margin_l = 52.0, margin_r = 14.0, margin_t = 34.0, margin_b = 58.0;
    const double width = panel_w * static_cast<double>(panels.size());

    std::string out;
    appendf(out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
            "viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\">\n",
            width, panel_h, width, panel_h);
    appendf(out, "<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", width, panel_h);

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const Panel& panel = panels[pi];
        const double x0 = panel_w * static_cast<double>(pi);
        double lo = 0.0, hi = 1.0;
        if (!panel.boxes.empty()) {
            lo = panel.boxes.front().min;
            hi = panel.boxes.front().max;
            for (const Box& b : panel.boxes) {
                lo = std::min(lo, b.min);
                hi = std::max(hi, b.max);
            }
        }
        if (hi - lo < 1e-12) {
            hi += 0.5;
            lo -= 0.5;
        }
        const double pad = 0.06 * (hi - lo);
        Scale sc{lo - pad, hi + pad, margin_t, panel_h - margin_b};

        appendf(out, "<text x=\"%.1f\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">",
                x0 + margin_l + (panel_w - margin_l - margin_r) / 2.0);
        out += panel.title;
        out += "</text>\n";

        // axis + ticks
        appendf(out,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                x0 + margin_l, sc.plot_top, x0 + margin_l, sc.plot_bottom);
        const double step = tick_step(sc.hi - sc.lo);
        for (double v = std::ceil(sc.lo / step) * step; v <= sc.hi + 1e-12; v += step) {
            const double y = sc.y(v);
            appendf(out,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                    x0 + margin_l - 4.0, y, x0 + margin_l, y);
            appendf(out,
                    "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"10\">%.2f"
                    "</text>\n",
                    x0 + margin_l - 7.0, y + 3.5, v);
        }

        const double inner_w = panel_w - margin_l - margin_r;
        const double slot = inner_w / static_cast<double>(std::max<std::size_t>(panel.boxes.size(), 1));
        for (std::size_t bi = 0; bi < panel.boxes.size(); ++bi) {
            const Box& b = panel.boxes[bi];
            const double cx = x0 + margin_l + slot * (static_cast<double>(bi) + 0.5);
            const double bw = std::min(44.0, slot * 0.6);
            // whiskers
            appendf(out,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                    cx, sc.y(b.min), cx, sc.y(b.q1));
            appendf(out,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                    cx, sc.y(b.q3), cx, sc.y(b.max));
            appendf(out,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                    cx - bw / 4.0, sc.y(b.min), cx + bw / 4.0, sc.y(b.min));
            appendf(out,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                    cx - bw / 4.0, sc.y(b.max), cx + bw / 4.0, sc.y(b.max));
            // box and median
            appendf(out,
                    "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"#cfe2f3\" "
                    "stroke=\"black\"/>\n",
                    cx - bw / 2.0, sc.y(b.q3), bw, std::max(0.5, sc.y(b.q1) - sc.y(b.q3)));
            appendf(out,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\" "
                    "stroke-width=\"2\"/>\n",
                    cx - bw / 2.0, sc.y(b.median), cx + bw / 2.0, sc.y(b.median));
            // label, rotated to fit
            appendf(out,
                    "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"10\" "
                    "transform=\"rotate(-30 %.1f %.1f)\">",
                    cx + 10.0, panel_h - margin_b + 16.0, cx + 10.0, panel_h - margin_b + 16.0);
            out += b.label;
            out += "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace fpls::svg
