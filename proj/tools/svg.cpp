#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace qtraj::svg {

namespace {

struct Bounds {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double margin = 0.05 * (hi - lo);
            lo -= margin;
            hi += margin;
        }
    }
};

// Tick spacing of the form {1, 2, 5} * 10^k giving 4-8 intervals.
double nice_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    if (frac <= 1.5) return mag;
    if (frac <= 3.5) return 2.0 * mag;
    if (frac <= 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void write_chart(const std::string& path, const Chart& chart) {
    Bounds bx, by;
    for (const auto& s : chart.series)
        for (const auto& p : s.points) {
            bx.include(p.x);
            by.include(p.y);
        }
    for (const auto& m : chart.markers)
        for (const auto& p : m.points) {
            bx.include(p.x);
            by.include(p.y);
        }
    bx.pad();
    by.pad();

    const double ml = 72, mr = 20, mt = 40, mb = 52; // plot margins
    const double pw = chart.width - ml - mr;
    const double ph = chart.height - mt - mb;
    auto sx = [&](double x) { return ml + pw * (x - bx.lo) / (bx.hi - bx.lo); };
    auto sy = [&](double y) {
        return mt + ph * (by.hi - y) / (by.hi - by.lo);
    };

    std::string out;
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" "
        "height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        chart.width, chart.height, chart.width, chart.height);
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += fmt::format(
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
        "text-anchor=\"middle\">{}</text>\n",
        ml + pw / 2, escape(chart.title));

    // axes frame
    out += fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
        "stroke=\"#404040\"/>\n",
        ml, mt, pw, ph);

    // ticks and grid
    const double xs = nice_step(bx.hi - bx.lo);
    for (double v = std::ceil(bx.lo / xs) * xs; v <= bx.hi + 1e-12 * xs;
         v += xs) {
        const double px = sx(v);
        out += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" "
            "y2=\"{2:.2f}\" stroke=\"#d0d0d0\"/>\n",
            px, mt, mt + ph);
        out += fmt::format(
            "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" "
            "font-size=\"11\" text-anchor=\"middle\">{:g}</text>\n",
            px, mt + ph + 16, v + 0.0);
    }
    const double ys = nice_step(by.hi - by.lo);
    for (double v = std::ceil(by.lo / ys) * ys; v <= by.hi + 1e-12 * ys;
         v += ys) {
        const double py = sy(v);
        out += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" "
            "y2=\"{1:.2f}\" stroke=\"#d0d0d0\"/>\n",
            ml, py, ml + pw);
        out += fmt::format(
            "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" "
            "font-size=\"11\" text-anchor=\"end\">{:g}</text>\n",
            ml - 6, py + 4, v + 0.0);
    }

    // axis labels
    out += fmt::format(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" "
        "text-anchor=\"middle\">{}</text>\n",
        ml + pw / 2, chart.height - 12, escape(chart.x_label));
    out += fmt::format(
        "<text x=\"18\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" "
        "text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>\n",
        mt + ph / 2, mt + ph / 2, escape(chart.y_label));

    // data
    for (const auto& s : chart.series) {
        std::string pts;
        for (const auto& p : s.points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
            pts += fmt::format("{:.2f},{:.2f} ", sx(p.x), sy(p.y));
        }
        out += fmt::format(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" "
            "stroke-width=\"1.5\"{}/>\n",
            pts, s.color, s.dashed ? " stroke-dasharray=\"6 4\"" : "");
    }
    for (const auto& m : chart.markers)
        for (const auto& p : m.points)
            out += fmt::format(
                "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3.2\" fill=\"none\" "
                "stroke=\"{}\" stroke-width=\"1.4\"/>\n",
                sx(p.x), sy(p.y), m.color);

    // legend
    double ly = mt + 14;
    for (const auto& s : chart.series) {
        if (s.label.empty()) continue;
        out += fmt::format(
            "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" "
            "stroke=\"{3}\" stroke-width=\"1.5\"{4}/>\n",
            ml + 10, ly - 4, ml + 38, s.color,
            s.dashed ? " stroke-dasharray=\"6 4\"" : "");
        out += fmt::format(
            "<text x=\"{}\" y=\"{:.2f}\" font-family=\"sans-serif\" "
            "font-size=\"12\">{}</text>\n",
            ml + 44, ly, escape(s.label));
        ly += 16;
    }
    for (const auto& m : chart.markers) {
        if (m.label.empty()) continue;
        out += fmt::format(
            "<circle cx=\"{}\" cy=\"{:.2f}\" r=\"3.2\" fill=\"none\" "
            "stroke=\"{}\" stroke-width=\"1.4\"/>\n",
            ml + 24, ly - 4, m.color);
        out += fmt::format(
            "<text x=\"{}\" y=\"{:.2f}\" font-family=\"sans-serif\" "
            "font-size=\"12\">{}</text>\n",
            ml + 44, ly, escape(m.label));
        ly += 16;
    }

    out += "</svg>\n";

    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path + " for writing");
    file << out;
    if (!file) throw std::runtime_error("failed writing " + path);
}

} // namespace qtraj::svg
