#ifndef QTRAJ_TOOLS_SVG_HPP
#define QTRAJ_TOOLS_SVG_HPP

// Minimal hand-emitted SVG line charts: polylines, axis ticks, legend
// and point markers.  No plotting dependency, fully deterministic.

#include <string>
#include <vector>

namespace qtraj::svg {

struct Point {
    double x;
    double y;
};

struct Series {
    std::string label;
    std::vector<Point> points;
    std::string color = "#1f5fbf";
    bool dashed = false;
};

struct MarkerSet {
    std::string label;
    std::vector<Point> points;
    std::string color = "#000000";
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<MarkerSet> markers;
    int width = 760;
    int height = 540;
};

// Renders the chart; throws std::runtime_error on I/O failure.
void write_chart(const std::string& path, const Chart& chart);

} // namespace qtraj::svg

#endif
