#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace datareq {

struct ChartSeries {
    std::string label;
    std::vector<std::pair<double, double>> points; // (x, y)
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    double guide_y = 1.0; // dashed horizontal reference line
    bool draw_guide = true;
};

// Renders a static line chart (one polyline per series, fixed 800x500
// viewport, no scripts) to the stream. Self-contained so plots need no
// external renderer.
void write_line_chart(std::ostream& out, const ChartSpec& spec,
                      const std::vector<ChartSeries>& series);

} // namespace datareq
