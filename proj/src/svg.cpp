#include "datareq/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace datareq {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 160.0; // room for the legend
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

constexpr std::array<const char*, 6> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
};

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(6) << v;
    return ss.str();
}

} // namespace

void write_line_chart(std::ostream& out, const ChartSpec& spec,
                      const std::vector<ChartSeries>& series) {
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = x_min;
    double y_max = -x_min;
    for (const ChartSeries& s : series) {
        for (const auto& [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (!(x_min < x_max)) { x_min -= 1.0; x_max += 1.0; }
    if (spec.draw_guide) {
        y_min = std::min(y_min, spec.guide_y);
        y_max = std::max(y_max, spec.guide_y);
    }
    if (!(y_min < y_max)) { y_min -= 1.0; y_max += 1.0; }
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto to_x = [&](double x) {
        return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w;
    };
    const auto to_y = [&](double y) {
        return kMarginTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";

    // Frame and axis ticks.
    out << "<rect x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(kMarginTop)
        << "\" width=\"" << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double fx = x_min + (x_max - x_min) * i / kTicks;
        const double px = to_x(fx);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(kMarginTop + plot_h)
            << "\" x2=\"" << fmt(px) << "\" y2=\""
            << fmt(kMarginTop + plot_h + 5) << "\" stroke=\"#333333\"/>\n"
            << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(kMarginTop + plot_h + 20)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(fx)
            << "</text>\n";
        const double fy = y_min + (y_max - y_min) * i / kTicks;
        const double py = to_y(fy);
        out << "<line x1=\"" << fmt(kMarginLeft - 5) << "\" y1=\"" << fmt(py)
            << "\" x2=\"" << fmt(kMarginLeft) << "\" y2=\"" << fmt(py)
            << "\" stroke=\"#333333\"/>\n"
            << "<text x=\"" << fmt(kMarginLeft - 9) << "\" y=\"" << fmt(py + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(fy)
            << "</text>\n";
    }

    if (spec.draw_guide) {
        const double gy = to_y(spec.guide_y);
        out << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(gy)
            << "\" x2=\"" << fmt(kMarginLeft + plot_w) << "\" y2=\"" << fmt(gy)
            << "\" stroke=\"black\" stroke-dasharray=\"6,4\" stroke-width=\"1\"/>\n";
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : series[i].points) {
            out << fmt(to_x(x)) << ',' << fmt(to_y(y)) << ' ';
        }
        out << "\"/>\n";
        const double ly = kMarginTop + 16.0 + 18.0 * static_cast<double>(i);
        out << "<line x1=\"" << fmt(kMarginLeft + plot_w + 12) << "\" y1=\""
            << fmt(ly - 4) << "\" x2=\"" << fmt(kMarginLeft + plot_w + 34)
            << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << fmt(kMarginLeft + plot_w + 40) << "\" y=\""
            << fmt(ly) << "\" font-size=\"12\">" << escape_xml(series[i].label)
            << "</text>\n";
    }

    out << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\"22\" "
           "font-size=\"15\" text-anchor=\"middle\">"
        << escape_xml(spec.title) << "</text>\n"
        << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\""
        << fmt(kHeight - 12) << "\" font-size=\"13\" text-anchor=\"middle\">"
        << escape_xml(spec.x_label) << "</text>\n"
        << "<text x=\"18\" y=\"" << fmt(kMarginTop + plot_h / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << fmt(kMarginTop + plot_h / 2) << ")\">" << escape_xml(spec.y_label)
        << "</text>\n"
        << "</svg>\n";
}

} // namespace datareq
