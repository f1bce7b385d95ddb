#include "ridgeforge/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ridgeforge/errors.hpp"

namespace ridgeforge {

namespace {

constexpr double view_width = 800.0;
constexpr double view_height = 600.0;
constexpr double margin_left = 72.0;
constexpr double margin_right = 24.0;
constexpr double margin_top = 48.0;
constexpr double margin_bottom = 56.0;

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                         "#bcbd22", "#e377c2", "#4b0082"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void widen_if_degenerate() {
        if (lo > hi) {  // nothing finite at all
            lo = 0.0;
            hi = 1.0;
        } else if (lo == hi) {
            const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
            lo -= pad;
            hi += pad;
        }
    }
};

// Tick spacing of the form {1, 2, 5} x 10^k covering roughly five steps.
double nice_step(double span) {
    const double raw = span / 5.0;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    const double residual = raw / magnitude;
    if (residual < 1.5) return magnitude;
    if (residual < 3.5) return 2.0 * magnitude;
    if (residual < 7.5) return 5.0 * magnitude;
    return 10.0 * magnitude;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v == 0.0 ? 0.0 : v);
    return buf;
}

} // namespace

void write_line_chart(const std::string& path,
                      const std::vector<SvgSeries>& series,
                      const SvgOptions& options) {
    Range xr;
    Range yr;
    for (const auto& s : series) {
        for (double v : s.x) xr.include(v);
        for (double v : s.y) yr.include(v);
    }
    if (options.reference_line) yr.include(options.reference_value);
    if (options.reference_point) {
        xr.include(options.reference_x);
        yr.include(options.reference_y);
    }
    xr.widen_if_degenerate();
    yr.widen_if_degenerate();

    const double plot_w = view_width - margin_left - margin_right;
    const double plot_h = view_height - margin_top - margin_bottom;
    auto px = [&](double v) {
        return margin_left + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
    };
    auto py = [&](double v) {
        return margin_top + (yr.hi - v) / (yr.hi - yr.lo) * plot_h;
    };

    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write svg file: " + path);
    out.precision(2);
    out << std::fixed;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
           "height=\"600\" viewBox=\"0 0 800 600\">\n";
    out << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    if (!options.title.empty())
        out << "<text x=\"400\" y=\"26\" font-family=\"sans-serif\" "
               "font-size=\"16\" text-anchor=\"middle\">"
            << options.title << "</text>\n";

    // Gridlines and tick labels.
    const double x_step = nice_step(xr.hi - xr.lo);
    const double y_step = nice_step(yr.hi - yr.lo);
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double v = std::ceil(xr.lo / x_step) * x_step; v <= xr.hi + 1e-9 * x_step;
         v += x_step) {
        const double x = px(v);
        out << "<line x1=\"" << x << "\" y1=\"" << margin_top << "\" x2=\"" << x
            << "\" y2=\"" << margin_top + plot_h
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << margin_top + plot_h + 18
            << "\" text-anchor=\"middle\">" << tick_label(v) << "</text>\n";
    }
    for (double v = std::ceil(yr.lo / y_step) * y_step; v <= yr.hi + 1e-9 * y_step;
         v += y_step) {
        const double y = py(v);
        out << "<line x1=\"" << margin_left << "\" y1=\"" << y << "\" x2=\""
            << margin_left + plot_w << "\" y2=\"" << y
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << margin_left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\">" << tick_label(v) << "</text>\n";
    }
    out << "</g>\n";

    // Axes.
    out << "<rect x=\"" << margin_left << "\" y=\"" << margin_top << "\" width=\""
        << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"1\"/>\n";
    if (!options.x_label.empty())
        out << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\""
            << view_height - 12
            << "\" font-family=\"sans-serif\" font-size=\"13\" "
               "text-anchor=\"middle\">"
            << options.x_label << "</text>\n";
    if (!options.y_label.empty())
        out << "<text x=\"18\" y=\"" << margin_top + plot_h / 2
            << "\" font-family=\"sans-serif\" font-size=\"13\" "
               "text-anchor=\"middle\" transform=\"rotate(-90 18 "
            << margin_top + plot_h / 2 << ")\">" << options.y_label
            << "</text>\n";

    if (options.reference_line) {
        const double y = py(options.reference_value);
        out << "<line x1=\"" << margin_left << "\" y1=\"" << y << "\" x2=\""
            << margin_left + plot_w << "\" y2=\"" << y
            << "\" stroke=\"#000\" stroke-width=\"1.2\" "
               "stroke-dasharray=\"6 4\"/>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& data = series[s];
        const std::size_t count = std::min(data.x.size(), data.y.size());
        if (count == 0) continue;
        out << "<polyline fill=\"none\" stroke=\""
            << palette[s % (sizeof(palette) / sizeof(palette[0]))]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < count; ++i)
            out << px(data.x[i]) << ',' << py(data.y[i]) << ' ';
        out << "\"/>\n";
    }

    if (options.reference_point) {
        out << "<circle cx=\"" << px(options.reference_x) << "\" cy=\""
            << py(options.reference_y)
            << "\" r=\"4\" fill=\"#000\"/>\n";
    }

    // Legend for labeled series.
    double legend_y = margin_top + 14;
    for (std::size_t s = 0; s < series.size(); ++s) {
        if (series[s].label.empty()) continue;
        const double x0 = margin_left + plot_w - 150;
        out << "<line x1=\"" << x0 << "\" y1=\"" << legend_y - 4 << "\" x2=\""
            << x0 + 24 << "\" y2=\"" << legend_y - 4 << "\" stroke=\""
            << palette[s % (sizeof(palette) / sizeof(palette[0]))]
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << x0 + 30 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << series[s].label << "</text>\n";
        legend_y += 18;
    }

    out << "</svg>\n";
    if (!out)
        throw DataError("failed while writing svg file: " + path);
}

} // namespace ridgeforge
