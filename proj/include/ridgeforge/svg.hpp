#pragma once

#include <string>
#include <vector>

namespace ridgeforge {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    // Horizontal dashed black line marking a baseline value.
    bool reference_line = false;
    double reference_value = 0.0;
    // Filled black point marking a baseline, drawn at (x, y).
    bool reference_point = false;
    double reference_x = 0.0;
    double reference_y = 0.0;
};

// Writes a static 800x600 line chart. Axes are scaled to cover every series
// plus any reference markers.
void write_line_chart(const std::string& path,
                      const std::vector<SvgSeries>& series,
                      const SvgOptions& options);

} // namespace ridgeforge
