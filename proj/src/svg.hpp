// Minimal self-contained SVG line charts: fixed 800x600 viewBox, axis
// ticks, one polyline per series. CSV files remain the ground truth;
// these are quick-look plots with no external dependencies.

#pragma once

#include <string>
#include <vector>

namespace shockwave {

struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
};

struct SvgOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
};

void write_svg_plot(const std::string& path, const SvgOptions& options,
                    const std::vector<SvgSeries>& series);

}  // namespace shockwave
