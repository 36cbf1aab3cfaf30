#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "report.hpp"

namespace shockwave {

namespace {

constexpr double kW = 800.0, kH = 600.0;
constexpr double kLeft = 80.0, kRight = 25.0, kTop = 45.0, kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string fmt_pos(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_svg_plot(const std::string& path, const SvgOptions& options,
                    const std::vector<SvgSeries>& series) {
    // Data ranges in (possibly log10) plot coordinates.
    auto tx = [&](double x) { return options.log_x ? std::log10(x) : x; };
    auto ty = [&](double y) { return options.log_y ? std::log10(y) : y; };
    auto usable = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return false;
        if (options.log_x && !(x > 0.0)) return false;
        if (options.log_y && !(y > 0.0)) return false;
        return true;
    };

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const SvgSeries& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            x_lo = std::min(x_lo, tx(s.x[i]));
            x_hi = std::max(x_hi, tx(s.x[i]));
            y_lo = std::min(y_lo, ty(s.y[i]));
            y_hi = std::max(y_hi, ty(s.y[i]));
        }
    }
    if (!(x_lo <= x_hi)) {
        x_lo = 0.0;
        x_hi = 1.0;
    }
    if (!(y_lo <= y_hi)) {
        y_lo = 0.0;
        y_hi = 1.0;
    }
    if (x_hi == x_lo) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi == y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    const double y_pad = 0.04 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    const double pw = kW - kLeft - kRight;
    const double ph = kH - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (tx(x) - x_lo) / (x_hi - x_lo) * pw; };
    auto py = [&](double y) { return kTop + ph - (ty(y) - y_lo) / (y_hi - y_lo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
           "font-family=\"sans-serif\" font-size=\"13\">\n";
    svg << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    svg << "<text x=\"400\" y=\"25\" text-anchor=\"middle\" font-size=\"16\">" << options.title
        << "</text>\n";

    // Axes box and ticks.
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
        << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / kTicks;
        const double gx = kLeft + pw * i / kTicks;
        const double label_x = options.log_x ? std::pow(10.0, fx) : fx;
        svg << "<line x1=\"" << fmt_pos(gx) << "\" y1=\"" << kTop + ph << "\" x2=\"" << fmt_pos(gx)
            << "\" y2=\"" << kTop + ph + 6 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt_pos(gx) << "\" y=\"" << kTop + ph + 22
            << "\" text-anchor=\"middle\">" << fmt_tick(label_x) << "</text>\n";

        const double fy = y_lo + (y_hi - y_lo) * i / kTicks;
        const double gy = kTop + ph - ph * i / kTicks;
        const double label_y = options.log_y ? std::pow(10.0, fy) : fy;
        svg << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << fmt_pos(gy) << "\" x2=\"" << kLeft
            << "\" y2=\"" << fmt_pos(gy) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kLeft - 10 << "\" y=\"" << fmt_pos(gy + 4)
            << "\" text-anchor=\"end\">" << fmt_tick(label_y) << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">"
        << options.x_label << "</text>\n";
    svg << "<text x=\"18\" y=\"" << kTop + ph / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << kTop + ph / 2 << ")\">"
        << options.y_label << "</text>\n";

    // Series polylines (broken at unusable points).
    for (std::size_t si = 0; si < series.size(); ++si) {
        const SvgSeries& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string points;
        auto flush = [&]() {
            if (!points.empty()) {
                svg << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.2\" points=\"" << points << "\"/>\n";
                points.clear();
            }
        };
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) {
                flush();
                continue;
            }
            points += fmt_pos(px(s.x[i])) + "," + fmt_pos(py(s.y[i])) + " ";
        }
        flush();
    }

    // Legend for small series counts.
    if (series.size() <= 8) {
        double ly = kTop + 14;
        for (std::size_t si = 0; si < series.size(); ++si) {
            if (series[si].label.empty()) continue;
            const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
            svg << "<line x1=\"" << kLeft + pw - 130 << "\" y1=\"" << ly - 4 << "\" x2=\""
                << kLeft + pw - 110 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
                << "\" stroke-width=\"2\"/>\n";
            svg << "<text x=\"" << kLeft + pw - 104 << "\" y=\"" << ly << "\">" << series[si].label
                << "</text>\n";
            ly += 16;
        }
    }

    svg << "</svg>\n";
    write_text_file(path, svg.str());
}

}  // namespace shockwave
