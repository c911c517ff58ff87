#pragma once

#include <string>
#include <vector>

#include "priorisk/experiments.hpp"

namespace priorisk {

struct AxesConfig {
    double width = 760.0, height = 520.0;
    bool log_x = false, log_y = false;
    std::string x_label = "n";
    std::string y_label = "value";
    std::string title;
};

// Pixel coordinate of v on [lo_px, hi_px] given the data range [lo, hi];
// logarithmic axes map log10(v) affinely. Exposed so plots can be checked
// against an independent recomputation.
double svg_map(double v, double lo, double hi, double lo_px, double hi_px, bool log_scale);

// Self-contained SVG line chart: polyline plus markers per series, axis
// ticks, legend. Non-positive values are dropped on logarithmic axes.
std::string emit_svg(const std::vector<CurveSeries>& series, const AxesConfig& axes);

}  // namespace priorisk
