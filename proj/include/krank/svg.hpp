#pragma once

// Bare-bones SVG 1.1 line plots: axes, one polyline per series, tick marks.

#include <string>
#include <vector>

namespace krank {

struct PlotSeries {
  std::string label;
  std::string color = "black";
  std::vector<double> x, y;
};

struct Plot {
  std::string title;
  std::string x_label, y_label;
  std::vector<PlotSeries> series;
  std::vector<double> ticks;  // x positions marked on the axis (sign changes)
  int width = 640, height = 400;
};

/// Standalone SVG document. Non-finite points break the polyline.
std::string render_svg(const Plot& plot);

std::string xml_escape(const std::string& s);

}  // namespace krank
