#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace so3kde::app {

struct Series {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
};

struct PlotSpec {
  std::string title, x_label, y_label;
  bool log_x = false, log_y = false;
};

/// Polylines on a framed plot with tick labels; log axes take log10 of the
/// data and drop nonpositive points.
void write_svg_plot(std::ostream& os, const PlotSpec& spec, const std::vector<Series>& series);

/// Distinct colors for series i of n.
std::string palette(std::size_t i);

}  // namespace so3kde::app
