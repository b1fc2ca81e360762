#pragma once

#include <string>
#include <vector>

namespace nearconvex {

// One curve (polyline) or one vertical band per x (lo/hi filled region).
struct PlotSeries {
  std::string label;
  bool band = false;
  std::vector<double> x;
  std::vector<double> y;   // curve values, or band lower edge
  std::vector<double> y2;  // band upper edge (band only)
};

// Static 800x600 SVG with a fixed element order; identical inputs produce
// identical bytes.  An empty series list yields valid empty axes.
std::string render_plot(const std::string& title, const std::vector<PlotSeries>& series);

void emit_plot(const std::string& path, const std::string& title,
               const std::vector<PlotSeries>& series);

}  // namespace nearconvex
