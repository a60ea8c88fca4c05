#pragma once

#include <string>
#include <vector>

namespace mid {

struct Polyline {
  std::string label;
  std::vector<double> x, y;  // NaN in y breaks the line into segments
};

// Cell values index into the palette; negative values are left blank.
struct Raster {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  int nx = 0, ny = 0;
  std::vector<int> cells;  // row-major, y outer
  std::vector<std::string> legend;  // one entry per palette index
};

struct Figure {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Polyline> lines;
  Raster raster;  // drawn when nx, ny > 0
};

// Fixed 800x600 viewport, one <polyline> per series.
std::string render_svg(const Figure& fig);

}  // namespace mid
