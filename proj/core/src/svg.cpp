#include "mid/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mid {
namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 160, kTop = 40, kBottom = 60;

const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
constexpr int kPaletteSize = sizeof kPalette / sizeof kPalette[0];

std::string fmt(double v, int prec = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  std::string s = buf;
  if (s == "-0.00" || s == "-0.0" || s == "-0") s = s.substr(1);
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

struct Box {
  double x0, x1, y0, y1;
};

Box bounds(const Figure& fig) {
  Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  if (fig.raster.nx > 0 && fig.raster.ny > 0) {
    b = {fig.raster.x_min, fig.raster.x_max, fig.raster.y_min, fig.raster.y_max};
  }
  for (const auto& l : fig.lines) {
    for (std::size_t i = 0; i < l.x.size() && i < l.y.size(); ++i) {
      if (!std::isfinite(l.x[i]) || !std::isfinite(l.y[i])) continue;
      b.x0 = std::min(b.x0, l.x[i]);
      b.x1 = std::max(b.x1, l.x[i]);
      b.y0 = std::min(b.y0, l.y[i]);
      b.y1 = std::max(b.y1, l.y[i]);
    }
  }
  if (!std::isfinite(b.x0)) b = {0, 1, 0, 1};
  if (b.x1 - b.x0 <= 0) { b.x0 -= 0.5; b.x1 += 0.5; }
  if (b.y1 - b.y0 <= 0) { b.y0 -= 0.5; b.y1 += 0.5; }
  return b;
}

}  // namespace

std::string render_svg(const Figure& fig) {
  const Box b = bounds(fig);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - b.x0) / (b.x1 - b.x0) * pw; };
  auto py = [&](double y) { return kTop + (b.y1 - y) / (b.y1 - b.y0) * ph; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  s += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  s += "<text class=\"title\" x=\"" + fmt(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
       escape(fig.title) + "</text>\n";

  const Raster& r = fig.raster;
  if (r.nx > 0 && r.ny > 0) {
    const double cw = pw / r.nx, ch = ph / r.ny;
    s += "<g class=\"raster\" shape-rendering=\"crispEdges\">\n";
    // horizontal runs of equal cells share one rect
    for (int iy = 0; iy < r.ny; ++iy) {
      const int* row = r.cells.data() + static_cast<std::size_t>(iy) * r.nx;
      for (int ix = 0; ix < r.nx;) {
        const int v = row[ix];
        int end = ix + 1;
        while (end < r.nx && row[end] == v) ++end;
        if (v >= 0) {
          s += "<rect x=\"" + fmt(kLeft + ix * cw) + "\" y=\"" + fmt(kTop + (r.ny - 1 - iy) * ch) +
               "\" width=\"" + fmt((end - ix) * cw + 0.01) + "\" height=\"" + fmt(ch + 0.01) + "\" fill=\"" +
               kPalette[v % kPaletteSize] + "\"/>\n";
        }
        ix = end;
      }
    }
    s += "</g>\n";
  }

  // axes and ticks
  s += "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  s += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) + "\"/>\n";
  s += "</g>\n<g class=\"ticks\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = b.x0 + (b.x1 - b.x0) * i / 4.0;
    const double yv = b.y0 + (b.y1 - b.y0) * i / 4.0;
    s += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(kTop + ph + 16) + "\" text-anchor=\"middle\">" + fmt(xv) + "</text>\n";
    s += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(py(yv) + 4) + "\" text-anchor=\"end\">" + fmt(yv) + "</text>\n";
  }
  s += "</g>\n";
  s += "<text class=\"xlabel\" x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 16) +
       "\" text-anchor=\"middle\" font-size=\"13\">" + escape(fig.x_label) + "</text>\n";
  s += "<text class=\"ylabel\" x=\"20\" y=\"" + fmt(kTop + ph / 2) + "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 " +
       fmt(kTop + ph / 2) + ")\">" + escape(fig.y_label) + "</text>\n";

  // one polyline per finite run of a series
  for (std::size_t li = 0; li < fig.lines.size(); ++li) {
    const auto& l = fig.lines[li];
    const char* color = kPalette[li % kPaletteSize];
    std::string pts;
    auto flush = [&] {
      if (pts.empty()) return;
      s += "<polyline class=\"series\" data-label=\"" + escape(l.label) + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
      pts.clear();
    };
    for (std::size_t i = 0; i < l.x.size() && i < l.y.size(); ++i) {
      if (!std::isfinite(l.x[i]) || !std::isfinite(l.y[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += fmt(px(l.x[i])) + "," + fmt(py(l.y[i]));
    }
    flush();
  }

  // legend
  s += "<g class=\"legend\" font-size=\"11\">\n";
  double ly = kTop + 10;
  for (std::size_t li = 0; li < fig.lines.size(); ++li) {
    s += "<line x1=\"" + fmt(kWidth - kRight + 10) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(kWidth - kRight + 30) +
         "\" y2=\"" + fmt(ly) + "\" stroke=\"" + kPalette[li % kPaletteSize] + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + fmt(kWidth - kRight + 34) + "\" y=\"" + fmt(ly + 4) + "\">" + escape(fig.lines[li].label) + "</text>\n";
    ly += 16;
  }
  for (std::size_t i = 0; i < r.legend.size(); ++i) {
    s += "<rect x=\"" + fmt(kWidth - kRight + 10) + "\" y=\"" + fmt(ly - 6) + "\" width=\"12\" height=\"12\" fill=\"" +
         kPalette[i % kPaletteSize] + "\"/>\n";
    s += "<text x=\"" + fmt(kWidth - kRight + 28) + "\" y=\"" + fmt(ly + 4) + "\">" + escape(r.legend[i]) + "</text>\n";
    ly += 16;
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace mid
