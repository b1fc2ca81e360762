#include "nearconvex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "nearconvex/errors.hpp"
#include "nearconvex/numfmt.hpp"

namespace nearconvex {

namespace {

constexpr double kW = 800, kH = 600;
constexpr double kMargin = 60;

struct Mapper {
  double x0, x1, y0, y1;
  double px(double x) const {
    return kMargin + (x - x0) / (x1 - x0) * (kW - 2 * kMargin);
  }
  double py(double y) const {
    return kH - kMargin - (y - y0) / (y1 - y0) * (kH - 2 * kMargin);
  }
};

const char* kColors[] = {"#1f6fb2", "#c0392b", "#2e8b57", "#8e44ad", "#b8860b"};

}  // namespace

std::string render_plot(const std::string& title,
                        const std::vector<PlotSeries>& series) {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool any = false;
  for (const PlotSeries& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      double ys[2] = {s.y[i], s.band ? s.y2[i] : s.y[i]};
      for (double v : ys) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(v)) continue;
        if (!any) {
          x0 = x1 = s.x[i];
          y0 = y1 = v;
          any = true;
        } else {
          x0 = std::min(x0, s.x[i]);
          x1 = std::max(x1, s.x[i]);
          y0 = std::min(y0, v);
          y1 = std::max(y1, v);
        }
      }
    }
  }
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  double xpad = 0.05 * (x1 - x0), ypad = 0.05 * (y1 - y0);
  Mapper m{x0 - xpad, x1 + xpad, y0 - ypad, y1 + ypad};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-size=\"18\">" + title +
         "</text>\n";
  // axes
  svg += "<line x1=\"" + fmt_num(kMargin) + "\" y1=\"" + fmt_num(kH - kMargin) +
         "\" x2=\"" + fmt_num(kW - kMargin) + "\" y2=\"" + fmt_num(kH - kMargin) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt_num(kMargin) + "\" y1=\"" + fmt_num(kMargin) + "\" x2=\"" +
         fmt_num(kMargin) + "\" y2=\"" + fmt_num(kH - kMargin) +
         "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double tx = m.x0 + (m.x1 - m.x0) * i / 4;
    double ty = m.y0 + (m.y1 - m.y0) * i / 4;
    svg += "<text x=\"" + fmt_num(m.px(tx)) + "\" y=\"" + fmt_num(kH - kMargin + 20) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + fmt_num(tx) + "</text>\n";
    svg += "<text x=\"" + fmt_num(kMargin - 8) + "\" y=\"" + fmt_num(m.py(ty) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + fmt_num(ty) + "</text>\n";
  }

  int color_idx = 0;
  for (const PlotSeries& s : series) {
    const char* color = kColors[color_idx % 5];
    ++color_idx;
    if (s.band) {
      std::string pts;
      for (size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        pts += fmt_num(m.px(s.x[i])) + "," + fmt_num(m.py(s.y[i])) + " ";
      }
      for (size_t i = s.x.size(); i-- > 0;) {
        if (!std::isfinite(s.y2[i])) continue;
        pts += fmt_num(m.px(s.x[i])) + "," + fmt_num(m.py(s.y2[i])) + " ";
      }
      if (!pts.empty())
        svg += "<polygon points=\"" + pts + "\" fill=\"" + color +
               "\" fill-opacity=\"0.25\" stroke=\"" + color + "\"/>\n";
    } else {
      std::string pts;
      for (size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        pts += fmt_num(m.px(s.x[i])) + "," + fmt_num(m.py(s.y[i])) + " ";
      }
      if (!pts.empty())
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
    }
    if (!s.label.empty())
      svg += "<text x=\"" + fmt_num(kW - kMargin) + "\" y=\"" +
             fmt_num(kMargin + 16.0 * color_idx) +
             "\" text-anchor=\"end\" font-size=\"12\" fill=\"" + color + "\">" +
             s.label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const std::string& path, const std::string& title,
               const std::vector<PlotSeries>& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write plot to '" + path + "'");
  out << render_plot(title, series);
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace nearconvex
