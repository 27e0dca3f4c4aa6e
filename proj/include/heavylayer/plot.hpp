#pragma once

// Minimal self-contained SVG line plots for the compare subcommand. Plotting
// failures are reported through the return value and never abort a run.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace heavylayer {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

inline bool write_svg_plot(const std::string& path, const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           const std::vector<PlotSeries>& series) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                 "#9467bd", "#ff7f0e", "#8c564b"};
  const double width = 760, height = 520;
  const double ml = 70, mr = 25, mt = 45, mb = 55;

  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (!(x0 < x1)) return false;
  if (!(y0 < y1)) {
    y0 -= 1.0;
    y1 += 1.0;
  }
  const double ypad = 0.05 * (y1 - y0);
  y0 -= ypad;
  y1 += ypad;

  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (width - ml - mr); };
  auto py = [&](double y) {
    return height - mb - (y - y0) / (y1 - y0) * (height - mt - mb);
  };

  std::ofstream out(path);
  if (!out) return false;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
      << height << "' viewBox='0 0 " << width << " " << height << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << width / 2 << "' y='25' text-anchor='middle' "
      << "font-family='sans-serif' font-size='16'>" << title << "</text>\n";

  out << "<rect x='" << ml << "' y='" << mt << "' width='" << width - ml - mr
      << "' height='" << height - mt - mb << "' fill='none' stroke='black'/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + k * (x1 - x0) / 5;
    const double yv = y0 + k * (y1 - y0) / 5;
    char xb[32], yb[32];
    std::snprintf(xb, sizeof(xb), "%.3g", xv);
    std::snprintf(yb, sizeof(yb), "%.3g", yv);
    out << "<line x1='" << px(xv) << "' y1='" << height - mb << "' x2='" << px(xv)
        << "' y2='" << height - mb + 5 << "' stroke='black'/>\n"
        << "<text x='" << px(xv) << "' y='" << height - mb + 20
        << "' text-anchor='middle' font-family='sans-serif' font-size='11'>" << xb
        << "</text>\n"
        << "<line x1='" << ml - 5 << "' y1='" << py(yv) << "' x2='" << ml << "' y2='"
        << py(yv) << "' stroke='black'/>\n"
        << "<text x='" << ml - 8 << "' y='" << py(yv) + 4
        << "' text-anchor='end' font-family='sans-serif' font-size='11'>" << yb
        << "</text>\n";
  }
  out << "<text x='" << (ml + width - mr) / 2 << "' y='" << height - 12
      << "' text-anchor='middle' font-family='sans-serif' font-size='13'>" << x_label
      << "</text>\n"
      << "<text x='18' y='" << (mt + height - mb) / 2
      << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
      << "transform='rotate(-90 18 " << (mt + height - mb) / 2 << ")'>" << y_label
      << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = colors[si % 6];
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (const auto& [x, y] : series[si].points)
      if (std::isfinite(x) && std::isfinite(y)) out << px(x) << ',' << py(y) << ' ';
    out << "'/>\n";
    out << "<text x='" << width - mr - 10 << "' y='" << mt + 18 + 16 * si
        << "' text-anchor='end' font-family='sans-serif' font-size='12' fill='"
        << color << "'>" << series[si].label << "</text>\n";
  }
  out << "</svg>\n";
  return static_cast<bool>(out);
}

}  // namespace heavylayer
