#include "semdrift/util/svg.hpp"

#include <algorithm>
#include <sstream>

#include "semdrift/util/csv.hpp"

namespace semdrift::util {
namespace {

constexpr double kWidth = 640, kHeight = 400, kMargin = 50;

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string n(double v) { return fmt_real(v, 2); }

void frame(std::ostringstream& out, const std::string& title, const std::string& x_label,
           const std::string& y_label) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << n(kWidth) << "\" height=\""
      << n(kHeight) << "\">\n";
  out << "<text x=\"" << n(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\">" << xml_escape(title)
      << "</text>\n";
  out << "<line x1=\"" << n(kMargin) << "\" y1=\"" << n(kHeight - kMargin) << "\" x2=\""
      << n(kWidth - kMargin) << "\" y2=\"" << n(kHeight - kMargin) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << n(kMargin) << "\" y1=\"" << n(kMargin) << "\" x2=\"" << n(kMargin)
      << "\" y2=\"" << n(kHeight - kMargin) << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << n(kWidth / 2) << "\" y=\"" << n(kHeight - 10)
      << "\" text-anchor=\"middle\">" << xml_escape(x_label) << "</text>\n";
  out << "<text x=\"15\" y=\"" << n(kHeight / 2) << "\" transform=\"rotate(-90 15 "
      << n(kHeight / 2) << ")\" text-anchor=\"middle\">" << xml_escape(y_label) << "</text>\n";
}

}  // namespace

std::string svg_bar_chart(const std::vector<Bar>& bars, const std::string& title,
                          const std::string& x_label, const std::string& y_label) {
  std::ostringstream out;
  frame(out, title, x_label, y_label);
  if (!bars.empty()) {
    const double lo = bars.front().lo, hi = bars.back().hi;
    double top = 0;
    for (const auto& b : bars) top = std::max(top, b.height);
    if (top <= 0) top = 1;
    const double plot_w = kWidth - 2 * kMargin, plot_h = kHeight - 2 * kMargin;
    for (const auto& b : bars) {
      const double x = kMargin + (b.lo - lo) / (hi - lo) * plot_w;
      const double w = (b.hi - b.lo) / (hi - lo) * plot_w;
      const double h = b.height / top * plot_h;
      out << "<rect x=\"" << n(x) << "\" y=\"" << n(kHeight - kMargin - h) << "\" width=\"" << n(w)
          << "\" height=\"" << n(h) << "\" fill=\"steelblue\" stroke=\"white\"/>\n";
    }
    out << "<text x=\"" << n(kMargin) << "\" y=\"" << n(kHeight - kMargin + 15)
        << "\" text-anchor=\"middle\">" << n(lo) << "</text>\n";
    out << "<text x=\"" << n(kWidth - kMargin) << "\" y=\"" << n(kHeight - kMargin + 15)
        << "\" text-anchor=\"middle\">" << n(hi) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string svg_scatter(const std::vector<ScatterPoint>& points, const std::string& title,
                        const std::string& x_label, const std::string& y_label) {
  std::ostringstream out;
  frame(out, title, x_label, y_label);
  if (!points.empty()) {
    double x_lo = points.front().x, x_hi = x_lo, y_lo = 0, y_hi = points.front().y;
    for (const auto& p : points) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_hi = std::max(y_hi, p.y);
    }
    if (x_hi <= x_lo) { x_lo -= 0.5; x_hi += 0.5; }
    if (y_hi <= y_lo) y_hi = y_lo + 1;
    const double plot_w = kWidth - 2 * kMargin, plot_h = kHeight - 2 * kMargin;
    for (const auto& p : points) {
      const double x = kMargin + (p.x - x_lo) / (x_hi - x_lo) * plot_w;
      const double y = kHeight - kMargin - (p.y - y_lo) / (y_hi - y_lo) * plot_h;
      out << "<circle cx=\"" << n(x) << "\" cy=\"" << n(y) << "\" r=\"4\" fill=\"darkred\"/>\n";
      out << "<text x=\"" << n(x + 6) << "\" y=\"" << n(y - 6) << "\" font-size=\"10\">"
          << xml_escape(p.label) << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace semdrift::util
