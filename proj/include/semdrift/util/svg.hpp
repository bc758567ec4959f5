#pragma once

#include <string>
#include <vector>

namespace semdrift::util {

struct Bar {
  double lo = 0.0;
  double hi = 0.0;
  double height = 0.0;
};

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

// Minimal self-contained SVG documents; output depends only on the inputs.
std::string svg_bar_chart(const std::vector<Bar>& bars, const std::string& title,
                          const std::string& x_label, const std::string& y_label);
std::string svg_scatter(const std::vector<ScatterPoint>& points, const std::string& title,
                        const std::string& x_label, const std::string& y_label);

}  // namespace semdrift::util
