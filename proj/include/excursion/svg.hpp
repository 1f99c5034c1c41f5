#pragma once

#include <string>
#include <vector>

namespace excursion::svg {

struct Curve {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartSpec {
  std::string title;
  std::string x_label = "u";
  std::string y_label;
  bool log_y = false;
  int width = 760;
  int height = 520;
};

/// Minimal self-contained line chart: axes, ticks, legend, one polyline per
/// curve.  In log mode non-positive samples are dropped from the polyline.
std::string render_line_chart(const ChartSpec& spec, const std::vector<Curve>& curves);
void write_line_chart(const std::string& path, const ChartSpec& spec,
                      const std::vector<Curve>& curves);

}  // namespace excursion::svg
