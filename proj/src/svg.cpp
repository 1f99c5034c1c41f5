#include "excursion/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace excursion::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

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

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec, const std::vector<Curve>& curves) {
  if (curves.empty()) throw std::invalid_argument("svg: no curves to draw");

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
  for (const Curve& c : curves) {
    if (c.x.size() != c.y.size()) throw std::invalid_argument("svg: curve size mismatch");
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      const double y = c.y[i];
      if (spec.log_y && !(y > 0.0)) continue;
      x_min = std::min(x_min, c.x[i]);
      x_max = std::max(x_max, c.x[i]);
      y_min = std::min(y_min, spec.log_y ? std::log10(y) : y);
      y_max = std::max(y_max, spec.log_y ? std::log10(y) : y);
    }
  }
  if (!(x_max >= x_min) || !(y_max >= y_min)) {
    throw std::invalid_argument("svg: no drawable points (all non-positive in log mode?)");
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const double ml = 70, mr = 20, mt = 40, mb = 50;
  const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;
  const auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  const auto py = [&](double yv) {
    const double y = spec.log_y ? std::log10(yv) : yv;
    return mt + (y_max - y) / (y_max - y_min) * ph;
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << " "
      << spec.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << escape(spec.title) << "</text>\n";

  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
      << mt + ph << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n";

  constexpr int kTicks = 6;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / kTicks;
    const double gx = px(fx);
    out << "<line x1=\"" << num(gx) << "\" y1=\"" << mt + ph << "\" x2=\"" << num(gx)
        << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(gx) << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(fx)
        << "</text>\n";
    const double fy = y_min + (y_max - y_min) * i / kTicks;
    const double gy = mt + (y_max - fy) / (y_max - y_min) * ph;
    const double label = spec.log_y ? std::pow(10.0, fy) : fy;
    std::ostringstream lab;
    lab.precision(3);
    lab << label;
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << num(gy) << "\" x2=\"" << ml << "\" y2=\""
        << num(gy) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << num(gy + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << lab.str()
        << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << spec.height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape(spec.x_label) << "</text>\n";
  if (!spec.y_label.empty()) {
    out << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">" << escape(spec.y_label)
        << "</text>\n";
  }

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const Curve& c = curves[ci];
    std::ostringstream pts;
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      if (spec.log_y && !(c.y[i] > 0.0)) continue;
      pts << num(px(c.x[i])) << ',' << num(py(c.y[i])) << ' ';
    }
    const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
        << pts.str() << "\"/>\n";
    const double ly = mt + 14 + 16.0 * static_cast<double>(ci);
    out << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << num(ly - 4) << "\" x2=\""
        << ml + pw - 125 << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << ml + pw - 120 << "\" y=\"" << num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(c.name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_line_chart(const std::string& path, const ChartSpec& spec,
                      const std::vector<Curve>& curves) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("svg: cannot open '" + path + "' for writing");
  f << render_line_chart(spec, curves);
  if (!f) throw std::runtime_error("svg: write to '" + path + "' failed");
}

}  // namespace excursion::svg
