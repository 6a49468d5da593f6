#include "inscribed/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <string_view>

namespace inscribed {

namespace {

constexpr std::array<std::string_view, 6> kWarm{"#d7301f", "#f16913", "#e7298a", "#b30000", "#fd8d3c", "#ce1256"};
constexpr std::array<std::string_view, 5> kCool{"#2171b5", "#238b45", "#6a51a3", "#41b6c4", "#08519c"};
constexpr std::string_view kGray = "#8c8c8c";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

struct View {
  double min_x, max_y, scale, offset_x, offset_y;

  std::string x(Point p) const { return fmt(offset_x + (p.x - min_x) * scale); }
  std::string y(Point p) const { return fmt(offset_y + (max_y - p.y) * scale); }
  std::string xy(Point p) const { return x(p) + "," + y(p); }
};

View make_view(const Polygon& polygon, const SvgOptions& o) {
  double min_x = polygon.vertex(0).x, max_x = min_x, min_y = polygon.vertex(0).y, max_y = min_y;
  for (const Point& p : polygon.vertices()) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double usable_w = o.width * (1 - 2 * o.margin), usable_h = o.height * (1 - 2 * o.margin);
  const double w = std::max(max_x - min_x, 1e-300), h = std::max(max_y - min_y, 1e-300);
  const double scale = std::min(usable_w / w, usable_h / h);
  return {min_x, max_y, scale, (o.width - w * scale) / 2, (o.height - h * scale) / 2};
}

std::string_view color_for(ComponentClass cls, int& warm, int& cool) {
  switch (cls) {
    case ComponentClass::Hyperbolic: return kWarm[warm++ % kWarm.size()];
    case ComponentClass::Elliptic: return kCool[cool++ % kCool.size()];
    default: return kGray;
  }
}

}  // namespace

std::string render_svg(const Analysis& analysis, const SvgOptions& options) {
  const View view = make_view(analysis.polygon, options);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(options.width) +
         "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " + std::to_string(options.width) + " " +
         std::to_string(options.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out += "<polygon class=\"outline\" fill=\"none\" stroke=\"#222222\" stroke-width=\"2\" points=\"";
  for (int i = 0; i < analysis.polygon.size(); ++i) {
    if (i) out += ' ';
    out += view.xy(analysis.polygon.vertex(i));
  }
  out += "\"/>\n";

  const int per = std::clamp(options.rectangles_per_component, 0, 40);
  int warm = 0, cool = 0;
  std::string chords;
  for (int c : analysis.orbit_representatives()) {
    const Component& comp = analysis.components[c];
    const std::string_view color = color_for(comp.cls, warm, cool);
    out += "<g class=\"family\" data-component=\"" + std::to_string(c) + "\" stroke=\"" + std::string(color) +
           "\" fill=\"none\" stroke-width=\"0.8\" stroke-opacity=\"0.7\">\n";
    for (int i = 0; i < per; ++i) {
      const double u = comp.topology == Topology::Loop ? static_cast<double>(i) / per : (i + 0.5) / per;
      const LabeledRectangle r = analysis.sample(c, u);
      out += "<polygon points=\"";
      for (int k = 0; k < 4; ++k) {
        if (k) out += ' ';
        out += view.xy(r.vertices[k]);
      }
      out += "\"/>\n";
    }
    out += "</g>\n";
    if (comp.end_chords)
      for (const Chord& chord : *comp.end_chords)
        chords += "<line class=\"chord\" x1=\"" + view.x(chord.endpoints[0]) + "\" y1=\"" + view.y(chord.endpoints[0]) +
                  "\" x2=\"" + view.x(chord.endpoints[1]) + "\" y2=\"" + view.y(chord.endpoints[1]) +
                  "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  out += chords;

  const ParityReport& p = analysis.parity;
  out += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#222222\">\n";
  out += "<text x=\"12\" y=\"22\">\xCE\xA9 = " + std::to_string(p.omega) + "</text>\n";
  out += "<text x=\"12\" y=\"40\">\xCE\xA9_H = " + std::to_string(p.omega_h) + "</text>\n";
  out += "<text x=\"12\" y=\"58\">\xCE\xA9_E = " + std::to_string(p.omega_e) + "</text>\n";
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace inscribed
