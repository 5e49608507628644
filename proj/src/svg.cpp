#include "krank/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace krank {

std::string xml_escape(const std::string& s) {
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

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string render_svg(const Plot& plot) {
  constexpr double kMargin = 60.0;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : plot.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;

  const double w = plot.width, h = plot.height;
  auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (w - 2 * kMargin); };
  auto py = [&](double y) { return h - kMargin - (y - y0) / (y1 - y0) * (h - 2 * kMargin); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << plot.width << "\" height=\""
      << plot.height << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height << "\">\n";
  out << "<title>" << xml_escape(plot.title) << "</title>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << plot.width << "\" height=\"" << plot.height << "\" fill=\"white\"/>\n";

  // axes box and range labels
  out << "<g stroke=\"black\" fill=\"none\">\n"
      << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(h - kMargin) << "\" x2=\"" << num(w - kMargin)
      << "\" y2=\"" << num(h - kMargin) << "\"/>\n"
      << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kMargin) << "\" x2=\"" << num(kMargin) << "\" y2=\""
      << num(h - kMargin) << "\"/>\n";
  if (y0 < 0 && y1 > 0)
    out << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(w - kMargin) << "\" y2=\""
        << num(py(0)) << "\" stroke-dasharray=\"4 4\"/>\n";
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<text x=\"" << num(kMargin) << "\" y=\"" << num(h - kMargin + 16) << "\">" << label(x0) << "</text>\n"
      << "<text x=\"" << num(w - kMargin) << "\" y=\"" << num(h - kMargin + 16) << "\" text-anchor=\"end\">"
      << label(x1) << "</text>\n"
      << "<text x=\"" << num(kMargin - 4) << "\" y=\"" << num(h - kMargin) << "\" text-anchor=\"end\">" << label(y0)
      << "</text>\n"
      << "<text x=\"" << num(kMargin - 4) << "\" y=\"" << num(kMargin + 8) << "\" text-anchor=\"end\">" << label(y1)
      << "</text>\n"
      << "<text x=\"" << num(w / 2) << "\" y=\"" << num(h - 16) << "\" text-anchor=\"middle\">"
      << xml_escape(plot.x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << num(h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << num(h / 2)
      << ")\">" << xml_escape(plot.y_label) << "</text>\n"
      << "<text x=\"" << num(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << xml_escape(plot.title) << "</text>\n";
  for (std::size_t i = 0; i < plot.series.size(); ++i)
    out << "<text x=\"" << num(w - kMargin) << "\" y=\"" << num(kMargin + 14.0 * i) << "\" text-anchor=\"end\" fill=\""
        << xml_escape(plot.series[i].color) << "\">" << xml_escape(plot.series[i].label) << "</text>\n";
  out << "</g>\n";

  for (const auto& s : plot.series) {
    std::vector<std::string> segments(1);
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        if (!segments.back().empty()) segments.emplace_back();
        continue;
      }
      segments.back() += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
    }
    for (const auto& pts : segments)
      if (!pts.empty())
        out << "<polyline fill=\"none\" stroke=\"" << xml_escape(s.color) << "\" stroke-width=\"1.2\" points=\""
            << pts << "\"/>\n";
  }

  if (!plot.ticks.empty()) {
    out << "<g stroke=\"red\">\n";
    for (double t : plot.ticks)
      out << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(h - kMargin - 8) << "\" x2=\"" << num(px(t))
          << "\" y2=\"" << num(h - kMargin + 8) << "\"/>\n";
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace krank
