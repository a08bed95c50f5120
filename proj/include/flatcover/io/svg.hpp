#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcover/core/cost.hpp"
#include "flatcover/core/flat.hpp"
#include "flatcover/core/point_cloud.hpp"

namespace flatcover::io {

namespace detail {

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                 "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  return colors[i % 10];
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace detail

/// Planar scatter plot. Points take the color of their nearest line when
/// lines are given; lines are clipped to the padded bounding box.
inline std::string plot_svg(const FloatCloud& cloud, const std::vector<AffineFlat>& lines = {}, int size = 480) {
  if (cloud.dim() != 2) throw std::invalid_argument("plot needs planar points");
  if (cloud.empty()) throw std::invalid_argument("nothing to plot");
  for (const auto& l : lines)
    if (l.ambient_dim() != 2) throw std::invalid_argument("plot needs planar flats");
  double x0 = cloud[0].coords[0], x1 = x0, y0 = cloud[0].coords[1], y1 = y0;
  for (const auto& r : cloud.records()) {
    x0 = std::min(x0, r.coords[0]);
    x1 = std::max(x1, r.coords[0]);
    y0 = std::min(y0, r.coords[1]);
    y1 = std::max(y1, r.coords[1]);
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double pad = 0.08 * span;
  x0 -= pad;
  y0 -= pad;
  const double scale = size / (span + 2 * pad);
  auto sx = [&](double x) { return (x - x0) * scale; };
  auto sy = [&](double y) { return size - (y - y0) * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double xa = x0, xb = x0 + span + 2 * pad, ya = y0, yb = y0 + span + 2 * pad;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& f = lines[i];
    double px = f.offset()(0), py = f.offset()(1), dx, dy;
    if (f.flat_dim() == 0) {
      out << "<circle cx=\"" << detail::num(sx(px)) << "\" cy=\"" << detail::num(sy(py))
          << "\" r=\"6\" fill=\"none\" stroke=\"" << detail::palette(i) << "\"/>\n";
      continue;
    }
    dx = f.basis()(0, 0);
    dy = f.basis()(1, 0);
    // Clip p + t(dx, dy) to the box.
    double lo = -1e300, hi = 1e300;
    auto clip = [&](double p, double d, double a, double b) {
      if (std::abs(d) < 1e-15) {
        if (p < a || p > b) lo = 1, hi = 0;
        return;
      }
      double t1 = (a - p) / d, t2 = (b - p) / d;
      if (t1 > t2) std::swap(t1, t2);
      lo = std::max(lo, t1);
      hi = std::min(hi, t2);
    };
    clip(px, dx, xa, xb);
    clip(py, dy, ya, yb);
    if (lo > hi) continue;
    out << "<line x1=\"" << detail::num(sx(px + lo * dx)) << "\" y1=\"" << detail::num(sy(py + lo * dy)) << "\" x2=\""
        << detail::num(sx(px + hi * dx)) << "\" y2=\"" << detail::num(sy(py + hi * dy)) << "\" stroke=\""
        << detail::palette(i) << "\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& r : cloud.records()) {
    const char* color = lines.empty() ? "#333333" : detail::palette(nearest_flat(as_vector(r), lines).first);
    out << "<circle cx=\"" << detail::num(sx(r.coords[0])) << "\" cy=\"" << detail::num(sy(r.coords[1]))
        << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace flatcover::io
