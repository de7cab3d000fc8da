#pragma once

#include "graftlab/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace graftlab::figure {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};

using Pt = std::array<double, 2>;

/// A stroked and/or filled shape in world coordinates. Fills use the
/// even-odd rule over all rings, so an annulus is two rings.
struct Shape {
  std::vector<std::vector<Pt>> rings;
  std::optional<Rgb> stroke;
  double stroke_width = 1.0;  // in output pixels at scale 1
  std::optional<Rgb> fill;
  double fill_opacity = 1.0;
  bool closed = false;
};

/// World box [xmin, xmax] x [ymin, ymax] drawn into width x height pixels
/// with y up. Shapes are painted in order.
struct Figure {
  std::string title;
  int width = 640, height = 640;
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  Rgb background{255, 255, 255};
  std::vector<Shape> shapes;

  Pt to_pixels(const Pt& p, double scale = 1.0) const {
    double sx = width / (xmax - xmin), sy = height / (ymax - ymin);
    double s = std::min(sx, sy);
    double ox = 0.5 * (width - s * (xmax - xmin)), oy = 0.5 * (height - s * (ymax - ymin));
    return {scale * (ox + s * (p[0] - xmin)), scale * (height - oy - s * (p[1] - ymin))};
  }

  void polyline(std::vector<Pt> pts, Rgb stroke, double width_px = 1.0) {
    if (pts.size() < 2) return;
    shapes.push_back({{std::move(pts)}, stroke, width_px, std::nullopt, 1.0, false});
  }
  void polygon(std::vector<std::vector<Pt>> rings, Rgb fill, double opacity, std::optional<Rgb> stroke = {},
               double width_px = 1.0) {
    shapes.push_back({std::move(rings), stroke, width_px, fill, opacity, true});
  }
  void dot(Pt center, double radius_px, Rgb color) {
    double s = std::min(width / (xmax - xmin), height / (ymax - ymin));
    double r = radius_px / s;
    std::vector<Pt> ring;
    for (int k = 0; k < 24; ++k) ring.push_back({center[0] + r * std::cos(k * std::numbers::pi / 12), center[1] + r * std::sin(k * std::numbers::pi / 12)});
    polygon({ring}, color, 1.0);
  }
};

/// Splits a sampled curve wherever a point is non-finite or far outside the
/// view, so curves through infinity draw as separate pieces.
inline std::vector<std::vector<Pt>> clip_pieces(const Figure& f, const std::vector<Pt>& pts) {
  double mx = 4.0 * (f.xmax - f.xmin), my = 4.0 * (f.ymax - f.ymin);
  std::vector<std::vector<Pt>> out(1);
  for (const auto& p : pts) {
    bool ok = std::isfinite(p[0]) && std::isfinite(p[1]) && p[0] > f.xmin - mx && p[0] < f.xmax + mx &&
              p[1] > f.ymin - my && p[1] < f.ymax + my;
    if (ok) {
      out.back().push_back(p);
    } else if (!out.back().empty()) {
      out.emplace_back();
    }
  }
  std::erase_if(out, [](const auto& v) { return v.size() < 2; });
  return out;
}

// ---------------------------------------------------------------------------
// SVG

inline std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

inline std::string to_svg(const Figure& f) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height
     << "\" viewBox=\"0 0 " << f.width << ' ' << f.height << "\">\n";
  if (!f.title.empty()) os << "<title>" << f.title << "</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"" << hex(f.background) << "\"/>\n";
  for (const auto& s : f.shapes) {
    os << "<path d=\"";
    for (const auto& ring : s.rings) {
      for (std::size_t k = 0; k < ring.size(); ++k) {
        Pt p = f.to_pixels(ring[k]);
        os << (k == 0 ? 'M' : 'L') << p[0] << ',' << p[1] << ' ';
      }
      if (s.closed) os << "Z ";
    }
    os << "\" fill=\"" << (s.fill ? hex(*s.fill) : "none") << '"';
    if (s.fill) os << " fill-opacity=\"" << s.fill_opacity << "\" fill-rule=\"evenodd\"";
    if (s.stroke) {
      os << " stroke=\"" << hex(*s.stroke) << "\" stroke-width=\"" << s.stroke_width
         << "\" stroke-linejoin=\"round\" stroke-linecap=\"round\"";
    }
    os << "/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Raster

struct Raster {
  int width = 0, height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
};

namespace detail {

inline void blend(Raster& r, int x, int y, Rgb c, double alpha) {
  if (alpha <= 0.0) return;
  alpha = std::min(alpha, 1.0);
  std::uint8_t* p = &r.rgb[3 * (static_cast<std::size_t>(y) * r.width + x)];
  p[0] = static_cast<std::uint8_t>(std::lround(p[0] + alpha * (c.r - p[0])));
  p[1] = static_cast<std::uint8_t>(std::lround(p[1] + alpha * (c.g - p[1])));
  p[2] = static_cast<std::uint8_t>(std::lround(p[2] + alpha * (c.b - p[2])));
}

inline double segment_distance(const Pt& p, const Pt& a, const Pt& b) {
  double dx = b[0] - a[0], dy = b[1] - a[1];
  double len2 = dx * dx + dy * dy;
  double u = len2 > 0 ? std::clamp(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2, 0.0, 1.0) : 0.0;
  return std::hypot(p[0] - a[0] - u * dx, p[1] - a[1] - u * dy);
}

/// Even-odd fill sampled at 4 sub-rows per pixel row.
inline void fill(Raster& r, const std::vector<std::vector<Pt>>& rings, Rgb c, double opacity) {
  constexpr int kSub = 4;
  double ylo = 1e300, yhi = -1e300;
  for (const auto& ring : rings) {
    for (const auto& p : ring) {
      ylo = std::min(ylo, p[1]);
      yhi = std::max(yhi, p[1]);
    }
  }
  int y0 = std::max(0, static_cast<int>(std::floor(ylo))), y1 = std::min(r.height - 1, static_cast<int>(std::ceil(yhi)));
  std::vector<double> cover(static_cast<std::size_t>(r.width));
  std::vector<double> xs;
  for (int y = y0; y <= y1; ++y) {
    std::fill(cover.begin(), cover.end(), 0.0);
    for (int s = 0; s < kSub; ++s) {
      double sy = y + (s + 0.5) / kSub;
      xs.clear();
      for (const auto& ring : rings) {
        for (std::size_t k = 0; k < ring.size(); ++k) {
          const Pt& a = ring[k];
          const Pt& b = ring[(k + 1) % ring.size()];
          if ((a[1] <= sy) != (b[1] <= sy)) xs.push_back(a[0] + (sy - a[1]) * (b[0] - a[0]) / (b[1] - a[1]));
        }
      }
      std::sort(xs.begin(), xs.end());
      for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
        double xa = std::clamp(xs[k], 0.0, static_cast<double>(r.width));
        double xb = std::clamp(xs[k + 1], 0.0, static_cast<double>(r.width));
        for (int x = static_cast<int>(xa); x < r.width && x < xb; ++x) {
          double lo = std::max(xa, static_cast<double>(x)), hi = std::min(xb, x + 1.0);
          if (hi > lo) cover[static_cast<std::size_t>(x)] += (hi - lo) / kSub;
        }
      }
    }
    for (int x = 0; x < r.width; ++x) blend(r, x, y, c, opacity * cover[static_cast<std::size_t>(x)]);
  }
}

/// Antialiased stroke; coverage is the max over segments so joints do not
/// darken.
inline void stroke(Raster& r, const std::vector<Pt>& pts, bool closed, Rgb c, double width) {
  const double half = 0.5 * std::max(width, 1.0);
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& p : pts) {
    xlo = std::min(xlo, p[0]);
    xhi = std::max(xhi, p[0]);
    ylo = std::min(ylo, p[1]);
    yhi = std::max(yhi, p[1]);
  }
  int x0 = std::max(0, static_cast<int>(xlo - half - 1)), x1 = std::min(r.width - 1, static_cast<int>(xhi + half + 1));
  int y0 = std::max(0, static_cast<int>(ylo - half - 1)), y1 = std::min(r.height - 1, static_cast<int>(yhi + half + 1));
  if (x0 > x1 || y0 > y1) return;
  const int w = x1 - x0 + 1;
  std::vector<float> cover(static_cast<std::size_t>(w) * static_cast<std::size_t>(y1 - y0 + 1), 0.0f);
  std::size_t nseg = closed ? pts.size() : pts.size() - 1;
  for (std::size_t k = 0; k < nseg; ++k) {
    const Pt& a = pts[k];
    const Pt& b = pts[(k + 1) % pts.size()];
    int sx0 = std::max(x0, static_cast<int>(std::min(a[0], b[0]) - half - 1));
    int sx1 = std::min(x1, static_cast<int>(std::max(a[0], b[0]) + half + 1));
    int sy0 = std::max(y0, static_cast<int>(std::min(a[1], b[1]) - half - 1));
    int sy1 = std::min(y1, static_cast<int>(std::max(a[1], b[1]) + half + 1));
    for (int y = sy0; y <= sy1; ++y) {
      for (int x = sx0; x <= sx1; ++x) {
        double d = segment_distance({x + 0.5, y + 0.5}, a, b);
        auto cv = static_cast<float>(std::clamp(half + 0.5 - d, 0.0, 1.0));
        float& slot = cover[static_cast<std::size_t>(y - y0) * w + (x - x0)];
        slot = std::max(slot, cv);
      }
    }
  }
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) blend(r, x, y, c, cover[static_cast<std::size_t>(y - y0) * w + (x - x0)]);
  }
}

}  // namespace detail

/// Renders the same display list as to_svg at the given scale.
inline Raster rasterize(const Figure& f, double scale) {
  Raster r;
  r.width = static_cast<int>(std::lround(f.width * scale));
  r.height = static_cast<int>(std::lround(f.height * scale));
  r.rgb.resize(3 * static_cast<std::size_t>(r.width) * r.height);
  for (std::size_t k = 0; k < r.rgb.size(); k += 3) {
    r.rgb[k] = f.background.r;
    r.rgb[k + 1] = f.background.g;
    r.rgb[k + 2] = f.background.b;
  }
  for (const auto& s : f.shapes) {
    std::vector<std::vector<Pt>> rings;
    for (const auto& ring : s.rings) {
      std::vector<Pt> px;
      for (const auto& p : ring) px.push_back(f.to_pixels(p, scale));
      rings.push_back(std::move(px));
    }
    if (s.fill) detail::fill(r, rings, *s.fill, s.fill_opacity);
    if (s.stroke) {
      for (const auto& ring : rings) {
        if (ring.size() >= 2) detail::stroke(r, ring, s.closed, *s.stroke, s.stroke_width * scale);
      }
    }
  }
  return r;
}

/// 2x, raised so the smaller side reaches 1024 pixels.
inline double raster_scale(const Figure& f) {
  return std::max(2.0, 1024.0 / std::min(f.width, f.height));
}

}  // namespace graftlab::figure
