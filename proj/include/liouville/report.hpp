#pragma once

// Serialization: fields as CSV/JSON, the classified (lambda1, lambda2)
// grid as CSV, and the region picture as SVG.

#include "liouville/numeric.hpp"
#include "liouville/region.hpp"
#include "liouville/sphere.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace liouville::report {

/// Round-trip safe decimal: 17 significant digits.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Fixed-point with a given number of decimals, for SVG coordinates.
inline std::string fmt_fixed(double v, int decimals = 3) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0.000" || s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

inline std::string fmt_opt(const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); }

inline std::string fmt_opt(const std::optional<bool>& v) {
  if (!v) return {};
  return *v ? "1" : "0";
}

template <RealScalar Real>
void write_field_csv(std::ostream& os, const sphere::AxiField<Real>& f) {
  os << "s,value\n";
  for (int i = 0; i < f.size(); ++i) {
    os << fmt17(to_double(f.nodes()[i])) << ',' << fmt17(to_double(f.values()[i])) << '\n';
  }
}

template <RealScalar Real>
nlohmann::json field_json(const sphere::AxiField<Real>& f) {
  nlohmann::json j;
  j["kappa"] = to_double(f.kappa());
  j["nodes"] = f.size();
  std::vector<double> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(to_double(v));
  j["coeffs"] = c;
  return j;
}

struct GridBounds {
  double lambda1_min = -4.0;
  double lambda1_max = 2.0;
  double lambda2_min = 0.0;
  double lambda2_max = 6.0;
};

struct RegionCell {
  int ix = 0;
  int iy = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  region::RegionTag tag = region::RegionTag::Outside;
  std::optional<double> L1;
  std::optional<bool> cond1;
  std::optional<bool> cond2;
  std::optional<double> discriminant;
};

struct RegionGrid {
  int nx = 0;
  int ny = 0;
  GridBounds bounds;
  double kappa = 1.0;
  std::vector<RegionCell> cells;  // row-major in (iy, ix)

  double cell_width() const { return (bounds.lambda1_max - bounds.lambda1_min) / nx; }
  double cell_height() const { return (bounds.lambda2_max - bounds.lambda2_min) / ny; }
};

/// Classify the centres of an nx-by-ny grid of cells.
inline RegionGrid region_grid(int nx, int ny, GridBounds b = {}, double kappa = 1.0) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("region_grid: empty grid");
  if (!(b.lambda1_max > b.lambda1_min) || !(b.lambda2_max > b.lambda2_min)) {
    throw std::invalid_argument("region_grid: degenerate bounds");
  }
  if (!(kappa > 0.0)) throw std::invalid_argument("region_grid: kappa must be positive");
  RegionGrid g{nx, ny, b, kappa, {}};
  g.cells.reserve(static_cast<std::size_t>(nx) * ny);
  const double dx = g.cell_width();
  const double dy = g.cell_height();
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      RegionCell c;
      c.ix = ix;
      c.iy = iy;
      c.lambda1 = b.lambda1_min + (ix + 0.5) * dx;
      c.lambda2 = b.lambda2_min + (iy + 0.5) * dy;
      const region::ParamPoint p{c.lambda1, c.lambda2, kappa};
      c.tag = region::classify(p).tag;
      if (c.lambda1 >= -2.0 && c.lambda1 <= 2.0) c.L1 = region::eval_L1(c.lambda1);
      if (c.lambda1 > -2.0 && c.lambda1 <= 2.0) {
        const auto r = region::check_conditions(p);
        c.cond1 = r.cond1;
        c.cond2 = r.cond2;
      }
      if (c.lambda1 > -2.0 && c.lambda1 < region::x_star() && c.lambda2 > 0.0) {
        c.discriminant = region::discriminant(p).direct;
      }
      g.cells.push_back(c);
    }
  }
  return g;
}

inline void write_region_csv(std::ostream& os, const RegionGrid& g) {
  os << "lambda1,lambda2,class,L1,cond1,cond2,discriminant\n";
  for (const auto& c : g.cells) {
    os << fmt17(c.lambda1) << ',' << fmt17(c.lambda2) << ',' << region::to_string(c.tag) << ','
       << fmt_opt(c.L1) << ',' << fmt_opt(c.cond1) << ',' << fmt_opt(c.cond2) << ','
       << fmt_opt(c.discriminant) << '\n';
  }
}

/// Boundary curve lambda2 = L1(lambda1) on [-2, 2], sampled uniformly with
/// the corner at x* inserted.
inline std::vector<std::pair<double, double>> l1_polyline(int samples = 400) {
  if (samples < 2) throw std::invalid_argument("l1_polyline: need at least 2 samples");
  std::vector<std::pair<double, double>> pts;
  const double xs = region::x_star();
  bool corner_done = false;
  for (int i = 0; i <= samples; ++i) {
    const double x = -2.0 + 4.0 * i / samples;
    if (!corner_done && x >= xs) {
      if (x > xs) pts.emplace_back(xs, 4.0 + xs);
      corner_done = true;
    }
    pts.emplace_back(x, region::eval_L1(x));
  }
  return pts;
}

struct SvgOptions {
  int plot_width = 600;
  int plot_height = 600;
  int margin = 60;
  int polyline_samples = 400;
};

inline const char* cell_colour(region::RegionTag tag) {
  switch (tag) {
    case region::RegionTag::GreenInterior: return "#3fae49";
    case region::RegionTag::GreenBoundary: return "#2a7f33";
    case region::RegionTag::RedOnly: return "#d9534f";
    case region::RegionTag::Outside: return "#ffffff";
  }
  return "#ffffff";
}

/// One rect per cell, the L1 curve on top, axes and labels.
inline void write_region_svg(std::ostream& os, const RegionGrid& g, const SvgOptions& o = {}) {
  if (g.cells.empty()) throw std::invalid_argument("write_region_svg: empty grid");
  const auto& b = g.bounds;
  const double W = o.plot_width, H = o.plot_height, M = o.margin;
  auto px = [&](double l1) { return M + (l1 - b.lambda1_min) / (b.lambda1_max - b.lambda1_min) * W; };
  auto py = [&](double l2) { return M + H - (l2 - b.lambda2_min) / (b.lambda2_max - b.lambda2_min) * H; };
  const double cw = W / g.nx, ch = H / g.ny;

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (W + 2 * M) << "\" height=\""
     << (H + 2 * M) << "\" viewBox=\"0 0 " << (W + 2 * M) << ' ' << (H + 2 * M) << "\">\n";
  os << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (const auto& c : g.cells) {
    os << "<rect x=\"" << fmt_fixed(M + c.ix * cw) << "\" y=\"" << fmt_fixed(M + H - (c.iy + 1) * ch)
       << "\" width=\"" << fmt_fixed(cw) << "\" height=\"" << fmt_fixed(ch) << "\" fill=\""
       << cell_colour(c.tag) << "\"/>\n";
  }
  os << "</g>\n";

  os << "<polyline id=\"L1\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\" points=\"";
  bool first = true;
  for (const auto& [x, y] : l1_polyline(o.polyline_samples)) {
    if (!first) os << ' ';
    first = false;
    os << fmt_fixed(px(x)) << ',' << fmt_fixed(py(y));
  }
  os << "\"/>\n";

  os << "<rect x=\"" << fmt_fixed(M) << "\" y=\"" << fmt_fixed(M) << "\" width=\"" << fmt_fixed(W)
     << "\" height=\"" << fmt_fixed(H) << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  for (int k = 0; k <= 6; ++k) {
    const double l1 = b.lambda1_min + k * (b.lambda1_max - b.lambda1_min) / 6;
    os << "<text x=\"" << fmt_fixed(px(l1)) << "\" y=\"" << fmt_fixed(M + H + 20)
       << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt_fixed(l1, 1) << "</text>\n";
    const double l2 = b.lambda2_min + k * (b.lambda2_max - b.lambda2_min) / 6;
    os << "<text x=\"" << fmt_fixed(M - 8) << "\" y=\"" << fmt_fixed(py(l2) + 4)
       << "\" font-size=\"12\" text-anchor=\"end\">" << fmt_fixed(l2, 1) << "</text>\n";
  }
  os << "<text x=\"" << fmt_fixed(M + W / 2) << "\" y=\"" << fmt_fixed(M + H + 45)
     << "\" font-size=\"14\" text-anchor=\"middle\">\xCE\xBB\xE2\x82\x81</text>\n";
  os << "<text x=\"" << fmt_fixed(M - 40) << "\" y=\"" << fmt_fixed(M + H / 2)
     << "\" font-size=\"14\" text-anchor=\"middle\">\xCE\xBB\xE2\x82\x82</text>\n";
  os << "</svg>\n";
}

}  // namespace liouville::report
