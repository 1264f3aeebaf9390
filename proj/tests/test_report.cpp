#include "liouville/region.hpp"
#include "liouville/report.hpp"
#include "liouville/sphere.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <regex>
#include <sstream>
#include <string>

using namespace liouville;
using namespace liouville::report;

namespace {

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(Format, RoundTrip) {
  for (double v : {0.1, -1.0 / 3.0, 6.0, 1e-300, 3.0487127572808945}) {
    EXPECT_EQ(std::strtod(fmt17(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(fmt_fixed(-0.0001), "0.000");
  EXPECT_EQ(fmt_fixed(1.23456, 2), "1.23");
  EXPECT_EQ(fmt_opt(std::optional<double>{}), "");
  EXPECT_EQ(fmt_opt(std::optional<bool>{true}), "1");
}

TEST(RegionGrid, CellsMatchClassify) {
  const auto g = region_grid(400, 400);
  ASSERT_EQ(g.cells.size(), 160000u);
  for (const auto& c : g.cells) {
    ASSERT_EQ(c.tag, region::classify({c.lambda1, c.lambda2, 1.0}).tag) << c.lambda1 << ' ' << c.lambda2;
  }
  EXPECT_NEAR(g.cell_width(), 6.0 / 400, 1e-15);
  EXPECT_THROW(region_grid(0, 4), std::invalid_argument);
  EXPECT_THROW(region_grid(4, 4, {}, 0.0), std::invalid_argument);
}

TEST(RegionGrid, CsvLayout) {
  const auto g = region_grid(20, 10);
  std::ostringstream os;
  write_region_csv(os, g);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "lambda1,lambda2,class,L1,cond1,cond2,discriminant");
  int rows = 0;
  while (std::getline(is, line)) {
    const auto f = split(line);
    ASSERT_EQ(f.size(), 7u) << line;
    const auto& c = g.cells[rows];
    EXPECT_EQ(std::strtod(f[0].c_str(), nullptr), c.lambda1);
    EXPECT_EQ(f[2], region::to_string(c.tag));
    EXPECT_EQ(f[3].empty(), !c.L1.has_value());
    ++rows;
  }
  EXPECT_EQ(rows, 200);
}

TEST(RegionGrid, KappaInvariantOutput) {
  std::ostringstream a, b;
  write_region_csv(a, region_grid(30, 30, {}, 1.0));
  write_region_csv(b, region_grid(30, 30, {}, 4.0));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Polyline, PassesThroughCornerAndEndpoint) {
  const auto pts = l1_polyline(400);
  const double xs = region::x_star();
  bool corner = false, end = false;
  for (const auto& [x, y] : pts) {
    if (std::abs(x - xs) < 1e-15 && std::abs(y - (4.0 + xs)) < 1e-12) corner = true;
    if (x == 2.0 && std::abs(y - 6.0) < 1e-12) end = true;
  }
  EXPECT_TRUE(corner);
  EXPECT_TRUE(end);
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i - 1].first, pts[i].first);
  EXPECT_NEAR(pts.front().first, -2.0, 0.0);
  EXPECT_THROW(l1_polyline(1), std::invalid_argument);
}

TEST(Svg, OneRectPerCellAndCurve) {
  const auto g = region_grid(10, 10);
  std::ostringstream os;
  write_region_svg(os, g);
  const std::string svg = os.str();
  const auto cells_begin = svg.find("<g id=\"cells\"");
  const auto cells_end = svg.find("</g>", cells_begin);
  ASSERT_NE(cells_begin, std::string::npos);
  EXPECT_EQ(count(svg.substr(cells_begin, cells_end - cells_begin), "<rect"), 100);
  EXPECT_EQ(count(svg, "<polyline id=\"L1\""), 1);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
  EXPECT_EQ(count(svg, "-0.0"), 0);
}

TEST(Svg, CurveWithinOneCellOfClassBoundary) {
  // Along each column with -2 < lambda1 < 2, the last green cell touches L1.
  const int n = 400;
  const auto g = region_grid(n, n);
  for (int ix = 0; ix < n; ++ix) {
    const double l1 = g.cells[ix].lambda1;
    if (l1 <= -2.0 + g.cell_width() || l1 >= 2.0) continue;
    int top = -1;
    for (int iy = 0; iy < n; ++iy) {
      if (region::is_green(g.cells[static_cast<std::size_t>(iy) * n + ix].tag)) top = iy;
    }
    ASSERT_GE(top, 0) << l1;
    const double edge = g.bounds.lambda2_min + (top + 1) * g.cell_height();
    EXPECT_LE(std::abs(edge - region::eval_L1(l1)), g.cell_height()) << l1;
  }
}

TEST(FieldOutput, CsvAndJson) {
  const auto grid = sphere::make_grid<double>(4);
  const auto f = sphere::AxiField<double>::from_function(grid, 2.0, [](double s) { return s; });
  std::ostringstream os;
  write_field_csv(os, f);
  EXPECT_EQ(count(os.str(), "\n"), 5);
  EXPECT_EQ(os.str().rfind("s,value\n", 0), 0u);
  const auto j = field_json(f);
  EXPECT_EQ(j["kappa"], 2.0);
  EXPECT_EQ(j["nodes"], 4);
  EXPECT_NEAR(j["coeffs"][1].get<double>(), 1.0 / std::sqrt(5.0), 1e-15);
}
