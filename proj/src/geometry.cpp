#include "nearplane/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "nearplane/errors.hpp"

namespace nearplane {

double BoundarySegment::x1_lo() const { return std::min(horizontal_end.x1, vertical_end.x1); }
double BoundarySegment::x1_hi() const { return std::max(horizontal_end.x1, vertical_end.x1); }
double BoundarySegment::x2_lo() const { return std::min(horizontal_end.x2, vertical_end.x2); }
double BoundarySegment::x2_hi() const { return std::max(horizontal_end.x2, vertical_end.x2); }

// The endpoint on a horizontal edge would put the cut on the edge of B(0);
// it is excluded so every reported cut is strictly interior.
bool BoundarySegment::crosses_column(double x1) const {
  return x1 >= x1_lo() && x1 <= x1_hi() && x1 != horizontal_end.x1;
}

bool BoundarySegment::crosses_row(double x2) const {
  return x2 >= x2_lo() && x2 <= x2_hi() && x2 != vertical_end.x2;
}

const BoundarySegment& CellGeometry::segment_for(const IntegerPair& neighbor) const {
  for (const auto& s : boundary_segments) {
    if (s.neighbor == neighbor) return s;
  }
  throw std::out_of_range("no boundary segment for the requested neighbour");
}

namespace {

struct HalfPlane {
  Point2 normal;
  double offset;  // normal . x <= offset
};

// Clip the line {x : normal.x = offset} against closed half-planes and
// return the surviving segment, if any has positive length.
std::optional<std::pair<Point2, Point2>> clip_line(const Point2& normal, double offset,
                                                   const std::vector<HalfPlane>& planes) {
  const double nn = dot(normal, normal);
  const Point2 base{normal.x1 * offset / nn, normal.x2 * offset / nn};
  const Point2 dir{-normal.x2, normal.x1};
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  for (const auto& hp : planes) {
    const double gd = dot(hp.normal, dir);
    const double slack = hp.offset - dot(hp.normal, base);
    if (std::abs(gd) < 1e-15) {
      if (slack < -1e-12) return std::nullopt;
      continue;
    }
    const double t = slack / gd;
    if (gd > 0) {
      t_hi = std::min(t_hi, t);
    } else {
      t_lo = std::max(t_lo, t);
    }
  }
  if (!(t_hi - t_lo > 1e-12)) return std::nullopt;
  return std::make_pair(Point2{base.x1 + t_lo * dir.x1, base.x2 + t_lo * dir.x2},
                        Point2{base.x1 + t_hi * dir.x1, base.x2 + t_hi * dir.x2});
}

std::vector<BoundarySegment> derive_segments(const Generator& gen, double half_h) {
  constexpr double kEdgeTol = 1e-9;
  const std::vector<HalfPlane> rect = {
      {{1, 0}, 0.5}, {{-1, 0}, 0.5}, {{0, 1}, half_h}, {{0, -1}, half_h}};

  std::vector<BoundarySegment> out;
  const auto relevant = relevant_vectors(gen);
  for (const IntegerPair& r : relevant) {
    const Point2 n = gen.point(r);
    const double off = 0.5 * dot(n, n);
    std::vector<HalfPlane> planes = rect;
    for (const IntegerPair& other : relevant) {
      if (other == r) continue;
      const Point2 m = gen.point(other);
      planes.push_back({m, 0.5 * dot(m, m)});
    }
    const auto seg = clip_line(n, off, planes);
    if (!seg) continue;
    auto [p, q] = *seg;

    const auto on_vertical = [&](const Point2& pt) { return std::abs(std::abs(pt.x1) - 0.5) < kEdgeTol; };
    const auto on_horizontal = [&](const Point2& pt) {
      return std::abs(std::abs(pt.x2) - half_h) < kEdgeTol;
    };
    // Faces lying along the edge of B(0) (the bisector of +-v1) separate nothing inside it.
    if (on_vertical(p) && on_vertical(q)) continue;
    if (on_horizontal(p) && on_horizontal(q)) continue;

    if (on_vertical(p) && on_horizontal(q)) std::swap(p, q);
    if (!(on_horizontal(p) && on_vertical(q))) {
      throw std::logic_error("bisector segment does not span a corner of the Babai cell");
    }
    BoundarySegment s;
    s.neighbor = r;
    s.normal = n;
    s.offset = off;
    s.horizontal_end = {0.0, std::copysign(half_h, p.x2)};
    s.horizontal_end.x1 = s.x1_at(s.horizontal_end.x2);
    s.vertical_end = {std::copysign(0.5, q.x1), 0.0};
    s.vertical_end.x2 = s.x2_at(s.vertical_end.x1);
    s.slope = -n.x1 / n.x2;
    out.push_back(s);
  }
  return out;
}

void require_in_cell_x1(double x1) {
  if (!(x1 > -0.5 && x1 <= 0.5)) throw OutOfCell("x1 outside (-1/2, 1/2]");
}

}  // namespace

CellGeometry cell_geometry(const LatticeParams& params) {
  const Generator gen(params);
  const double a = params.rcos();
  const double c = std::cos(params.theta);
  const double s = std::sin(params.theta);

  CellGeometry g;
  g.params = params;
  g.t_m2 = (a - 1.0) / 2.0;
  g.t_m1 = -a / 2.0;
  g.t_1 = -g.t_m1;
  g.t_2 = -g.t_m2;
  g.L0 = a;
  g.L1 = (1.0 - 2.0 * a) / 2.0;
  g.L2 = a / 2.0;
  g.L = 1.0;
  g.H = gen.det();
  g.H1 = c * (1.0 - a) / (2.0 * s);
  g.H22 = params.rho * c * c / (2.0 * s);
  g.H21 = c * (1.0 - 2.0 * a) / (2.0 * s);
  g.H0 = g.H - 2.0 * g.H1;
  g.tau_1 = g.H / 2.0 - g.H1;
  g.tau_m1 = -g.tau_1;
  g.boundary_segments = derive_segments(gen, g.H / 2.0);
  return g;
}

CutSpec strip_cuts(const CellGeometry& geometry, double x1) {
  require_in_cell_x1(x1);
  const BoundarySegment* lower = nullptr;
  const BoundarySegment* upper = nullptr;
  for (const auto& s : geometry.boundary_segments) {
    if (!s.crosses_column(x1)) continue;
    (s.upper() ? upper : lower) = &s;
  }
  CutSpec out;
  if (lower) {
    out.cuts.push_back(lower->x2_at(x1));
    out.labels.push_back(lower->neighbor);
  }
  out.labels.push_back({0, 0});
  if (upper) {
    out.cuts.push_back(upper->x2_at(x1));
    out.labels.push_back(upper->neighbor);
  }
  return out;
}

CutSpec strip_cuts(const LatticeParams& params, double x1) {
  return strip_cuts(cell_geometry(params), x1);
}

CutSpec row_cuts(const CellGeometry& geometry, double x2) {
  const double half_h = geometry.half_height();
  if (!(x2 > -half_h && x2 <= half_h)) throw OutOfCell("x2 outside (-H/2, H/2]");
  const BoundarySegment* left = nullptr;
  const BoundarySegment* right = nullptr;
  for (const auto& s : geometry.boundary_segments) {
    if (!s.crosses_row(x2)) continue;
    // The neighbour to the right of V(0) has its Voronoi centre at positive x1.
    const bool is_right = s.vertical_end.x1 > 0;
    (is_right ? right : left) = &s;
  }
  CutSpec out;
  if (left) {
    out.cuts.push_back(left->x1_at(x2));
    out.labels.push_back(left->neighbor);
  }
  out.labels.push_back({0, 0});
  if (right) {
    out.cuts.push_back(right->x1_at(x2));
    out.labels.push_back(right->neighbor);
  }
  return out;
}

CutSpec row_cuts(const LatticeParams& params, double x2) {
  return row_cuts(cell_geometry(params), x2);
}

Polygon clip_half_plane(const Polygon& poly, const Point2& normal, double offset) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double fa = dot(a, normal) - offset;
    const double fb = dot(b, normal) - offset;
    if (fa <= 0) out.push_back(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) {
      const double t = fa / (fa - fb);
      out.push_back({a.x1 + t * (b.x1 - a.x1), a.x2 + t * (b.x2 - a.x2)});
    }
  }
  return out;
}

double polygon_area(const Polygon& poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    twice += a.x1 * b.x2 - b.x1 * a.x2;
  }
  return std::abs(twice) / 2.0;
}

double babai_error_probability(const LatticeParams& params) {
  const Generator gen(params);
  const double h = gen.det() / 2.0;
  Polygon cell = {{-0.5, -h}, {0.5, -h}, {0.5, h}, {-0.5, h}};
  const double babai_area = polygon_area(cell);
  for (const IntegerPair& r : relevant_vectors(gen)) {
    const Point2 n = gen.point(r);
    cell = clip_half_plane(cell, n, 0.5 * dot(n, n));
  }
  return (babai_area - polygon_area(cell)) / gen.det();
}

}  // namespace nearplane
