#pragma once

#include <vector>

#include "nearplane/lattice.hpp"

namespace nearplane {

/// The part of a relevant-vector bisector that separates V(0) from a
/// neighbouring Voronoi cell inside B(0). Each segment is the diagonal of
/// a rectangle touching one corner of B(0): one endpoint lies on a
/// horizontal edge (x2 = +-H/2), the other on a vertical edge (x1 = +-1/2).
struct BoundarySegment {
  IntegerPair neighbor;
  Point2 normal;        // V * neighbor
  double offset = 0.0;  // |V * neighbor|^2 / 2
  Point2 horizontal_end;
  Point2 vertical_end;
  double slope = 0.0;   // dx2/dx1

  double x1_lo() const;
  double x1_hi() const;
  double x2_lo() const;
  double x2_hi() const;

  double x2_at(double x1) const { return (offset - normal.x1 * x1) / normal.x2; }
  double x1_at(double x2) const { return (offset - normal.x2 * x2) / normal.x1; }

  /// True when the neighbour lies above (its Voronoi cell is cut off the top of B(0)).
  bool upper() const { return neighbor.u2 > 0; }

  /// Vertical line at x1 crosses the segment strictly inside B(0).
  bool crosses_column(double x1) const;
  /// Horizontal line at x2 crosses the segment strictly inside B(0).
  bool crosses_row(double x2) const;

  /// Positive value on the neighbour's side of the bisector.
  double side(const Point2& x) const { return dot(x, normal) - offset; }
};

/// Thresholds, lengths and heights of B(0) relative to V(0).
struct CellGeometry {
  LatticeParams params;
  double t_m2 = 0, t_m1 = 0, t_1 = 0, t_2 = 0;  // x1 thresholds
  double tau_m1 = 0, tau_1 = 0;                 // x2 thresholds
  double L0 = 0, L1 = 0, L2 = 0, L = 1.0;
  double H = 0, H0 = 0, H1 = 0, H21 = 0, H22 = 0;
  std::vector<BoundarySegment> boundary_segments;

  double half_height() const { return 0.5 * H; }
  bool contains(const Point2& x) const {
    return x.x1 > -0.5 && x.x1 <= 0.5 && x.x2 > -0.5 * H && x.x2 <= 0.5 * H;
  }
  /// Segment whose neighbour is `neighbor`; throws std::out_of_range if absent.
  const BoundarySegment& segment_for(const IntegerPair& neighbor) const;
};

CellGeometry cell_geometry(const LatticeParams& params);

/// Decision thresholds along one line through B(0) and the lattice point
/// decoded in each resulting sub-interval, in ascending coordinate order.
struct CutSpec {
  std::vector<double> cuts;
  std::vector<IntegerPair> labels;
};

/// Cuts in x2 along the vertical line at x1 in (-1/2, 1/2].
CutSpec strip_cuts(const CellGeometry& geometry, double x1);
CutSpec strip_cuts(const LatticeParams& params, double x1);

/// Cuts in x1 along the horizontal line at x2 in (-H/2, H/2].
CutSpec row_cuts(const CellGeometry& geometry, double x2);
CutSpec row_cuts(const LatticeParams& params, double x2);

/// Area of B(0) outside V(0) over the area of B(0), by polygon clipping.
double babai_error_probability(const LatticeParams& params);

/// Convex polygon helpers used by babai_error_probability.
using Polygon = std::vector<Point2>;
Polygon clip_half_plane(const Polygon& poly, const Point2& normal, double offset);
double polygon_area(const Polygon& poly);

}  // namespace nearplane
