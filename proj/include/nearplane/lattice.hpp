#pragma once

#include <array>
#include <compare>

namespace nearplane {

/// Length ratio and angle of the second basis vector. The first basis
/// vector is always (1, 0).
struct LatticeParams {
  double rho = 1.0;
  double theta = 0.0;

  double rcos() const;  // rho*cos(theta)
  double rsin() const;  // rho*sin(theta), also the Babai cell height
};

/// Throws InvalidParams unless rho >= 1 and 0 < rho*cos(theta) < 1/2.
void validate(const LatticeParams& params);

/// Integer lattice coordinates; the plane point is V*u.
struct IntegerPair {
  long u1 = 0;
  long u2 = 0;

  friend bool operator==(const IntegerPair&, const IntegerPair&) = default;
  friend auto operator<=>(const IntegerPair&, const IntegerPair&) = default;
  IntegerPair operator-() const { return {-u1, -u2}; }
};

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
  Point2 operator-() const { return {-x1, -x2}; }
};

inline double dot(const Point2& a, const Point2& b) { return a.x1 * b.x1 + a.x2 * b.x2; }

/// Upper-triangular generator V = [[1, rho cos], [0, rho sin]].
class Generator {
 public:
  explicit Generator(const LatticeParams& params);

  const LatticeParams& params() const { return params_; }
  Point2 v1() const { return {1.0, 0.0}; }
  Point2 v2() const { return {v12_, v22_}; }
  double v12() const { return v12_; }
  double v22() const { return v22_; }
  double det() const { return v22_; }

  /// Plane point V*u.
  Point2 point(const IntegerPair& u) const {
    return {static_cast<double>(u.u1) + v12_ * static_cast<double>(u.u2),
            v22_ * static_cast<double>(u.u2)};
  }

 private:
  LatticeParams params_;
  double v12_;
  double v22_;
};

Generator make_generator(const LatticeParams& params);

/// Nearest-plane (Babai) point. The residual x - V*u always lies in the
/// half-open cell (-1/2, 1/2] x (-H/2, H/2].
IntegerPair babai_nearest_plane(const Point2& x, const Generator& gen);

/// True nearest lattice point by exhaustive search over the 5x5 window
/// around the Babai point. Ties go to the smallest (u2, u1).
IntegerPair exact_nearest_point(const Point2& x, const Generator& gen);

/// The six relevant vectors +-(1,0), +-(0,1), +-(-1,1) in lattice coordinates.
std::array<IntegerPair, 6> relevant_vectors(const Generator& gen);

/// Closed Voronoi cell of the origin.
bool in_voronoi_cell(const Point2& x, const Generator& gen);

double squared_distance(const Point2& x, const Point2& y);

}  // namespace nearplane
