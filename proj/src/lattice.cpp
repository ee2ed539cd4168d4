#include "nearplane/lattice.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nearplane/errors.hpp"

namespace nearplane {

double LatticeParams::rcos() const { return rho * std::cos(theta); }
double LatticeParams::rsin() const { return rho * std::sin(theta); }

void validate(const LatticeParams& params) {
  if (!std::isfinite(params.rho) || !std::isfinite(params.theta)) {
    throw InvalidParams("lattice parameters must be finite");
  }
  if (params.rho < 1.0) {
    std::ostringstream msg;
    msg << "rho must be >= 1 (got " << params.rho << ")";
    throw InvalidParams(msg.str());
  }
  const double a = params.rcos();
  if (!(a > 0.0 && a < 0.5)) {
    std::ostringstream msg;
    msg << "rho*cos(theta) must lie strictly inside (0, 1/2) (got " << a << ")";
    throw InvalidParams(msg.str());
  }
  if (!(params.rsin() > 0.0)) {
    throw InvalidParams("rho*sin(theta) must be positive");
  }
}

Generator::Generator(const LatticeParams& params) : params_(params) {
  validate(params);
  v12_ = params.rcos();
  v22_ = params.rsin();
}

Generator make_generator(const LatticeParams& params) { return Generator(params); }

namespace {

// Nearest integer with the residual v - k in (-1/2, 1/2].
long round_half_open(double v) { return static_cast<long>(std::ceil(v - 0.5)); }

}  // namespace

IntegerPair babai_nearest_plane(const Point2& x, const Generator& gen) {
  const long u2 = round_half_open(x.x2 / gen.v22());
  const long u1 = round_half_open(x.x1 - gen.v12() * static_cast<double>(u2));
  return {u1, u2};
}

double squared_distance(const Point2& x, const Point2& y) {
  const double d1 = x.x1 - y.x1;
  const double d2 = x.x2 - y.x2;
  return d1 * d1 + d2 * d2;
}

IntegerPair exact_nearest_point(const Point2& x, const Generator& gen) {
  const IntegerPair center = babai_nearest_plane(x, gen);
  IntegerPair best = center;
  double best_d = std::numeric_limits<double>::infinity();
  // Row-major over (u2, u1) so the first strict minimum is the smallest (u2, u1).
  for (long du2 = -2; du2 <= 2; ++du2) {
    for (long du1 = -2; du1 <= 2; ++du1) {
      const IntegerPair u{center.u1 + du1, center.u2 + du2};
      const double d = squared_distance(x, gen.point(u));
      if (d < best_d) {
        best_d = d;
        best = u;
      }
    }
  }
  return best;
}

std::array<IntegerPair, 6> relevant_vectors(const Generator&) {
  return {IntegerPair{1, 0}, IntegerPair{-1, 0}, IntegerPair{0, 1},
          IntegerPair{0, -1}, IntegerPair{-1, 1}, IntegerPair{1, -1}};
}

bool in_voronoi_cell(const Point2& x, const Generator& gen) {
  for (const IntegerPair& r : relevant_vectors(gen)) {
    const Point2 n = gen.point(r);
    if (dot(x, n) > 0.5 * dot(n, n)) return false;
  }
  return true;
}

}  // namespace nearplane
