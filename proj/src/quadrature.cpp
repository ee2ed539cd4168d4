#include "nearplane/quadrature.hpp"

#include <cmath>

#include "nearplane/errors.hpp"

namespace nearplane {

namespace {

struct Panel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth,
              int max_depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= max_depth) {
    throw QuadratureFailure("adaptive Simpson reached maximum depth without meeting tolerance");
  }
  return refine(f, {p.a, m, p.fa, flm, p.fm, left}, tol / 2.0, depth + 1, max_depth) +
         refine(f, {m, p.b, p.fm, frm, p.fb, right}, tol / 2.0, depth + 1, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const Panel whole{a, b, fa, fm, fb, simpson(a, b, fa, fm, fb)};
  return refine(f, whole, opts.abs_tol, 0, opts.max_depth);
}

double adaptive_simpson_piecewise(const std::function<double(double)>& f,
                                  std::span<const double> breakpoints,
                                  const QuadratureOptions& opts) {
  if (breakpoints.size() < 2) return 0.0;
  QuadratureOptions piece = opts;
  piece.abs_tol = opts.abs_tol / static_cast<double>(breakpoints.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    total += adaptive_simpson(f, breakpoints[i], breakpoints[i + 1], piece);
  }
  return total;
}

}  // namespace nearplane
