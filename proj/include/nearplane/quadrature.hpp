#pragma once

#include <functional>
#include <span>

namespace nearplane {

struct QuadratureOptions {
  double abs_tol = 1e-9;
  int max_depth = 40;
};

/// Adaptive Simpson integration of f over [a, b]. Throws QuadratureFailure
/// when a subinterval reaches max_depth without meeting its share of the
/// tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts = {});

/// Integrate over consecutive pieces [b0, b1], [b1, b2], ... so kinks at
/// the breakpoints never fall inside a Simpson panel. The tolerance is
/// split evenly between pieces.
double adaptive_simpson_piecewise(const std::function<double(double)>& f,
                                  std::span<const double> breakpoints,
                                  const QuadratureOptions& opts = {});

}  // namespace nearplane
