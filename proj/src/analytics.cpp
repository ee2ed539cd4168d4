#include "nearplane/analytics.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <functional>

#include "nearplane/errors.hpp"
#include "nearplane/quantizer.hpp"

namespace nearplane {

const char* to_string(CoefficientVariant v) {
  switch (v) {
    case CoefficientVariant::boundary_spans:
      return "boundary_spans";
    case CoefficientVariant::swapped_heights:
      return "swapped_heights";
  }
  return "unknown";
}

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) throw InvalidParams(std::string(what) + " must be >= 1");
}

// Sum over segments crossing the interval (lo, hi] of rise * length.
double crossing_rise_times_length(const CellGeometry& g, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double length = hi - lo;
  double total = 0.0;
  for (const auto& s : g.boundary_segments) {
    if (s.crosses_column(mid)) total += std::abs(s.slope) * length * length;
  }
  return total;
}

}  // namespace

Scheme12Coefficients coefficients_12(const LatticeParams& params, CoefficientVariant variant) {
  const CellGeometry g = cell_geometry(params);
  Scheme12Coefficients c;
  c.variant = variant;
  if (variant == CoefficientVariant::boundary_spans) {
    // Each boundary of slope s over a bin of width d costs |s| d^2 / 4 with
    // the cut at mid-height; n bins on each of I_k and I_{-k} give
    // |s| L_k^2 / (2 n) in total.
    c.alpha1 = crossing_rise_times_length(g, g.t_1, g.t_2) / (2.0 * g.H);
    c.alpha2 = crossing_rise_times_length(g, g.t_2, 0.5) / (2.0 * g.H);
  } else {
    c.alpha1 = g.L1 * (g.H1 + g.H22) / (2.0 * g.H);
    c.alpha2 = g.H21 * g.L2 / (2.0 * g.H);
  }
  return c;
}

double pe_12(const LatticeParams& params, int n1, int n2) {
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  const auto c = coefficients_12(params);
  return c.alpha1 / n1 + c.alpha2 / n2;
}

namespace {

double h_lengths(const CellGeometry& g) {
  const std::array<double, 5> l = {g.L0 / g.L, g.L1 / g.L, g.L1 / g.L, g.L2 / g.L, g.L2 / g.L};
  return entropy_unchecked(l);
}

double conditional_entropy_12(const CellGeometry& g, int n1, int n2) {
  const BinnedAxis axis({-0.5, g.t_m2, g.t_m1, g.t_1, g.t_2, 0.5}, {n2, n1, 1, n1, n2});
  double h = 0.0;
  for (int b = 0; b < axis.bin_count(); ++b) {
    h += axis.bin_width(b) / g.L * entropy_unchecked(column_distribution(g, axis.bin_mid(b)));
  }
  return h;
}

double conditional_entropy_21(const CellGeometry& g, int n) {
  const BinnedAxis axis({-g.half_height(), g.tau_m1, g.tau_1, g.half_height()}, {n, 1, n});
  double h = 0.0;
  for (int b = 0; b < axis.bin_count(); ++b) {
    h += axis.bin_width(b) / g.H * entropy_unchecked(row_distribution(g, axis.bin_mid(b)));
  }
  return h;
}

}  // namespace

Rate12 rate_12(const LatticeParams& params, int n1, int n2) {
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  const CellGeometry g = cell_geometry(params);
  Rate12 r;
  r.h_u1 = h_lengths(g) + (2.0 * g.L1 / g.L) * std::log2(n1) + (2.0 * g.L2 / g.L) * std::log2(n2);
  r.h_u2_given_u1 = conditional_entropy_12(g, n1, n2);
  return r;
}

double kappa_12(const LatticeParams& params, const QuadratureOptions& opts) {
  const CellGeometry g = cell_geometry(params);
  const auto integrand = [&g](double x) { return entropy_unchecked(column_distribution(g, x)); };
  // The upper boundary ends at t_{-2}, which puts a kink in the integrand there.
  const std::array<double, 3> breaks = {-0.5, g.t_m2, g.t_m1};
  QuadratureOptions scaled = opts;
  scaled.abs_tol = opts.abs_tol * g.L / 2.0;
  return 2.0 / g.L * adaptive_simpson_piecewise(integrand, breaks, scaled);
}

int optimal_n1(const LatticeParams& params, int n2) {
  require_positive(n2, "n2");
  const CellGeometry g = cell_geometry(params);
  if (g.L1 <= 0.0) throw DegenerateInterval("L1 = 0: the 12-order scheme depends on n2 only");
  const auto c = coefficients_12(params);
  const double raw = std::ceil(c.alpha1 * g.L2 * n2 / (c.alpha2 * g.L1));
  if (!(raw < static_cast<double>(INT_MAX))) return INT_MAX;
  return std::max(1, static_cast<int>(raw));
}

namespace {

std::vector<TradeoffPoint> pareto(std::vector<TradeoffPoint> pts) {
  std::stable_sort(pts.begin(), pts.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
    return a.rate_bits < b.rate_bits || (a.rate_bits == b.rate_bits && a.pe < b.pe);
  });
  std::vector<TradeoffPoint> out;
  for (const auto& p : pts) {
    if (out.empty() || p.pe < out.back().pe) out.push_back(p);
  }
  return out;
}

TradeoffPoint point_12(const LatticeParams& params, int n2) {
  TradeoffPoint p;
  p.n2 = n2;
  p.n1 = optimal_n1(params, n2);
  p.rate_bits = rate_12(params, p.n1, n2).total();
  p.pe = pe_12(params, p.n1, n2);
  return p;
}

TradeoffPoint point_21(const LatticeParams& params, int n) {
  TradeoffPoint p;
  p.n2 = n;
  p.rate_bits = rate_21(params, n).total();
  p.pe = pe_21(params, n);
  return p;
}

}  // namespace

std::vector<TradeoffPoint> tradeoff_curve_12(const LatticeParams& params, int n2_max) {
  require_positive(n2_max, "n2_max");
  std::vector<TradeoffPoint> pts;
  pts.reserve(static_cast<std::size_t>(n2_max));
  for (int n2 = 1; n2 <= n2_max; ++n2) pts.push_back(point_12(params, n2));
  return pareto(std::move(pts));
}

double rate_exponent_12(const LatticeParams& params) {
  const CellGeometry g = cell_geometry(params);
  return g.L / (2.0 * (g.L1 + g.L2));
}

namespace {

double log2_asymptotic_constant_12(const LatticeParams& params) {
  const CellGeometry g = cell_geometry(params);
  if (g.L1 <= 0.0) throw DegenerateInterval("L1 = 0: asymptotic constant needs L1 > 0");
  const auto c = coefficients_12(params);
  const double ratio = c.alpha1 * g.L2 / (c.alpha2 * g.L1);
  return std::log2(c.alpha2 * (1.0 + g.L1 / g.L2)) + g.L1 / (g.L1 + g.L2) * std::log2(ratio) +
         g.L * (kappa_12(params) + h_lengths(g)) / (2.0 * (g.L1 + g.L2));
}

}  // namespace

double asymptotic_constant_12(const LatticeParams& params) {
  return std::exp2(log2_asymptotic_constant_12(params));
}

double asymptotic_constant_12_probability_form(const LatticeParams& params) {
  const CellGeometry g = cell_geometry(params);
  if (g.L1 <= 0.0) throw DegenerateInterval("L1 = 0: asymptotic constant needs L1 > 0");
  const auto c = coefficients_12(params);
  const double p0 = g.L0 / g.L;
  const double p1 = g.L1 / g.L;
  const double p2 = g.L2 / g.L;
  const Distribution probs{p0, p1, p1, p2, p2};
  const double ratio = c.alpha1 * p2 / (c.alpha2 * p1);
  return c.alpha2 * (1.0 + p1 / p2) * std::pow(ratio, p1 / (p1 + p2)) *
         std::exp2((kappa_12(params) + entropy(probs)) / (1.0 - p0));
}

double beta_21(const LatticeParams& params) {
  const CellGeometry g = cell_geometry(params);
  return 0.5 * ((2.0 * g.L2 + g.L1) / g.L) * (g.H1 / g.H);
}

double beta_21_geometric(const LatticeParams& params) {
  const CellGeometry g = cell_geometry(params);
  // Each boundary crossing a row of height d costs d^2 |dx1/dx2| / 4; n rows on
  // each of J_1 and J_{-1} give H1^2 |1/s| / (2n) per boundary.
  double inv_slopes = 0.0;
  for (const auto& s : g.boundary_segments) {
    if (s.upper()) inv_slopes += std::abs(1.0 / s.slope);
  }
  return g.H1 * g.H1 * inv_slopes / (2.0 * g.H);
}

double pe_21(const LatticeParams& params, int n) {
  require_positive(n, "n");
  return beta_21(params) / n;
}

Rate21 rate_21(const LatticeParams& params, int n) {
  require_positive(n, "n");
  const CellGeometry g = cell_geometry(params);
  const double q1 = g.H1 / g.H;
  const std::array<double, 3> q = {q1, g.H0 / g.H, q1};
  Rate21 r;
  r.h_u2 = entropy_unchecked(q) + (1.0 - q[1]) * std::log2(n);
  r.h_u1_given_u2 = conditional_entropy_21(g, n);
  return r;
}

double kappa_21(const LatticeParams& params, const QuadratureOptions& opts) {
  const CellGeometry g = cell_geometry(params);
  const auto integrand = [&g](double x2) { return entropy_unchecked(row_distribution(g, x2)); };
  QuadratureOptions scaled = opts;
  scaled.abs_tol = opts.abs_tol * g.H / 2.0;
  return 2.0 / g.H * adaptive_simpson(integrand, -g.half_height(), g.tau_m1, scaled);
}

namespace {

double log2_asymptotic_constant_21(const LatticeParams& params) {
  const CellGeometry g = cell_geometry(params);
  const double q1 = g.H1 / g.H;
  const std::array<double, 3> q = {q1, g.H0 / g.H, q1};
  return std::log2(beta_21(params)) + (entropy_unchecked(q) + kappa_21(params)) / (1.0 - q[1]);
}

}  // namespace

double asymptotic_constant_21(const LatticeParams& params) {
  return std::exp2(log2_asymptotic_constant_21(params));
}

std::vector<TradeoffPoint> tradeoff_curve_21(const LatticeParams& params, int n_max) {
  require_positive(n_max, "n_max");
  std::vector<TradeoffPoint> pts;
  pts.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) pts.push_back(point_21(params, n));
  return pareto(std::move(pts));
}

Round1Distributions round1_distributions(const LatticeParams& params) {
  const CellGeometry g = cell_geometry(params);
  const double q1 = g.H1 / g.H;
  return {Distribution{q1, g.H0 / g.H, q1},
          Distribution{g.t_m2 + 0.5, g.t_1 - g.t_m2, 0.5 - g.t_1}};
}

double rbar_infinite(const LatticeParams& params) {
  const auto [q, p] = round1_distributions(params);
  return entropy(q) + (1.0 - q[1]) * entropy(p) + 4.0 * (1.0 - p[1]) * (1.0 - q[1]);
}

double nbar_infinite(const LatticeParams& params) {
  const auto [q, p] = round1_distributions(params);
  return 1.0 + 2.0 * (1.0 - p[1]) * (1.0 - q[1]);
}

namespace {

double interp_log(const TradeoffPoint& lo, const TradeoffPoint& hi, double budget) {
  if (!(hi.rate_bits > lo.rate_bits)) return lo.pe;
  const double t = (budget - lo.rate_bits) / (hi.rate_bits - lo.rate_bits);
  return std::exp2(std::log2(lo.pe) + t * (std::log2(hi.pe) - std::log2(lo.pe)));
}

}  // namespace

RateMatch pe_at_rate(const LatticeParams& params, Scheme scheme, double rate_budget) {
  validate(params);
  const std::function<TradeoffPoint(int)> point = [&](int n) {
    return scheme == Scheme::order12 ? point_12(params, n) : point_21(params, n);
  };

  const TradeoffPoint first = point(1);
  if (rate_budget < first.rate_bits) {
    throw BudgetTooSmall("rate budget below the coarsest quantizer's rate");
  }

  // Doubling then bisection for the largest size whose rate fits.
  int lo = 1;
  int hi = 0;
  while (true) {
    const long next = 2L * lo;
    if (next > kExactSizeLimit) break;
    if (point(static_cast<int>(next)).rate_bits <= rate_budget) {
      lo = static_cast<int>(next);
    } else {
      hi = static_cast<int>(next);
      break;
    }
  }

  RateMatch out;
  if (hi == 0) {
    // Budget beyond the enumerated sizes: pe = C * 2^{-e * budget}.
    double log2_c = 0.0;
    double exponent = 0.0;
    if (scheme == Scheme::order12) {
      log2_c = log2_asymptotic_constant_12(params);
      exponent = rate_exponent_12(params);
    } else {
      const CellGeometry g = cell_geometry(params);
      log2_c = log2_asymptotic_constant_21(params);
      exponent = 1.0 / (2.0 * g.H1 / g.H);
    }
    out.asymptotic = true;
    out.pe_below = out.pe_interp = std::exp2(log2_c - exponent * rate_budget);
    out.below.rate_bits = rate_budget;
    out.below.pe = out.pe_below;
    return out;
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (point(mid).rate_bits <= rate_budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Rate is monotone up to O(1/n^2) wiggles in the conditional entropy;
  // look a little past the bisection point for feasible stragglers.
  TradeoffPoint best = point(lo);
  TradeoffPoint next = point(lo + 1);
  constexpr int kWindow = 16;
  for (int n = lo + 1; n <= lo + kWindow; ++n) {
    const TradeoffPoint p = n == lo + 1 ? next : point(n);
    if (p.rate_bits <= rate_budget && p.pe < best.pe) best = p;
  }
  for (int n = best.n2 + 1; n <= best.n2 + kWindow; ++n) {
    const TradeoffPoint p = point(n);
    if (p.rate_bits > rate_budget) {
      next = p;
      break;
    }
  }
  out.below = best;
  out.pe_below = best.pe;
  out.pe_interp = interp_log(best, next, rate_budget);
  return out;
}

}  // namespace nearplane
