#pragma once

#include <vector>

#include "nearplane/entropy.hpp"
#include "nearplane/geometry.hpp"
#include "nearplane/quadrature.hpp"

namespace nearplane {

// ---------------------------------------------------------------------------
// Order 12: S1 quantizes x1, S2 answers with a ternary decision.
// ---------------------------------------------------------------------------

/// Which heights multiply L1 and L2 in the 12-order error coefficients.
///  - boundary_spans: alpha1 = L1*H21/(2 det V), alpha2 = L2*(H1+H22)/(2 det V);
///    the rise of each Voronoi boundary over the interval it actually crosses.
///  - swapped_heights: alpha1 = L1*(H1+H22)/(2 det V), alpha2 = L2*H21/(2 det V);
///    the same terms with the height factors interchanged. Kept for reporting
///    only; the Monte Carlo check rejects it.
enum class CoefficientVariant { boundary_spans, swapped_heights };

const char* to_string(CoefficientVariant v);

struct Scheme12Coefficients {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  CoefficientVariant variant = CoefficientVariant::boundary_spans;
};

/// boundary_spans is built from the segment list: for I_1 and I_2, sum the
/// rise of every segment crossing the interval times its length, over 2 det V.
Scheme12Coefficients coefficients_12(const LatticeParams& params,
                                     CoefficientVariant variant = CoefficientVariant::boundary_spans);

/// alpha1/n1 + alpha2/n2 with boundary_spans coefficients.
double pe_12(const LatticeParams& params, int n1, int n2);

struct Rate12 {
  double h_u1 = 0.0;           // H(U1), closed form over the five intervals
  double h_u2_given_u1 = 0.0;  // bin-weighted entropy of S2's answer
  double total() const { return h_u1 + h_u2_given_u1; }
};

Rate12 rate_12(const LatticeParams& params, int n1, int n2);

/// Limit of H(U2|U1) as the bins shrink.
double kappa_12(const LatticeParams& params, const QuadratureOptions& opts = {});

/// ceil(alpha1*L2*n2 / (alpha2*L1)), at least 1. Throws DegenerateInterval
/// when L1 == 0.
int optimal_n1(const LatticeParams& params, int n2);

struct TradeoffPoint {
  int n1 = 0;  // order 12 only
  int n2 = 0;  // order 12: n2, order 21: n
  double rate_bits = 0.0;
  double pe = 0.0;
};

/// Points (optimal_n1(n2), n2) for n2 = 1..n2_max, pruned to the Pareto front.
std::vector<TradeoffPoint> tradeoff_curve_12(const LatticeParams& params, int n2_max);

/// Exponent multiplying R in the 12-order decay: L / (2 (L1 + L2)).
double rate_exponent_12(const LatticeParams& params);

/// lim pe * 2^{L R / (2(L1+L2))}, written with interval lengths.
double asymptotic_constant_12(const LatticeParams& params);
/// The same limit written with P_i = L_i / L and exponent 1/(1 - P_0).
double asymptotic_constant_12_probability_form(const LatticeParams& params);

// ---------------------------------------------------------------------------
// Order 21: S2 quantizes x2, S1 answers with a ternary decision.
// ---------------------------------------------------------------------------

/// beta = (1/2) ((2 L2 + L1) / L) (H1 / H).
double beta_21(const LatticeParams& params);
/// beta from the row geometry: H1^2 (|1/s| + |1/s'|) / (2 det V).
double beta_21_geometric(const LatticeParams& params);

double pe_21(const LatticeParams& params, int n);

struct Rate21 {
  double h_u2 = 0.0;           // H(Q) + (1 - Q0) log2 n
  double h_u1_given_u2 = 0.0;  // bin-weighted entropy of S1's answer
  double total() const { return h_u2 + h_u1_given_u2; }
};

Rate21 rate_21(const LatticeParams& params, int n);

double kappa_21(const LatticeParams& params, const QuadratureOptions& opts = {});

/// beta * 2^{(H(Q) + kappa) / (1 - Q0)}.
double asymptotic_constant_21(const LatticeParams& params);

std::vector<TradeoffPoint> tradeoff_curve_21(const LatticeParams& params, int n_max);

// ---------------------------------------------------------------------------
// Unbounded rounds.
// ---------------------------------------------------------------------------

struct Round1Distributions {
  Distribution q;  // U2 over {-1, 0, 1}
  Distribution p;  // U1 over {-1, 0, 1} given U2 = 1
};

Round1Distributions round1_distributions(const LatticeParams& params);

/// Mean bits: H(Q) + (1-Q0) H(P) + 4 (1-P0)(1-Q0).
double rbar_infinite(const LatticeParams& params);
/// Mean rounds: 1 + 2 (1-P0)(1-Q0).
double nbar_infinite(const LatticeParams& params);

// ---------------------------------------------------------------------------
// Fixed-rate comparison.
// ---------------------------------------------------------------------------

enum class Scheme { order12, order21 };

struct RateMatch {
  double pe_below = 0.0;   // best point with rate <= budget
  double pe_interp = 0.0;  // log2(pe) interpolated linearly in rate
  TradeoffPoint below;     // the point behind pe_below (sizes 0 in the asymptotic tail)
  bool asymptotic = false; // true when the budget lies beyond the enumerated sizes
};

/// Sizes are enumerated exactly up to `kExactSizeLimit`; beyond that the
/// asymptotic constant gives pe as a function of rate.
inline constexpr int kExactSizeLimit = 1 << 16;

RateMatch pe_at_rate(const LatticeParams& params, Scheme scheme, double rate_budget);

}  // namespace nearplane
