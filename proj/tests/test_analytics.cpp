#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nearplane/analytics.hpp"
#include "nearplane/errors.hpp"
#include "nearplane/quantizer.hpp"
#include "test_support.hpp"

using namespace nearplane;
using namespace nearplane::testing;

// Reference values below were produced by tests/oracles/analytics_oracle.py
// (scipy quadrature, independent of this code base).

TEST_CASE("coefficients_12 at the reference parameters") {
  const auto c = coefficients_12(kRef);
  CHECK(c.variant == CoefficientVariant::boundary_spans);
  CHECK(c.alpha1 == doctest::Approx(0.006593406593406596).epsilon(1e-12));
  CHECK(c.alpha2 == doctest::Approx(0.012362637362637355).epsilon(1e-12));
  const auto s = coefficients_12(kRef, CoefficientVariant::swapped_heights);
  CHECK(s.alpha1 == doctest::Approx(0.016483516483516484).epsilon(1e-10));
  CHECK(s.alpha2 == doctest::Approx(0.004945054945054945).epsilon(1e-10));
  CHECK(std::string(to_string(CoefficientVariant::boundary_spans)) == "boundary_spans");
}

TEST_CASE("segment-derived coefficients equal the span formulas") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 1000; ++i) {
    const LatticeParams p = random_params(rng);
    const CellGeometry g = cell_geometry(p);
    const auto c = coefficients_12(p);
    CHECK(rel_close(c.alpha1, g.L1 * g.H21 / (2 * g.H), 1e-10));
    CHECK(rel_close(c.alpha2, g.L2 * (g.H1 + g.H22) / (2 * g.H), 1e-10));
  }
}

TEST_CASE("coefficient limits") {
  const auto rect = coefficients_12(kRect);
  CHECK(rect.alpha1 < 1e-5);
  CHECK(rect.alpha2 < 1e-5);
  CHECK(coefficients_12(kHex).alpha1 < 1e-5);
}

TEST_CASE("pe_12 and rate_12") {
  CHECK(pe_12(kRef, 2, 3) == doctest::Approx(0.0065938 / 2 + 0.012362 / 3).epsilon(1e-4));
  CHECK(pe_12(kRef, 2, 3) == doctest::Approx(0.0074175).epsilon(1e-4));
  CHECK(pe_12(kRef, 100, 100) < pe_12(kRef, 10, 10));
  CHECK_THROWS_AS(pe_12(kRef, 0, 1), InvalidParams);

  const Rate12 r = rate_12(kRef, 2, 3);
  CHECK(r.h_u1 == doctest::Approx(2.2709505944546686 + 0.4 + 0.3 * std::log2(3.0)).epsilon(1e-12));
  CHECK(r.h_u1 == doctest::Approx(3.14644).epsilon(1e-5));
  CHECK(r.h_u1 == doctest::Approx(3.1464393446710153).epsilon(1e-12));
  CHECK(r.h_u2_given_u1 == doctest::Approx(0.3006862142089875).epsilon(1e-10));

  // H(U1) equals the entropy of the bin probabilities.
  const Quantizer12 q(cell_geometry(kRef), 2, 3);
  std::vector<double> probs;
  for (int b = 0; b < q.bin_count(); ++b) probs.push_back(q.bin_probability(b));
  CHECK(r.h_u1 == doctest::Approx(entropy(Distribution(probs))).epsilon(1e-12));
}

TEST_CASE("kappa_12") {
  CHECK(kappa_12(kRef) == doctest::Approx(0.2985692138613852).epsilon(1e-8));
  CHECK(kappa_12(kRect) < 1e-4);
  // Converges from above along n1 = n2 = 2^k, k = 4..10.
  const double expect[] = {0.29864637052346393, 0.2985909844023438,  0.29857527689180646,
                           0.2985708847209958,  0.2985696703519897, 0.29856933767797467,
                           0.29856924723901646};
  const double kappa = kappa_12(kRef);
  double prev_err = 1.0;
  for (int k = 4; k <= 10; ++k) {
    const double h = rate_12(kRef, 1 << k, 1 << k).h_u2_given_u1;
    CHECK(h == doctest::Approx(expect[k - 4]).epsilon(1e-10));
    const double err = std::abs(h - kappa);
    CHECK(err < prev_err);
    prev_err = err;
  }
  std::mt19937_64 rng(42);
  for (int i = 0; i < 50; ++i) {
    const double k = kappa_12(random_params(rng));
    CHECK(k >= 0.0);
    CHECK(k <= std::log2(3.0));
  }
}

TEST_CASE("optimal_n1") {
  CHECK(optimal_n1(kRef, 12) == 5);
  CHECK(optimal_n1(kRef, 1) == 1);
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const LatticeParams p = random_params(rng);
    const CellGeometry g = cell_geometry(p);
    const auto c = coefficients_12(p);
    if (c.alpha1 * g.L2 <= c.alpha2 * g.L1) CHECK(optimal_n1(p, 1) == 1);
    CHECK(optimal_n1(p, 50) >= optimal_n1(p, 10));
  }
}

TEST_CASE("tradeoff_curve_12 is a Pareto front") {
  const auto one = tradeoff_curve_12(kRef, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].n1 == 1);
  CHECK(one[0].n2 == 1);

  const auto curve = tradeoff_curve_12(kRef, 200);
  REQUIRE(curve.size() > 10);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].rate_bits > curve[i - 1].rate_bits);
    CHECK(curve[i].pe < curve[i - 1].pe);
  }
}

TEST_CASE("asymptotic constant of the 12 order") {
  CHECK(rate_exponent_12(kRef) == doctest::Approx(1 / 0.7));
  CHECK(asymptotic_constant_12(kRef) == doctest::Approx(0.21761921966822922).epsilon(1e-7));

  std::mt19937_64 rng(44);
  for (int i = 0; i < 100; ++i) {
    const LatticeParams p = random_params(rng);
    CHECK(rel_close(asymptotic_constant_12(p), asymptotic_constant_12_probability_form(p), 1e-10));
    CHECK(rel_close(rate_exponent_12(p), 1 / (1 - p.rcos()), 1e-12));
  }

  // The scaled error along the curve approaches the constant.
  const auto curve = tradeoff_curve_12(kRef, 1024);
  const auto& tail = curve.back();
  CHECK(tail.n2 == 1024);
  CHECK(tail.n1 == 410);
  const double scaled = tail.pe * std::exp2(rate_exponent_12(kRef) * tail.rate_bits);
  CHECK(scaled == doctest::Approx(0.2176192662458783).epsilon(1e-8));
  CHECK(std::abs(scaled / asymptotic_constant_12(kRef) - 1) < 0.05);
}

TEST_CASE("beta_21 printed and geometric forms") {
  CHECK(beta_21(kRef) == doctest::Approx(0.02884615384615384).epsilon(1e-12));
  CHECK(beta_21(kRef) == doctest::Approx(0.5 * 0.5 * 0.1100699078558014 / 0.9539392014169457).epsilon(1e-12));
  CHECK(beta_21(kHex) == doctest::Approx(1.0 / 24).epsilon(1e-5));
  CHECK(beta_21(kRect) < 1e-5);
  std::mt19937_64 rng(45);
  for (int i = 0; i < 1000; ++i) {
    const LatticeParams p = random_params(rng);
    CHECK(rel_close(beta_21(p), beta_21_geometric(p), 1e-12));
  }
  CHECK(pe_21(kRef, 1) == beta_21(kRef));
  CHECK(pe_21(kRef, 4) == doctest::Approx(beta_21(kRef) / 4));
}

TEST_CASE("rate_21, kappa_21 and the 21 asymptotic constant") {
  const CellGeometry g = cell_geometry(kRef);
  const Rate21 r = rate_21(kRef, 8);
  const double q1 = g.H1 / g.H;
  CHECK(r.h_u2 == doctest::Approx(1.0101190680613157 + 2 * q1 * 3).epsilon(1e-12));
  const Quantizer21 q(g, 8);
  std::vector<double> probs;
  for (int b = 0; b < q.bin_count(); ++b) probs.push_back(q.bin_probability(b));
  CHECK(r.h_u2 == doctest::Approx(entropy(Distribution(probs))).epsilon(1e-12));

  CHECK(kappa_21(kRef) == doctest::Approx(0.21730851813511254).epsilon(1e-8));
  CHECK(kappa_21(kRect) < 1e-4);
  CHECK(rate_21(kRef, 4096).h_u1_given_u2 == doctest::Approx(kappa_21(kRef)).epsilon(1e-5));
  CHECK(asymptotic_constant_21(kRef) == doctest::Approx(1.1513892567503388).epsilon(1e-7));

  const auto curve = tradeoff_curve_21(kRef, 4096);
  const auto& tail = curve.back();
  const double scaled = tail.pe * std::exp2(tail.rate_bits / (1 - g.H0 / g.H));
  CHECK(std::abs(scaled / asymptotic_constant_21(kRef) - 1) < 0.05);
}

TEST_CASE("round-one distributions and the unbounded-round averages") {
  const auto [q, p] = round1_distributions(kRef);
  CHECK(q[0] == doctest::Approx(0.11538).epsilon(1e-4));
  CHECK(q[1] == doctest::Approx(0.76923).epsilon(1e-4));
  CHECK(p[0] == doctest::Approx(0.15));
  CHECK(p[1] == doctest::Approx(0.5));
  CHECK(p[2] == doctest::Approx(0.35));
  const auto hex = round1_distributions(kHex);
  CHECK(hex.q[0] == doctest::Approx(1.0 / 6).epsilon(1e-5));
  CHECK(hex.q[1] == doctest::Approx(2.0 / 3).epsilon(1e-5));
  CHECK(hex.p[0] == doctest::Approx(0.25).epsilon(1e-5));
  CHECK(hex.p[1] == doctest::Approx(0.5));

  CHECK(rbar_infinite(kRef) == doctest::Approx(1.8041141718187033).epsilon(1e-12));
  CHECK(nbar_infinite(kRef) == doctest::Approx(1.2307692307692308).epsilon(1e-12));
  CHECK(rbar_infinite(kHex) == doctest::Approx(2.4182937171008283).epsilon(1e-10));
  CHECK(rbar_infinite(kHex) == doctest::Approx(2.42).epsilon(0.005));
  CHECK(rbar_infinite(kRect) < 1e-4);
  CHECK(nbar_infinite(kRect) == doctest::Approx(1.0).epsilon(1e-5));

  std::mt19937_64 rng(46);
  for (int i = 0; i < 1000; ++i) {
    const LatticeParams prm = random_params(rng);
    const auto d = round1_distributions(prm);
    CHECK(d.p[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rbar_infinite(prm) >= entropy(d.q));
    CHECK(nbar_infinite(prm) >= 1.0);
    CHECK(nbar_infinite(prm) <= 2.0);
    CHECK(entropy(d.q) <= std::log2(3.0));
    CHECK(entropy(d.p) <= std::log2(3.0));
  }
}

TEST_CASE("rbar_infinite decreases in theta at rho = 1") {
  const double lo = std::numbers::pi / 3 + 1e-6;
  const double hi = std::numbers::pi / 2 - 1e-6;
  double prev = 1e9;
  for (int i = 0; i < 50; ++i) {
    const double r = rbar_infinite({1.0, lo + (hi - lo) * i / 49.0});
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("single-round schemes never do worse than Babai alone") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 200; ++i) {
    const LatticeParams p = random_params(rng);
    const double babai = babai_error_probability(p);
    for (int n : {1, 2, 7, 100}) {
      CHECK(pe_12(p, n, n) > 0.0);
      CHECK(pe_12(p, n, n) <= babai);
      CHECK(pe_12(p, 1, n) <= babai);
      CHECK(pe_21(p, n) > 0.0);
      CHECK(pe_21(p, n) <= babai);
    }
  }
}

TEST_CASE("pe_at_rate") {
  SUBCASE("order 21 at 4 bits") {
    const RateMatch m = pe_at_rate(kRef, Scheme::order21, 4.0);
    CHECK_FALSE(m.asymptotic);
    CHECK(m.below.n2 == 4137);
    CHECK(m.below.rate_bits == doctest::Approx(3.999974338989823).epsilon(1e-12));
    CHECK(m.pe_below == doctest::Approx(6.972722708763316e-06).epsilon(1e-10));
    CHECK(m.pe_interp == doctest::Approx(6.972185297236366e-06).epsilon(1e-8));
  }
  SUBCASE("budget exactly on a curve point") {
    for (Scheme s : {Scheme::order12, Scheme::order21}) {
      const TradeoffPoint pt = s == Scheme::order12 ? tradeoff_curve_12(kRef, 5).back() : tradeoff_curve_21(kRef, 5).back();
      const RateMatch m = pe_at_rate(kRef, s, pt.rate_bits);
      CHECK(m.pe_below == doctest::Approx(pt.pe).epsilon(1e-12));
      CHECK(m.pe_interp == doctest::Approx(pt.pe).epsilon(1e-12));
    }
  }
  SUBCASE("large budgets") {
    const RateMatch a = pe_at_rate(kRef, Scheme::order12, 6.0);
    const RateMatch b = pe_at_rate(kRef, Scheme::order12, 12.0);
    const RateMatch c = pe_at_rate(kRef, Scheme::order12, 60.0);
    CHECK(b.pe_below < a.pe_below);
    CHECK(c.pe_below < b.pe_below);
    CHECK(c.pe_below < 1e-15);
  }
  SUBCASE("interpolated value lies between the bracketing points") {
    const RateMatch m = pe_at_rate(kRef, Scheme::order12, 5.0);
    CHECK(m.pe_interp <= m.pe_below);
    CHECK(m.below.rate_bits <= 5.0);
  }
  CHECK_THROWS_AS(pe_at_rate(kRef, Scheme::order12, 0.5), BudgetTooSmall);
}
