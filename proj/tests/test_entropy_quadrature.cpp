#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nearplane/entropy.hpp"
#include "nearplane/errors.hpp"
#include "nearplane/quadrature.hpp"

using namespace nearplane;

TEST_CASE("entropy worked examples") {
  CHECK(entropy(Distribution{1.0}) == 0.0);
  CHECK(entropy(Distribution{0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(entropy(Distribution{2.0 / 3, 1.0 / 6, 1.0 / 6}) == doctest::Approx(1.2516291673878228).epsilon(1e-14));
  CHECK(entropy(Distribution{0.3, 0.2, 0.2, 0.15, 0.15}) == doctest::Approx(2.2709505944546686).epsilon(1e-14));
  CHECK(entropy(Distribution{0.0, 1.0, 0.0}) == 0.0);
}

TEST_CASE("entropy stays within [0, log2 k]") {
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  const double h = entropy(Distribution(p));
  CHECK(h >= 0.0);
  CHECK(h <= 2.0);
  CHECK(entropy(Distribution{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
}

TEST_CASE("Distribution rejects invalid input") {
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), InvalidDistribution);
  CHECK_THROWS_AS(Distribution({-0.1, 1.1}), InvalidDistribution);
  CHECK_THROWS_AS(Distribution(std::vector<double>{}), InvalidDistribution);
  CHECK_NOTHROW(Distribution({0.5, 0.5 + 5e-11}));
}

TEST_CASE("ideal_codelength") {
  CHECK(ideal_codelength(0.5) == doctest::Approx(1.0));
  CHECK(ideal_codelength(1.0) == 0.0);
  CHECK(ideal_codelength(0.35) == doctest::Approx(1.5145731728297582));
}

TEST_CASE("adaptive_simpson on smooth integrands") {
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0, std::numbers::pi) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(adaptive_simpson([](double x) { return std::exp(x); }, 0, 1) ==
        doctest::Approx(std::numbers::e - 1).epsilon(1e-9));
  // x log2 x has an unbounded derivative at 0 but converges.
  const double v = adaptive_simpson([](double x) { return x > 0 ? x * std::log2(x) : 0.0; }, 0, 1);
  CHECK(v == doctest::Approx(-1.0 / (4 * std::numbers::ln2)).epsilon(1e-8));
}

TEST_CASE("adaptive_simpson_piecewise handles a kink at a breakpoint") {
  const std::vector<double> b{-1.0, 0.3, 1.0};
  const double v = adaptive_simpson_piecewise([](double x) { return std::abs(x - 0.3); }, b);
  CHECK(v == doctest::Approx(0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7).epsilon(1e-12));
}

TEST_CASE("adaptive_simpson reports failure at the depth limit") {
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.max_depth = 3;
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return std::sin(50 * x); }, 0, 3, opts), QuadratureFailure);
}
