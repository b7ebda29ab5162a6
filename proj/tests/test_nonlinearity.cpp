#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "timemap/nonlinearity.hpp"

using namespace timemap;
using Catch::Approx;

TEST_CASE("cubic f at its roots and a sample point", "[nonlinearity]") {
  for (double M : {0.1, 1.0, 6.0, 10.0}) {
    const CubicNonlinearity nl(M);
    CHECK(eval_f(nl, 0.0) == 0.0);
    CHECK(eval_f(nl, 0.5) == 0.0);
    CHECK(eval_f(nl, 1.0) == 0.0);
  }
  CHECK(eval_f(CubicNonlinearity(1.0), 2.0) == -6.0);
}

TEST_CASE("primitive values", "[nonlinearity]") {
  const CubicNonlinearity nl(3.7);
  CHECK(eval_F(nl, 0.0) == 0.0);
  CHECK(eval_F(nl, 1.0) == 0.0);
  CHECK(eval_F(CubicNonlinearity(1.0), 0.5) == -1.0 / 32.0);
}

TEST_CASE("amplitude must be positive", "[nonlinearity]") {
  CHECK_THROWS_AS(CubicNonlinearity(0.0), Error);
  CHECK_THROWS_AS(CubicNonlinearity(-1.0), Error);
  CHECK_THROWS_AS(CubicNonlinearity(std::nan("")), Error);
}

TEST_CASE("F is nonpositive and differentiates to f", "[nonlinearity][property]") {
  // five-point stencil: exact for the quartic F up to rounding
  const double step = 1e-3;
  for (double M : {0.1, 1.0, 10.0}) {
    const CubicNonlinearity nl(M);
    for (int i = 0; i <= 5000; ++i) {
      const double s = -2.0 + 5.0 * i / 5000.0;
      REQUIRE(eval_F(nl, s) <= 0.0);
      const double dF = (eval_F(nl, s - 2 * step) - 8.0 * eval_F(nl, s - step) + 8.0 * eval_F(nl, s + step) -
                         eval_F(nl, s + 2 * step)) /
                        (12.0 * step);
      REQUIRE(std::abs(dF - eval_f(nl, s)) <= 1e-8);
    }
  }
}

TEST_CASE("f is odd about s = 1/2", "[nonlinearity][property]") {
  for (double M : {0.1, 1.0, 10.0}) {
    const CubicNonlinearity nl(M);
    for (int i = 0; i <= 1000; ++i) {
      const double s = -2.0 + 5.0 * i / 1000.0;
      const double lhs = eval_f(nl, s);
      const double rhs = -eval_f(nl, 1.0 - s);
      REQUIRE(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("energy examples", "[nonlinearity]") {
  const CubicNonlinearity any(4.2);
  CHECK(energy(any, 1.0, 0.0, 1.0) == 0.5);
  for (double lambda : {0.1, 0.5, 2.0}) CHECK(energy(any, lambda, 1.0, 0.0) == Approx(lambda / 2));

  // slope from the first-integral formula at u = 1/2
  const double M = 2.0, lambda = 0.5, u = 0.5;
  const double p = std::sqrt(M * u * u * (1 - u) * (1 - u) + lambda * (1 - u * u));
  CHECK(energy(CubicNonlinearity(M), lambda, u, p) == Approx(0.25).epsilon(1e-15));
}

TEST_CASE("linear family", "[nonlinearity]") {
  const LinearNonlinearity nl{-0.75};
  CHECK(nl.f(2.0) == -1.5);
  CHECK(nl.F(2.0) == -1.5);
  CHECK(energy(nl, 1.0, 0.0, 1.0) == 0.5);
}
