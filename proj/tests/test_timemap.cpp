#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "golden.hpp"
#include "oracle/midpoint_oracle.hpp"
#include "timemap/timemap.hpp"

using namespace timemap;

namespace {

constexpr double pi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("phi at k = 0 is pi/(2 sqrt(lambda))", "[timemap][phi]") {
  CHECK(std::abs(phi(0.0, 1.0) - pi / 2) <= 1e-10);
  CHECK(std::abs(phi(0.0, 4.0) - pi / 4) <= 1e-10);
  for (double lambda : {0.25, 1.0, 4.0})
    CHECK(std::abs(phi(1e-10, lambda) - pi / (2 * std::sqrt(lambda))) <= 1e-5);
}

TEST_CASE("phi decays for large k", "[timemap][phi][oracle]") {
  const double big = phi(1e8, 1.0);
  CHECK(big < 1e-2);
  // 10^7-point midpoint rule resolves the boundary layers of width ~1e-4
  CHECK(std::abs(big - oracle::phi_midpoint(1e8, 1.0)) <= 1e-8);

  double previous = phi(1.0, 1.0);
  for (double k = 10.0; k <= 1e7; k *= 10.0) {
    const double current = phi(k, 1.0);
    CHECK(current < previous);
    previous = current;
  }
}

TEST_CASE("phi is strictly decreasing on a log grid", "[timemap][phi][property]") {
  for (double lambda : {0.25, 1.0, 4.0}) {
    double previous = phi(0.0, lambda);
    for (int i = 0; i <= 90; ++i) {
      const double k = std::pow(10.0, -3.0 + 9.0 * i / 90.0);
      const double current = phi(k, lambda);
      INFO("lambda " << lambda << " k " << k);
      REQUIRE(current < previous);
      previous = current;
    }
  }
}

TEST_CASE("phi argument checks", "[timemap][phi]") {
  CHECK(code_of([] { phi(-1.0, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { phi(1.0, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("desingularized and direct quadrature agree", "[timemap][psi][property]") {
  const ProblemSpec spec{0.0, pi, 0.5};
  for (double M : {0.5, 13.8, 200.0}) {
    for (double t : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0 - 1e-4}) {
      const double transformed = psi(t, M, spec);
      const double direct = psi_direct(t, M, spec);
      INFO("M " << M << " t " << t);
      CHECK(std::abs(transformed - direct) <= 1e-10);
    }
  }
}

TEST_CASE("solve_M matches the oracle at lambda = 0.5", "[timemap][solve]") {
  const ProblemSpec spec{0.0, pi, 0.5};
  const auto solved = solve_M(spec);
  CHECK(solved.M > 0.0);
  CHECK(solved.residual <= RootFindConfig{}.f_tol);
  CHECK(std::abs(phi(solved.M, spec.lambda) - pi / 2) <= 1e-10);
  const double expected = golden::oracle_M(0.5);
  CHECK(std::abs(solved.M - expected) <= 1e-6 * expected);
}

TEST_CASE("solve_M rejects inadmissible lambda", "[timemap][solve]") {
  CHECK(code_of([] { solve_M({0.0, pi, 1.0}); }) == ErrorCode::LambdaOutOfRange);
  CHECK(code_of([] { solve_M({0.0, pi, 2.0}); }) == ErrorCode::LambdaOutOfRange);
  CHECK(code_of([] { solve_M({0.0, pi, 0.0}); }) == ErrorCode::LambdaOutOfRange);
  CHECK(code_of([] { solve_M({0.0, pi, -0.3}); }) == ErrorCode::LambdaOutOfRange);
  CHECK(code_of([] { solve_M({0.0, pi, 1.0 - 1e-13}); }) == ErrorCode::LambdaOutOfRange);
  CHECK(code_of([] { solve_M({1.0, 0.0, 0.5}); }) == ErrorCode::InvalidInterval);
}

TEST_CASE("M decreases as lambda increases", "[timemap][solve][property]") {
  double previous = INFINITY;
  for (double fraction : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double M = solve_M({0.0, pi, fraction}).M;
    CHECK(M < previous);
    previous = M;
  }
}

TEST_CASE("re-solving from the returned M is immediate", "[timemap][solve][property]") {
  for (double lambda : {0.1, 0.5, 0.9}) {
    const ProblemSpec spec{0.0, pi, lambda};
    const auto first = solve_M(spec);
    const auto again = solve_M(spec, {}, {}, first.M);
    CHECK(again.iterations <= 3);
    CHECK(std::abs(again.M - first.M) <= 1e-9 * first.M);
  }
}

TEST_CASE("psi endpoints and consistency", "[timemap][psi]") {
  const ProblemSpec spec{0.0, pi, 0.5};
  CHECK(psi(0.0, 7.0, spec) == spec.a);
  CHECK(psi(1.0, 7.0, spec) == spec.a + phi(7.0, spec.lambda));

  const double M = solve_M(spec).M;
  CHECK(std::abs(psi(1.0, M, spec) - pi / 2) <= 1e-9);

  const ProblemSpec shifted{-2.0, 1.0, 0.3};
  CHECK(std::abs(psi(1.0, 3.0, shifted) - (shifted.a + phi(3.0, 0.3))) <= 1e-12);

  double previous = psi(0.0, M, spec);
  for (int i = 1; i <= 200; ++i) {
    const double current = psi(i / 200.0, M, spec);
    REQUIRE(current > previous);
    previous = current;
  }

  CHECK(code_of([&] { psi(-0.1, M, spec); }) == ErrorCode::TOutOfRange);
  CHECK(code_of([&] { psi(1.1, M, spec); }) == ErrorCode::TOutOfRange);
}
