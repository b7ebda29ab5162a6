#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "timemap/solution.hpp"
#include "timemap/verify.hpp"

using namespace timemap;

namespace {

constexpr double pi = std::numbers::pi;

const SolutionProfile& reference_profile() {
  static const SolutionProfile p = construct({0.0, pi, 0.5}, 256);
  return p;
}

// f == 2 turns u = x (1 - x), lambda = 0 into an exact solution.
struct ConstantSource {
  double f(double) const { return 2.0; }
  double F(double s) const { return 2.0 * s; }
};

struct QuadraticProfile {
  ProblemSpec spec() const { return {0.0, 1.0, 0.0}; }
  ConstantSource nonlinearity() const { return {}; }
  double u(double x) const { return x * (1.0 - x); }
  double du(double x) const { return 1.0 - 2.0 * x; }
};

bool has_failure(const VerificationReport& r, const std::string& name) {
  return std::find(r.failures.begin(), r.failures.end(), name) != r.failures.end();
}

}  // namespace

TEST_CASE("fd_residual self-tests", "[verify][fd]") {
  for (int n : {8, 64, 512}) CHECK(fd_residual(QuadraticProfile{}, n).sup_norm <= 1e-12);

  const ZeroProfile<CubicNonlinearity> zero{{0.0, pi, 0.5}, CubicNonlinearity(3.0)};
  CHECK(fd_residual(zero, 64).sup_norm == 0.0);
  CHECK(fd_residual(zero, 64).grid_h == pi / 64);
  CHECK_THROWS_AS(fd_residual(zero, 4), Error);
}

TEST_CASE("fd_residual converges at second order", "[verify][fd]") {
  const auto& p = reference_profile();
  const double r512 = fd_residual(p, 512).sup_norm;
  const double r1024 = fd_residual(p, 1024).sup_norm;
  const double order = std::log2(r512 / r1024);
  CHECK(order >= 1.7);
  CHECK(order <= 2.3);

  const auto conv = fd_convergence(p, 64);
  REQUIRE(conv.orders.size() == 2);
  for (double q : conv.orders) {
    CHECK(q >= 1.7);
    CHECK(q <= 2.3);
  }
}

TEST_CASE("shooting self-test on the linear eigenproblem", "[verify][shooting]") {
  const auto tr = shoot({0.0, pi, 1.0}, LinearNonlinearity{0.0}, 1e-4);
  CHECK(std::abs(tr.u.back()) <= 1e-8);
  double worst = 0.0;
  for (std::size_t j = 0; j < tr.x.size(); ++j) worst = std::max(worst, std::abs(tr.u[j] - std::sin(tr.x[j])));
  CHECK(worst <= 1e-10);
}

TEST_CASE("shooting reproduces the constructed profile", "[verify][shooting]") {
  const auto& p = reference_profile();
  const auto tr = shoot(p.spec(), p.amplitude(), 1e-4);
  CHECK(tr.x.back() == pi);
  CHECK(std::abs(tr.u.back()) <= 1e-6);

  double worst = 0.0;
  for (std::size_t j = 0; j < tr.x.size(); ++j) worst = std::max(worst, std::abs(tr.u[j] - eval_u(p, tr.x[j])));
  CHECK(worst <= 1e-6);

  const std::size_t mid = (tr.x.size() - 1) / 2;
  REQUIRE(std::abs(tr.x[mid] - pi / 2) <= 1e-12);
  CHECK(std::abs(tr.u[mid] - 1.0) <= 1e-6);
  CHECK(std::abs(tr.p[mid]) <= 1e-6);
}

TEST_CASE("shooting is fourth order", "[verify][shooting][property]") {
  const auto& p = reference_profile();
  double previous = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double h = pi / (100 << k);
    const double err = compare_shooting(p, h).max_deviation;
    if (k > 0) {
      const double ratio = previous / err;
      INFO("h " << h << " ratio " << ratio);
      CHECK(ratio >= 8.0);
      CHECK(ratio <= 32.0);
    }
    previous = err;
  }
}

TEST_CASE("shooting errors", "[verify][shooting]") {
  try {
    shoot({0.0, pi, 0.5}, 1.0, 0.1);
    FAIL("expected STEP_TOO_LARGE");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepTooLarge);
  }
  // RK4 is unstable for a very stiff cubic at this step size
  try {
    shoot({0.0, 1.0, 0.5}, 1e8, 1e-2);
    FAIL("expected STEP_TOO_LARGE");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepTooLarge);
  }
}

TEST_CASE("wrong amplitude misses the far boundary", "[verify][shooting][negative]") {
  const auto& p = reference_profile();
  const auto tr = shoot(p.spec(), 1.1 * p.amplitude(), 1e-4);
  CHECK(std::abs(tr.u.back()) > 1e-5);
}

TEST_CASE("shooting uses only M, lambda and f", "[verify][shooting]") {
  // Identical trajectories whether or not a profile was built for the problem.
  const auto& p = reference_profile();
  const auto a = shoot(p.spec(), p.amplitude(), 1e-3);
  const auto b = shoot(ProblemSpec{0.0, pi, 0.5}, CubicNonlinearity(p.amplitude()), 1e-3);
  CHECK(a.u == b.u);
}

TEST_CASE("energy drift", "[verify][energy]") {
  const auto& p = reference_profile();
  CHECK(energy_drift(p, 2) <= 1e-15);
  CHECK(energy_drift(p, 1024) <= 10 * p.tolerance_budget());
  CHECK(energy_drift(ShiftedProfile(p, 1e-3), 1024) >= 1e-4);
}

TEST_CASE("Pohozaev identity in one dimension", "[verify][pohozaev]") {
  const auto& p = reference_profile();
  CHECK(std::abs(pohozaev_boundary_term(p) - p.spec().lambda * pi / 2) <= 1e-12);
  CHECK(pohozaev_residual_1d(p) <= 1e-7);
  CHECK(pohozaev_residual_1d(ScaledProfile(p, 2.0)) > 1e-2);
}

// With u' taken from the first integral, the one-dimensional identity is the
// integrated energy relation, so the residual sits at rounding level for every
// setting. The trend is checked as non-increasing above that floor.
TEST_CASE("Pohozaev residual does not grow with tighter settings", "[verify][pohozaev][property]") {
  const ProblemSpec spec{0.0, pi, 0.5};
  const double M = solve_M(spec).M;
  struct Setting {
    double tol;
    int n;
  };
  double previous = INFINITY;
  for (const Setting s : {Setting{1e-3, 16}, Setting{1e-5, 64}, Setting{1e-7, 256}}) {
    const QuadratureConfig cfg{s.tol, s.tol, 2000};
    const SolutionProfile p(spec, M, s.n, cfg);
    const double r = pohozaev_residual_1d(p, cfg);
    INFO("tol " << s.tol << " residual " << r);
    CHECK(r <= std::max(previous, 1e-15));
    CHECK(r <= 1e-13);
    previous = r;
  }
}

TEST_CASE("full_report accepts the constructed profile", "[verify][report]") {
  const auto r = full_report(reference_profile());
  INFO("failures: " << r.failures.size());
  CHECK(r.passed);
  CHECK(r.failures.empty());
  CHECK(r.fd_order_estimate >= 1.7);
  CHECK(r.fd_order_estimate <= 2.3);
  CHECK(r.shooting_max_deviation <= 1e-5);
  CHECK(r.shooting_endpoint_value <= 1e-5);
  CHECK(r.energy_drift_sup <= 1e-8);
  CHECK(r.pohozaev_residual <= 1e-6);
  CHECK(r.midpoint_value == 1.0);
}

TEST_CASE("full_report rejects non-solutions", "[verify][report][negative]") {
  const auto& p = reference_profile();

  const auto zero = full_report(ZeroProfile<CubicNonlinearity>{p.spec(), p.nonlinearity()});
  CHECK_FALSE(zero.passed);
  CHECK(has_failure(zero, "nontrivial"));

  const auto scaled = full_report(ScaledProfile(p, 2.0));
  CHECK_FALSE(scaled.passed);
  CHECK(has_failure(scaled, "pohozaev"));
  CHECK(has_failure(scaled, "shooting_deviation"));

  const auto shifted = full_report(ShiftedProfile(p, 1e-3));
  CHECK_FALSE(shifted.passed);
  CHECK(has_failure(shifted, "energy_drift"));

  const auto wrong_m = full_report(RelabeledProfile(p, CubicNonlinearity(1.1 * p.amplitude())));
  CHECK_FALSE(wrong_m.passed);
  CHECK(has_failure(wrong_m, "shooting_endpoint"));
}
