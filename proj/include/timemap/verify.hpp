#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <vector>

#include "timemap/error.hpp"
#include "timemap/nonlinearity.hpp"
#include "timemap/numerics.hpp"
#include "timemap/timemap.hpp"

namespace timemap {

/// Something that claims to solve -u'' = lambda u + f(u) on spec().
template <class P>
concept Profile = requires(const P& p, double x) {
  { p.spec() } -> std::convertible_to<ProblemSpec>;
  { p.nonlinearity() } -> Nonlinearity;
  { p.u(x) } -> std::convertible_to<double>;
  { p.du(x) } -> std::convertible_to<double>;
};

// ---------------------------------------------------------------------------
// Profiles used as negative controls and self-tests.

/// c * u(x); not a solution for c != 1 when f is nonlinear.
template <Profile P>
class ScaledProfile {
 public:
  ScaledProfile(P base, double factor) : base_(std::move(base)), factor_(factor) {}
  ProblemSpec spec() const { return base_.spec(); }
  auto nonlinearity() const { return base_.nonlinearity(); }
  double u(double x) const { return factor_ * base_.u(x); }
  double du(double x) const { return factor_ * base_.du(x); }

 private:
  P base_;
  double factor_;
};

/// u(x) + delta at interior points, unchanged at the endpoints and in du.
template <Profile P>
class ShiftedProfile {
 public:
  ShiftedProfile(P base, double delta) : base_(std::move(base)), delta_(delta) {}
  ProblemSpec spec() const { return base_.spec(); }
  auto nonlinearity() const { return base_.nonlinearity(); }
  double u(double x) const {
    const ProblemSpec s = base_.spec();
    return (x > s.a && x < s.b) ? base_.u(x) + delta_ : base_.u(x);
  }
  double du(double x) const { return base_.du(x); }

 private:
  P base_;
  double delta_;
};

/// The same u paired with a different nonlinearity.
template <Profile P, Nonlinearity N>
class RelabeledProfile {
 public:
  RelabeledProfile(P base, N nl) : base_(std::move(base)), nl_(std::move(nl)) {}
  ProblemSpec spec() const { return base_.spec(); }
  N nonlinearity() const { return nl_; }
  double u(double x) const { return base_.u(x); }
  double du(double x) const { return base_.du(x); }

 private:
  P base_;
  N nl_;
};

template <Nonlinearity N>
struct ZeroProfile {
  ProblemSpec problem;
  N nl;
  ProblemSpec spec() const { return problem; }
  N nonlinearity() const { return nl; }
  double u(double) const { return 0.0; }
  double du(double) const { return 0.0; }
};

// ---------------------------------------------------------------------------
// Finite differences.

struct FdResidual {
  double sup_norm = 0.0;
  double grid_h = 0.0;
};

/// sup over interior nodes of |D2 u + lambda u + f(u)| on n uniform cells.
template <Profile P>
FdResidual fd_residual(const P& p, int n) {
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "fd_residual needs n >= 8");
  const ProblemSpec s = p.spec();
  const auto nl = p.nonlinearity();
  const double h = s.length() / n;

  std::vector<double> u(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const double x = (j == n) ? s.b : s.a + j * h;
    u[static_cast<std::size_t>(j)] = p.u(x);
  }
  double sup = 0.0;
  for (std::size_t j = 1; j < u.size() - 1; ++j) {
    const double d2 = (u[j - 1] - 2.0 * u[j] + u[j + 1]) / (h * h);
    const double r = std::abs(d2 + s.lambda * u[j] + nl.f(u[j]));
    if (!(r <= sup)) sup = r;  // propagates NaN
  }
  return {sup, h};
}

struct FdConvergence {
  std::vector<double> residuals;  // coarse to fine, grids n0, 2 n0, 4 n0
  std::vector<double> orders;     // log2 of successive residual ratios
};

template <Profile P>
FdConvergence fd_convergence(const P& p, int n0, int levels = 3) {
  FdConvergence out;
  for (int k = 0; k < levels; ++k) out.residuals.push_back(fd_residual(p, n0 << k).sup_norm);
  for (std::size_t k = 1; k < out.residuals.size(); ++k)
    out.orders.push_back(std::log2(out.residuals[k - 1] / out.residuals[k]));
  return out;
}

// ---------------------------------------------------------------------------
// Shooting.

struct Trajectory {
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> p;
};

inline constexpr double kShootingBlowUp = 10.0;

/// Classical RK4 for u' = p, p' = -lambda u - f(u) from x = a with
/// u(a) = 0 and u'(a) = sqrt(lambda + 2 F(1)), the slope fixed by the energy
/// level of the turning point (u, u') = (1, 0). For the cubic family F(1) = 0
/// so the slope is sqrt(lambda). The step is shrunk so it divides b - a.
template <Nonlinearity N>
Trajectory shoot(const ProblemSpec& spec, const N& nl, double h) {
  require_interval(spec);
  const double len = spec.length();
  if (!(h > 0.0) || h > len / 100.0)
    throw Error(ErrorCode::StepTooLarge, "shooting step must satisfy 0 < h <= (b - a)/100");

  const auto steps = static_cast<std::size_t>(std::ceil(len / h - 1e-9));
  const double step = len / static_cast<double>(steps);
  const double lambda = spec.lambda;
  auto accel = [&](double u) { return -lambda * u - nl.f(u); };

  const double slope_sq = lambda + 2.0 * nl.F(1.0);
  if (!(slope_sq >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "turning-point energy gives a negative slope^2");

  Trajectory tr;
  tr.x.reserve(steps + 1);
  tr.u.reserve(steps + 1);
  tr.p.reserve(steps + 1);
  double u = 0.0, p = std::sqrt(slope_sq);
  tr.x.push_back(spec.a);
  tr.u.push_back(u);
  tr.p.push_back(p);
  for (std::size_t j = 1; j <= steps; ++j) {
    const double k1u = p, k1p = accel(u);
    const double k2u = p + 0.5 * step * k1p, k2p = accel(u + 0.5 * step * k1u);
    const double k3u = p + 0.5 * step * k2p, k3p = accel(u + 0.5 * step * k2u);
    const double k4u = p + step * k3p, k4p = accel(u + step * k3u);
    u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    p += step / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    if (!(std::abs(u) <= kShootingBlowUp))
      throw Error(ErrorCode::StepTooLarge, "shooting trajectory left |u| <= 10");
    tr.x.push_back(j == steps ? spec.b : spec.a + static_cast<double>(j) * step);
    tr.u.push_back(u);
    tr.p.push_back(p);
  }
  return tr;
}

inline Trajectory shoot(const ProblemSpec& spec, double M, double h) {
  return shoot(spec, CubicNonlinearity(M), h);
}

struct ShootingComparison {
  double max_deviation = 0.0;
  double endpoint_value = 0.0;
};

template <Profile P>
ShootingComparison compare_shooting(const P& p, double h) {
  const Trajectory tr = shoot(p.spec(), p.nonlinearity(), h);
  ShootingComparison out;
  for (std::size_t j = 0; j < tr.x.size(); ++j) {
    const double d = std::abs(tr.u[j] - p.u(tr.x[j]));
    if (!(d <= out.max_deviation)) out.max_deviation = d;
  }
  out.endpoint_value = std::abs(tr.u.back());
  return out;
}

// ---------------------------------------------------------------------------
// Energy and Pohozaev identities.

/// sup over n + 1 uniform samples of |E(u, u') - E(1, 0)|, where
/// E(1, 0) = lambda/2 + F(1) is the energy of the turning point.
template <Profile P>
double energy_drift(const P& p, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "energy_drift needs n >= 2");
  const ProblemSpec s = p.spec();
  const auto nl = p.nonlinearity();
  const double level = energy(nl, s.lambda, 1.0, 0.0);
  double sup = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double x = (j == n) ? s.b : (2 * j == n ? s.midpoint() : s.a + j * s.length() / n);
    const double d = std::abs(energy(nl, s.lambda, p.u(x), p.du(x)) - level);
    if (!(d <= sup)) sup = d;
  }
  return sup;
}

/// Boundary term of the one-dimensional Pohozaev identity with the origin at
/// the interval midpoint: x.nu = (b - a)/2 at both endpoints.
template <Profile P>
double pohozaev_boundary_term(const P& p) {
  const ProblemSpec s = p.spec();
  const double right = 0.5 * s.length();
  const double left = -right;
  const double du_a = p.du(s.a);
  const double du_b = p.du(s.b);
  return 0.5 * (right * du_b * du_b - left * du_a * du_a);
}

/// |boundary + (N-2)/2 int u'^2 - lambda N/2 int u^2 - N int F(u)| with N = 1.
template <Profile P>
double pohozaev_residual_1d(const P& p, const QuadratureConfig& cfg = {1e-11, 1e-11, 2000}) {
  constexpr double dim = 1.0;
  const ProblemSpec s = p.spec();
  const auto nl = p.nonlinearity();
  auto volume = [&](double x) {
    const double u = p.u(x);
    const double du = p.du(x);
    return 0.5 * (dim - 2.0) * du * du - 0.5 * s.lambda * dim * u * u - dim * nl.F(u);
  };
  const double mid = s.midpoint();
  const double interior = integrate(volume, s.a, mid, cfg).value + integrate(volume, mid, s.b, cfg).value;
  return std::abs(pohozaev_boundary_term(p) + interior);
}

// ---------------------------------------------------------------------------
// Aggregate report.

struct ReportThresholds {
  double fd_order_min = 1.7;
  double fd_order_max = 2.3;
  double shooting_deviation = 1e-5;
  double shooting_endpoint = 1e-5;
  double energy_drift = 1e-8;
  double pohozaev = 1e-6;
  double boundary = 1e-12;  // |u(a)|, |u(b)|
  double apex = 1e-12;      // |u(mid) - 1|
};

struct ReportOptions {
  int fd_base_n = 64;
  double shooting_h = 1e-4;
  int energy_n = 1024;
  QuadratureConfig pohozaev_quadrature{1e-11, 1e-11, 2000};
  ReportThresholds thresholds{};
};

struct VerificationReport {
  double fd_residual_sup = 0.0;
  double fd_order_estimate = 0.0;
  std::vector<double> fd_residuals;
  std::vector<double> fd_orders;
  double shooting_max_deviation = 0.0;
  double shooting_endpoint_value = 0.0;
  double energy_drift_sup = 0.0;
  double pohozaev_residual = 0.0;
  double boundary_residual = 0.0;
  double midpoint_value = 0.0;
  bool passed = false;
  ReportThresholds tolerances{};
  std::vector<std::string> failures;
};

namespace detail {

inline bool within(double value, double limit) { return value <= limit; }  // false for NaN

}  // namespace detail

/// Run every oracle; failures are recorded by name, never thrown.
template <Profile P>
VerificationReport full_report(const P& p, const ReportOptions& opt = {}) {
  const ReportThresholds& th = opt.thresholds;
  const ProblemSpec s = p.spec();
  constexpr double inf = std::numeric_limits<double>::infinity();

  VerificationReport r;
  r.tolerances = th;

  const FdConvergence fd = fd_convergence(p, opt.fd_base_n);
  r.fd_residuals = fd.residuals;
  r.fd_orders = fd.orders;
  r.fd_residual_sup = fd.residuals.back();
  r.fd_order_estimate = fd.orders.back();
  const bool fd_ok = std::all_of(fd.orders.begin(), fd.orders.end(), [&](double q) {
    return q >= th.fd_order_min && q <= th.fd_order_max;
  });
  if (!fd_ok) r.failures.emplace_back("fd_order");

  try {
    const ShootingComparison sc = compare_shooting(p, opt.shooting_h);
    r.shooting_max_deviation = sc.max_deviation;
    r.shooting_endpoint_value = sc.endpoint_value;
  } catch (const Error&) {
    r.shooting_max_deviation = inf;
    r.shooting_endpoint_value = inf;
  }
  if (!detail::within(r.shooting_max_deviation, th.shooting_deviation))
    r.failures.emplace_back("shooting_deviation");
  if (!detail::within(r.shooting_endpoint_value, th.shooting_endpoint))
    r.failures.emplace_back("shooting_endpoint");

  r.energy_drift_sup = energy_drift(p, opt.energy_n);
  if (!detail::within(r.energy_drift_sup, th.energy_drift)) r.failures.emplace_back("energy_drift");

  try {
    r.pohozaev_residual = pohozaev_residual_1d(p, opt.pohozaev_quadrature);
  } catch (const Error&) {
    r.pohozaev_residual = inf;
  }
  if (!detail::within(r.pohozaev_residual, th.pohozaev)) r.failures.emplace_back("pohozaev");

  r.boundary_residual = std::max(std::abs(p.u(s.a)), std::abs(p.u(s.b)));
  if (!detail::within(r.boundary_residual, th.boundary)) r.failures.emplace_back("boundary");

  r.midpoint_value = p.u(s.midpoint());
  if (!detail::within(std::abs(r.midpoint_value - 1.0), th.apex)) r.failures.emplace_back("nontrivial");

  r.passed = r.failures.empty();
  return r;
}

}  // namespace timemap
