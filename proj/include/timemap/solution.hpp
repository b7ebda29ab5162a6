#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "timemap/error.hpp"
#include "timemap/nonlinearity.hpp"
#include "timemap/numerics.hpp"
#include "timemap/timemap.hpp"

namespace timemap {

/// The single-bump solution u = Psi^{-1} on [a, (a+b)/2], extended to
/// [a, b] by u(x) = u(a + b - x).
///
/// The half-interval is tabulated at nodes uniform in the solution value,
/// t_i = i/n, x_i = Psi(t_i). Between nodes u is recovered by solving
/// Psi(t) = x with live quadrature, so evaluation accuracy does not depend
/// on n. Immutable after construction.
class SolutionProfile {
 public:
  static constexpr int kMinNodes = 16;

  /// Tabulate the profile for a given amplitude M. Half the profile's length
  /// is Phi(M), which matches (b - a)/2 only when M solves the time map.
  SolutionProfile(const ProblemSpec& spec, double M, int n, const QuadratureConfig& cfg = {})
      : spec_(spec), M_(M), cfg_(cfg) {
    require_interval(spec);
    if (!(spec.lambda > 0.0)) throw Error(ErrorCode::LambdaOutOfRange, "lambda must be > 0");
    if (!(M > 0.0) || !std::isfinite(M)) throw Error(ErrorCode::InvalidArgument, "M must be > 0");
    if (n < kMinNodes) throw Error(ErrorCode::InvalidArgument, "profile needs at least 16 nodes");
    cfg_.validate();

    const auto count = static_cast<std::size_t>(n) + 1;
    t_.resize(count);
    tau_.resize(count);
    x_.resize(count);
    double quadrature_error = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      t_[i] = static_cast<double>(i) / n;
      tau_[i] = std::sqrt(1.0 - t_[i]);
    }
    t_.back() = 1.0;
    tau_.back() = 0.0;
    x_[0] = spec.a;
    for (std::size_t i = 1; i < count; ++i) {
      const auto seg = time_map_segment(M_, spec_.lambda, tau_[i], tau_[i - 1], cfg_);
      x_[i] = x_[i - 1] + seg.value;
      quadrature_error += seg.error_estimate;
    }
    budget_ = quadrature_error + cfg_.abs_tol + std::abs(x_.back() - spec_.midpoint());
  }

  const ProblemSpec& spec() const noexcept { return spec_; }
  double amplitude() const noexcept { return M_; }
  CubicNonlinearity nonlinearity() const { return CubicNonlinearity(M_); }
  int size() const noexcept { return static_cast<int>(t_.size()) - 1; }
  const QuadratureConfig& quadrature() const noexcept { return cfg_; }

  /// Node values t_i (solution values) and x_i = Psi(t_i); x_n is the
  /// computed a + Phi(M).
  std::span<const double> node_values() const noexcept { return t_; }
  std::span<const double> node_positions() const noexcept { return x_; }

  /// Pointwise accuracy of x = Psi(u(x)): summed quadrature estimates of the
  /// table, the local solve tolerance and the mismatch between a + Phi(M)
  /// and the interval midpoint.
  double tolerance_budget() const noexcept { return budget_; }

  double u(double x) const {
    require_in_domain(x);
    const double mid = spec_.midpoint();
    if (x == mid) return 1.0;
    if (x > mid) return left_u(spec_.a + spec_.b - x);
    return left_u(x);
  }

  double du(double x) const {
    require_in_domain(x);
    const double mid = spec_.midpoint();
    if (x == mid) return 0.0;
    if (x > mid) return -left_du(spec_.a + spec_.b - x);
    return left_du(x);
  }

 private:
  void require_in_domain(double x) const {
    if (!(x >= spec_.a && x <= spec_.b))
      throw Error(ErrorCode::XOutOfRange, "x must lie in [a, b]");
  }

  double left_u(double x) const {
    if (x <= spec_.a) return 0.0;
    if (x >= x_.back()) return 1.0;

    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const auto i = static_cast<std::size_t>(std::distance(x_.begin(), it)) - 1;
    if (x == x_[i]) return t_[i];

    // x(tau) = x_i + integral over [tau, tau_i] decreases in tau; the node
    // values reproduce the table entries bit for bit.
    auto g = [&](double tau) {
      if (tau == tau_[i]) return x_[i] - x;
      if (tau == tau_[i + 1]) return x_[i + 1] - x;
      return x_[i] + time_map_segment(M_, spec_.lambda, tau, tau_[i], cfg_).value - x;
    };
    RootFindConfig rcfg;
    rcfg.x_tol = 4.0 * std::numeric_limits<double>::epsilon();
    rcfg.f_tol = std::numeric_limits<double>::min();
    rcfg.max_iterations = 200;
    const Bracket br{tau_[i + 1], tau_[i], x_[i + 1] - x, x_[i] - x};
    const double tau = find_root_monotone(g, br, rcfg).x;
    return std::clamp(1.0 - tau * tau, t_[i], t_[i + 1]);
  }

  double left_du(double x) const {
    const double u = left_u(x);
    const double w = u * (1.0 - u);
    return std::sqrt(std::max(0.0, M_ * w * w + spec_.lambda * (1.0 - u * u)));
  }

  ProblemSpec spec_;
  double M_;
  QuadratureConfig cfg_;
  std::vector<double> t_;
  std::vector<double> tau_;
  std::vector<double> x_;
  double budget_ = 0.0;
};

/// Solve the time map for M and tabulate the resulting profile.
inline SolutionProfile construct(const ProblemSpec& spec, int n = 256,
                                 const QuadratureConfig& cfg = {},
                                 const RootFindConfig& rcfg = {}) {
  require_admissible(spec);
  const TimeMapSolve solved = solve_M(spec, rcfg, cfg);
  return SolutionProfile(spec, solved.M, n, cfg);
}

inline double eval_u(const SolutionProfile& p, double x) { return p.u(x); }
inline double eval_du(const SolutionProfile& p, double x) { return p.du(x); }

}  // namespace timemap
