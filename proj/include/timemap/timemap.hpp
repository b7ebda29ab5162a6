#pragma once

#include <cmath>
#include <numbers>

#include "timemap/error.hpp"
#include "timemap/numerics.hpp"

namespace timemap {

/// Dirichlet problem -u'' = lambda u + f(u) on (a, b), u(a) = u(b) = 0.
struct ProblemSpec {
  double a = 0.0;
  double b = 1.0;
  double lambda = 0.0;

  double length() const noexcept { return b - a; }
  double midpoint() const noexcept { return 0.5 * (a + b); }
  /// First Dirichlet eigenvalue of -d^2/dx^2 on (a, b).
  double lambda1() const noexcept {
    const double len = length();
    return std::numbers::pi * std::numbers::pi / (len * len);
  }
};

/// Relative distance from 0 and lambda1 below which the time-map pipeline
/// refuses to run: M degenerates to +inf or 0 at the two ends.
inline constexpr double kAdmissibilityMargin = 1e-12;

inline void require_interval(const ProblemSpec& spec) {
  if (!std::isfinite(spec.a) || !std::isfinite(spec.b) || !(spec.a < spec.b))
    throw Error(ErrorCode::InvalidInterval, "interval endpoints must satisfy a < b");
}

inline bool admissible(const ProblemSpec& spec) noexcept {
  if (!std::isfinite(spec.a) || !std::isfinite(spec.b) || !(spec.a < spec.b)) return false;
  const double l1 = spec.lambda1();
  return spec.lambda > kAdmissibilityMargin * l1 && spec.lambda < l1 * (1.0 - kAdmissibilityMargin);
}

inline void require_admissible(const ProblemSpec& spec) {
  require_interval(spec);
  if (!admissible(spec))
    throw Error(ErrorCode::LambdaOutOfRange,
                "lambda must lie in (0, pi^2/(b-a)^2) = (0, " + std::to_string(spec.lambda1()) + ")");
}

namespace detail {

// Time-map integrand 1/sqrt(k s^2 (1-s)^2 + lambda (1 - s^2)). Singular like
// (1-s)^(-1/2) at s = 1.
inline double raw_integrand(double k, double lambda, double s) noexcept {
  const double w = s * (1.0 - s);
  return 1.0 / std::sqrt(k * w * w + lambda * (1.0 - s * s));
}

// Same integrand after s = 1 - tau^2. The denominator is bounded below by
// sqrt(lambda) on [0, 1], so the integrand is smooth there.
inline double desingularized_integrand(double k, double lambda, double tau) noexcept {
  const double w = tau * (1.0 - tau * tau);
  return 2.0 / std::sqrt(k * w * w + lambda * (2.0 - tau * tau));
}

inline void require_phi_args(double k, double lambda) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "k must be >= 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw Error(ErrorCode::InvalidArgument, "lambda must be > 0");
}

}  // namespace detail

/// Integral of the time-map integrand over the tau-range [tau_lo, tau_hi],
/// i.e. over s in [1 - tau_hi^2, 1 - tau_lo^2].
inline QuadratureResult time_map_segment(double k, double lambda, double tau_lo, double tau_hi,
                                         const QuadratureConfig& cfg = {}) {
  return integrate(
      [k, lambda](double tau) { return detail::desingularized_integrand(k, lambda, tau); }, tau_lo,
      tau_hi, cfg);
}

/// Phi(k): distance in x needed to travel from u = 0 to u = 1 along the
/// orbit of the cubic problem with amplitude k. Phi(0) = pi / (2 sqrt(lambda))
/// and Phi decreases strictly to 0 as k grows.
inline double phi(double k, double lambda, const QuadratureConfig& cfg = {}) {
  detail::require_phi_args(k, lambda);
  return time_map_segment(k, lambda, 0.0, 1.0, cfg).value;
}

struct TimeMapSolve {
  double M = 0.0;
  double phi_at_M = 0.0;
  double residual = 0.0;  // |Phi(M) - (b - a)/2|
  int iterations = 0;
};

/// The unique M > 0 with Phi(M) = (b - a)/2.
inline TimeMapSolve solve_M(const ProblemSpec& spec, const RootFindConfig& rcfg = {},
                            const QuadratureConfig& qcfg = {}, double k0 = 1.0) {
  require_admissible(spec);
  rcfg.validate();
  const double half = 0.5 * spec.length();
  auto h = [&](double k) { return phi(k, spec.lambda, qcfg) - half; };

  RootResult root{k0, h(k0), 0};
  if (!(std::abs(root.value) <= rcfg.f_tol)) root = find_root_monotone(h, bracket_decreasing(h, k0), rcfg);

  TimeMapSolve out;
  out.M = root.x;
  out.phi_at_M = root.value + half;
  out.residual = std::abs(root.value);
  out.iterations = root.iterations;
  return out;
}

/// Psi(t) = a + integral_0^t ds / sqrt(M s^2 (1-s)^2 + lambda (1 - s^2)).
///
/// Evaluated in the tau = sqrt(1 - s) variable for every t, so Psi(1) and
/// a + phi(M) go through the identical computation.
inline double psi(double t, double M, const ProblemSpec& spec, const QuadratureConfig& cfg = {}) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::TOutOfRange, "t must lie in [0, 1]");
  detail::require_phi_args(M, spec.lambda);
  if (t == 0.0) return spec.a;
  if (t == 1.0) return spec.a + phi(M, spec.lambda, cfg);
  return spec.a + time_map_segment(M, spec.lambda, std::sqrt(1.0 - t), 1.0, cfg).value;
}

/// Psi(t) by direct quadrature of the singular-at-1 integrand; only defined
/// for t < 1 and only useful as a cross-check of psi().
inline double psi_direct(double t, double M, const ProblemSpec& spec,
                         const QuadratureConfig& cfg = {}) {
  if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorCode::TOutOfRange, "t must lie in [0, 1)");
  detail::require_phi_args(M, spec.lambda);
  const double lambda = spec.lambda;
  return spec.a +
         integrate([M, lambda](double s) { return detail::raw_integrand(M, lambda, s); }, 0.0, t, cfg)
             .value;
}

}  // namespace timemap
