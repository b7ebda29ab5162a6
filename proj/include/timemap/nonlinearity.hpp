#pragma once

#include <cmath>
#include <concepts>

#include "timemap/error.hpp"

namespace timemap {

/// Anything exposing a source term f and its primitive F (F(0) = 0).
template <class N>
concept Nonlinearity = requires(const N& nl, double s) {
  { nl.f(s) } -> std::convertible_to<double>;
  { nl.F(s) } -> std::convertible_to<double>;
};

/// f(s) = -M s (s-1)(2s-1), F(s) = -M s^2 (1-s)^2 / 2.
///
/// F is a non-positive double well with zeros at 0 and 1, so the trivial
/// solution always exists and u = 1 is a turning point of the orbit with
/// energy lambda/2.
class CubicNonlinearity {
 public:
  explicit CubicNonlinearity(double amplitude) : M_(amplitude) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
      throw Error(ErrorCode::InvalidArgument, "cubic amplitude must be positive and finite");
  }

  double amplitude() const noexcept { return M_; }

  double f(double s) const noexcept { return -M_ * s * (s - 1.0) * (2.0 * s - 1.0); }

  double F(double s) const noexcept {
    const double w = s * (1.0 - s);
    return -0.5 * M_ * w * w;
  }

 private:
  double M_;
};

/// f(s) = slope * s. With slope = lambda1 - lambda this turns the first
/// Dirichlet eigenfunction into a solution for any lambda >= lambda1.
struct LinearNonlinearity {
  double slope = 0.0;

  double f(double s) const noexcept { return slope * s; }
  double F(double s) const noexcept { return 0.5 * slope * s * s; }
};

inline double eval_f(const CubicNonlinearity& nl, double s) noexcept { return nl.f(s); }
inline double eval_F(const CubicNonlinearity& nl, double s) noexcept { return nl.F(s); }

/// First integral of -u'' = lambda u + f(u): p^2/2 + lambda u^2/2 + F(u).
template <Nonlinearity N>
double energy(const N& nl, double lambda, double u, double p) noexcept {
  return 0.5 * p * p + 0.5 * lambda * u * u + nl.F(u);
}

}  // namespace timemap
