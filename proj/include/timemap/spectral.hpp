#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timemap/error.hpp"
#include "timemap/nonlinearity.hpp"
#include "timemap/timemap.hpp"

namespace timemap {

enum class SpectralMethod { ClosedFormInterval, RadialFd };

constexpr std::string_view to_string(SpectralMethod m) noexcept {
  return m == SpectralMethod::ClosedFormInterval ? "CLOSED_FORM_INTERVAL" : "RADIAL_FD";
}

struct SpectralResult {
  double lambda1 = 0.0;
  SpectralMethod method = SpectralMethod::ClosedFormInterval;
  std::optional<int> grid_n;
  double error_estimate = 0.0;
};

inline SpectralResult lambda1_interval(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw Error(ErrorCode::InvalidInterval, "interval endpoints must satisfy a < b");
  const double len = b - a;
  return {std::numbers::pi * std::numbers::pi / (len * len), SpectralMethod::ClosedFormInterval,
          std::nullopt, 0.0};
}

/// sin(pi (x - a)/(b - a)), the sup-normalised first Dirichlet eigenfunction.
inline double eigenfunction_interval(double a, double b, double x) {
  if (!(a < b)) throw Error(ErrorCode::InvalidInterval, "interval endpoints must satisfy a < b");
  if (!(x >= a && x <= b)) throw Error(ErrorCode::XOutOfRange, "x must lie in [a, b]");
  if (x == a || x == b) return 0.0;
  if (x == 0.5 * (a + b)) return 1.0;
  return std::sin(std::numbers::pi * (x - a) / (b - a));
}

/// The eigenfunction as a solution of -u'' = lambda u + (lambda1 - lambda) u.
class EigenfunctionProfile {
 public:
  explicit EigenfunctionProfile(const ProblemSpec& spec) : spec_(spec) { require_interval(spec); }

  ProblemSpec spec() const { return spec_; }
  LinearNonlinearity nonlinearity() const { return {spec_.lambda1() - spec_.lambda}; }
  double u(double x) const { return eigenfunction_interval(spec_.a, spec_.b, x); }
  double du(double x) const {
    if (!(x >= spec_.a && x <= spec_.b)) throw Error(ErrorCode::XOutOfRange, "x must lie in [a, b]");
    if (x == spec_.midpoint()) return 0.0;
    const double k = std::numbers::pi / spec_.length();
    return k * std::cos(k * (x - spec_.a));
  }

 private:
  ProblemSpec spec_;
};

namespace detail {

// Smallest eigenvalue of the radial operator -u'' - (N-1)/r u' on (0, R),
// u'(0) = 0, u(R) = 0, with n unknowns at r_j = j R/n (j = 0..n-1). Row 0
// uses the ghost value u_{-1} = u_1 together with (N-1) u'/r -> (N-1) u''
// at the origin. Inverse power iteration; each step is one Thomas solve.
inline double radial_eigenvalue(int dim, double radius, int n) {
  const double h = radius / n;
  const double inv_h2 = 1.0 / (h * h);
  const auto size = static_cast<std::size_t>(n);

  std::vector<double> lower(size, 0.0), diag(size), upper(size, 0.0);
  diag[0] = 2.0 * dim * inv_h2;
  upper[0] = -2.0 * dim * inv_h2;
  for (std::size_t j = 1; j < size; ++j) {
    const double c = (dim - 1) / (2.0 * static_cast<double>(j));
    lower[j] = -(1.0 - c) * inv_h2;
    diag[j] = 2.0 * inv_h2;
    upper[j] = (j + 1 < size) ? -(1.0 + c) * inv_h2 : 0.0;
  }

  // Forward elimination is independent of the right-hand side.
  std::vector<double> c_prime(size), denom(size);
  denom[0] = diag[0];
  c_prime[0] = upper[0] / denom[0];
  for (std::size_t j = 1; j < size; ++j) {
    denom[j] = diag[j] - lower[j] * c_prime[j - 1];
    c_prime[j] = upper[j] / denom[j];
  }
  auto solve = [&](const std::vector<double>& rhs, std::vector<double>& out) {
    out[0] = rhs[0] / denom[0];
    for (std::size_t j = 1; j < size; ++j) out[j] = (rhs[j] - lower[j] * out[j - 1]) / denom[j];
    for (std::size_t j = size - 1; j-- > 0;) out[j] -= c_prime[j] * out[j + 1];
  };

  std::vector<double> v(size, 1.0 / std::sqrt(static_cast<double>(size))), w(size);
  double estimate = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    solve(v, w);
    double vw = 0.0, ww = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
      vw += v[j] * w[j];
      ww += w[j] * w[j];
    }
    const double next = 1.0 / vw;
    const double norm = std::sqrt(ww);
    for (std::size_t j = 0; j < size; ++j) v[j] = w[j] / norm;
    if (iter > 0 && std::abs(next - estimate) <= 1e-14 * std::abs(next)) return next;
    estimate = next;
  }
  throw Error(ErrorCode::NoConvergence, "inverse iteration did not converge in 10^4 steps");
}

}  // namespace detail

/// First Dirichlet eigenvalue of the ball of radius R in R^N via the radial
/// operator. error_estimate is the Richardson estimate |l_n - l_{n/2}| / 3.
inline SpectralResult lambda1_ball(int dim, double radius, int n = 2048) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorCode::InvalidArgument, "radius must be > 0");
  if (n < 64) throw Error(ErrorCode::InvalidArgument, "radial grid needs n >= 64");

  const double fine = detail::radial_eigenvalue(dim, radius, n);
  const double coarse = detail::radial_eigenvalue(dim, radius, n / 2);
  return {fine, SpectralMethod::RadialFd, n, std::abs(fine - coarse) / 3.0};
}

/// Largest lambda for which the Pohozaev argument rules out nontrivial
/// solutions on a star-shaped domain: (N-2)/N * lambda1.
inline double pohozaev_threshold(int dim, double lambda1) {
  if (dim < 3) throw Error(ErrorCode::DimensionTooLow, "threshold requires N >= 3");
  if (!(lambda1 > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda1 must be > 0");
  return static_cast<double>(dim - 2) / dim * lambda1;
}

// ---------------------------------------------------------------------------
// Existence / uniqueness classification.

enum class Verdict { UniqueTrivial, NontrivialExistsForSomeF, Open };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::UniqueTrivial: return "UNIQUE_TRIVIAL";
    case Verdict::NontrivialExistsForSomeF: return "NONTRIVIAL_EXISTS_FOR_SOME_f";
    case Verdict::Open: return "OPEN";
  }
  return "OPEN";
}

/// Which rule of the classification table fired.
enum class Clause { NonpositiveLambda, PohozaevStarshaped, AboveLambda1, TimeMapOneDim, Open };

constexpr std::string_view clause_text(Clause c) noexcept {
  switch (c) {
    case Clause::NonpositiveLambda:
      return "lambda <= 0: lambda*u + f(u) has a nonpositive primitive, so u = 0 is the only "
             "solution (any N)";
    case Clause::PohozaevStarshaped:
      return "N >= 3, star-shaped domain, lambda <= (N-2)/N*lambda1: the Pohozaev identity "
             "excludes nontrivial solutions";
    case Clause::AboveLambda1:
      return "lambda >= lambda1: f(u) = (lambda1 - lambda)*u makes the first eigenfunction a "
             "nontrivial solution";
    case Clause::TimeMapOneDim:
      return "N = 1, 0 < lambda < lambda1: f(s) = -M*s*(s-1)*(2s-1) with M from the time map "
             "gives a nontrivial solution";
    case Clause::Open:
      return "open: existence for 0 < lambda < lambda1 (N = 2) or (N-2)/N*lambda1 < lambda < "
             "lambda1 (N >= 3) is not settled";
  }
  return "";
}

struct Certificate {
  int dimension = 1;
  double lambda = 0.0;
  double lambda1 = 0.0;
  Verdict verdict = Verdict::Open;
  Clause clause = Clause::Open;
  bool starshaped_assumed = false;
};

/// First matching row wins:
///   lambda <= 0                                  -> unique trivial
///   N >= 3, star-shaped, lambda <= (N-2)/N l1    -> unique trivial
///   lambda >= l1                                 -> nontrivial for some f
///   N == 1, 0 < lambda < l1                      -> nontrivial for some f
///   otherwise                                    -> open
inline Certificate classify(int dim, double lambda, double lambda1, bool starshaped) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1))
    throw Error(ErrorCode::InvalidArgument, "lambda1 must be > 0");
  if (std::isnan(lambda)) throw Error(ErrorCode::InvalidArgument, "lambda is NaN");

  Certificate c{dim, lambda, lambda1, Verdict::Open, Clause::Open, starshaped};
  if (lambda <= 0.0) {
    c.verdict = Verdict::UniqueTrivial;
    c.clause = Clause::NonpositiveLambda;
  } else if (dim >= 3 && starshaped && lambda <= pohozaev_threshold(dim, lambda1)) {
    c.verdict = Verdict::UniqueTrivial;
    c.clause = Clause::PohozaevStarshaped;
  } else if (lambda >= lambda1) {
    c.verdict = Verdict::NontrivialExistsForSomeF;
    c.clause = Clause::AboveLambda1;
  } else if (dim == 1) {
    c.verdict = Verdict::NontrivialExistsForSomeF;
    c.clause = Clause::TimeMapOneDim;
  }
  return c;
}

}  // namespace timemap
