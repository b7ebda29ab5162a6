#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "timemap/error.hpp"

namespace timemap {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw Error(ErrorCode::InvalidArgument, "quadrature tolerances must be positive");
    if (max_subdivisions < 1)
      throw Error(ErrorCode::InvalidArgument, "max_subdivisions must be >= 1");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

struct RootFindConfig {
  double x_tol = 1e-12;
  double f_tol = 1e-11;
  int max_iterations = 200;

  void validate() const {
    if (!(x_tol > 0.0) || !(f_tol > 0.0))
      throw Error(ErrorCode::InvalidArgument, "root-finding tolerances must be positive");
    if (max_iterations < 1)
      throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
  }
};

struct RootResult {
  double x = 0.0;
  double value = 0.0;  // h(x)
  int iterations = 0;  // evaluations of h beyond the two bracket endpoints
};

/// A sign-changing interval together with the function values at its ends.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule. Abscissae are the
// non-negative half, largest first; the centre node is last. Gauss nodes sit
// at the odd positions. K15 integrates polynomials of degree 22 exactly,
// G7 degree 13.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

template <class G>
Panel gauss_kronrod_15(G& g, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const double f_centre = g(centre);
  double kronrod = f_centre * kKronrodWeights[7];
  double gauss = f_centre * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = g(centre - dx) + g(centre + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) quadrature.
///
/// The panel with the largest |K15 - G7| is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|). Panels are kept in
/// a heap with a deterministic tie-break, so results are bit-reproducible.
/// The integrand must be smooth on [lo, hi]; endpoint singularities have to
/// be removed by a change of variables before calling this.
template <class G>
QuadratureResult integrate(G&& g, double lo, double hi, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw Error(ErrorCode::InvalidArgument, "integration limits must satisfy lo <= hi");
  if (lo == hi) return {};

  auto worse = [](const detail::Panel& x, const detail::Panel& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.lo > y.lo;
  };

  std::vector<detail::Panel> heap;
  heap.reserve(static_cast<std::size_t>(cfg.max_subdivisions));
  heap.push_back(detail::gauss_kronrod_15(g, lo, hi));
  double total = heap.front().value;
  double error = heap.front().error;
  if (!std::isfinite(total)) throw Error(ErrorCode::InvalidArgument, "integrand is not finite");

  while (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= cfg.max_subdivisions)
      throw Error(ErrorCode::SubdivisionExhausted, "tolerance not met within max_subdivisions");

    std::pop_heap(heap.begin(), heap.end(), worse);
    const detail::Panel worst = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi))
      throw Error(ErrorCode::SubdivisionExhausted, "panel width reached floating-point resolution");

    const detail::Panel left = detail::gauss_kronrod_15(g, worst.lo, mid);
    const detail::Panel right = detail::gauss_kronrod_15(g, mid, worst.hi);
    if (!std::isfinite(left.value) || !std::isfinite(right.value))
      throw Error(ErrorCode::InvalidArgument, "integrand is not finite");

    total += (left.value + right.value) - worst.value;
    error += (left.error + right.error) - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
  }

  // Re-sum in left-to-right order so the result does not depend on the
  // history of incremental updates.
  std::sort(heap.begin(), heap.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.lo < y.lo; });
  QuadratureResult result;
  for (const auto& panel : heap) {
    result.value += panel.value;
    result.error_estimate += panel.error;
  }
  result.subdivisions = static_cast<int>(heap.size());
  return result;
}

/// Brent's method (inverse quadratic / secant steps safeguarded by
/// bisection). Every iterate stays inside the current bracket.
template <class H>
RootResult find_root_monotone(H&& h, const Bracket& bracket, const RootFindConfig& cfg = {}) {
  cfg.validate();
  double a = bracket.lo, fa = bracket.f_lo;
  double b = bracket.hi, fb = bracket.f_hi;

  if (std::abs(fa) <= cfg.f_tol) return {a, fa, 0};
  if (std::abs(fb) <= cfg.f_tol) return {b, fb, 0};
  if (std::isnan(fa) || std::isnan(fb) || (fa > 0.0) == (fb > 0.0))
    throw Error(ErrorCode::NoSignChange, "bracket endpoints do not change sign");

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a, fc = fa;
  double d = b - a, e = d;
  int evaluations = 0;

  for (;;) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }

    const double tol = 2.0 * eps * std::abs(b) + 0.5 * cfg.x_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol || std::abs(fb) <= cfg.f_tol) return {b, fb, evaluations};
    if (evaluations >= cfg.max_iterations)
      throw Error(ErrorCode::MaxIterations, "root not converged within max_iterations");

    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0)
        q = -q;
      else
        p = -p;
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }

    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (xm > 0.0 ? tol : -tol);
    fb = h(b);
    ++evaluations;
  }
}

template <class H>
RootResult find_root_monotone(H&& h, double lo, double hi, const RootFindConfig& cfg = {}) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "bracket must satisfy lo < hi");
  const double f_lo = h(lo);
  const double f_hi = h(hi);
  return find_root_monotone(h, Bracket{lo, hi, f_lo, f_hi}, cfg);
}

inline constexpr int kMaxBracketSteps = 200;

/// Bracket the root of a decreasing h on (0, inf) by doubling or halving
/// from k0. Returns lo < hi with h(lo) > 0 > h(hi).
template <class H>
Bracket bracket_decreasing(H&& h, double k0) {
  if (!(k0 > 0.0) || !std::isfinite(k0))
    throw Error(ErrorCode::InvalidArgument, "bracket seed must be positive");

  const double f0 = h(k0);
  if (std::isnan(f0)) throw Error(ErrorCode::InvalidArgument, "h(k0) is NaN");

  Bracket br{k0, k0, f0, f0};
  if (!(f0 < 0.0)) {
    double x = k0;
    for (int step = 0;; ++step) {
      if (step == kMaxBracketSteps)
        throw Error(ErrorCode::BracketExhausted, "h stays non-negative while doubling");
      x *= 2.0;
      const double fx = h(x);
      if (fx < 0.0) {
        br.hi = x;
        br.f_hi = fx;
        break;
      }
      if (fx > 0.0) {
        br.lo = x;
        br.f_lo = fx;
      }
    }
  }
  if (!(br.f_lo > 0.0)) {
    double x = br.lo;
    for (int step = 0;; ++step) {
      if (step == kMaxBracketSteps)
        throw Error(ErrorCode::BracketExhausted, "h stays non-positive while halving");
      x *= 0.5;
      const double fx = h(x);
      if (fx > 0.0) {
        br.lo = x;
        br.f_lo = fx;
        break;
      }
      if (fx < 0.0) {
        br.hi = x;
        br.f_hi = fx;
      }
    }
  }
  return br;
}

}  // namespace timemap
