#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "xxcorr/error.hpp"

namespace xxcorr::quadrature {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on P_n.
template <int N>
struct GaussLegendre {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussLegendre() {
    for (int i = 0; i < (N + 1) / 2; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = 0.0;
        for (int j = 1; j <= N; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        dp = N * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      nodes[i] = -z;
      nodes[N - 1 - i] = z;
      weights[i] = weights[N - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }

  template <class F>
  double apply(const F& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < N; ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return sum * half;
  }
};

inline const GaussLegendre<16>& default_rule() {
  static const GaussLegendre<16> rule;
  return rule;
}

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  int max_depth = 30;
};

namespace detail {

template <class F>
double refine(const F& f, double a, double b, double whole, double tol,
              int depth, const AdaptiveOptions& opts) {
  const auto& rule = default_rule();
  const double mid = 0.5 * (a + b);
  const double left = rule.apply(f, a, mid);
  const double right = rule.apply(f, mid, b);
  const double halves = left + right;
  if (std::abs(halves - whole) < tol) return halves;
  if (depth >= opts.max_depth) {
    throw QuadratureNotConverged("adaptive Gauss-Legendre exceeded " +
                                 std::to_string(opts.max_depth) +
                                 " refinements on [" + std::to_string(a) +
                                 ", " + std::to_string(b) + "]");
  }
  return refine(f, a, mid, left, 0.5 * tol, depth + 1, opts) +
         refine(f, mid, b, right, 0.5 * tol, depth + 1, opts);
}

}  // namespace detail

/// Adaptive composite 16-point Gauss-Legendre integration of f over [a, b].
/// An interval is accepted once the whole-interval estimate and the sum over
/// its two halves differ by less than its share of `abs_tol`.
template <class F>
double integrate(const F& f, double a, double b,
                 const AdaptiveOptions& opts = {}) {
  if (a == b) return 0.0;
  const double whole = default_rule().apply(f, a, b);
  return detail::refine(f, a, b, whole, opts.abs_tol, 0, opts);
}

}  // namespace xxcorr::quadrature
