#pragma once

// Two-site reduced density matrix in the basis (uu, ud, du, dd):
//
//   | X+  0   0   0  |
//   | 0   Y+  Z   0  |
//   | 0   Z   Y-  0  |
//   | 0   0   0   X- |

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <span>
#include <sstream>
#include <string>

#include "xxcorr/error.hpp"
#include "xxcorr/wick.hpp"

namespace xxcorr {

inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kNegativeEigenvalueTolerance = 1e-8;

namespace detail {

/// Spectrum of the X-state: the two outer diagonal entries and the two
/// eigenvalues of the central 2x2 block. Unsorted, unclamped.
inline std::array<double, 4> x_state_spectrum(const TwoSiteElements& e) {
  const double mean = 0.5 * (e.y_plus + e.y_minus);
  const double half_diff = 0.5 * (e.y_plus - e.y_minus);
  const double radius = std::hypot(half_diff, e.z);
  return {e.x_plus, e.x_minus, mean + radius, mean - radius};
}

}  // namespace detail

class TwoSiteRDM {
 public:
  const TwoSiteElements& elements() const { return elements_; }

  Eigen::Matrix4d matrix() const {
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    rho(0, 0) = elements_.x_plus;
    rho(1, 1) = elements_.y_plus;
    rho(2, 2) = elements_.y_minus;
    rho(3, 3) = elements_.x_minus;
    rho(1, 2) = elements_.z;
    rho(2, 1) = elements_.z;
    return rho;
  }

  Eigen::Matrix4d diagonal_part() const {
    Eigen::Matrix4d d = matrix();
    d(1, 2) = 0.0;
    d(2, 1) = 0.0;
    return d;
  }

  double trace() const { return elements_.trace(); }

  friend TwoSiteRDM assemble(const TwoSiteElements& e);

 private:
  explicit TwoSiteRDM(const TwoSiteElements& e) : elements_(e) {}
  TwoSiteElements elements_;
};

/// Validates trace and positivity and wraps the entries as a state.
inline TwoSiteRDM assemble(const TwoSiteElements& e) {
  const double values[] = {e.x_plus, e.x_minus, e.y_plus, e.y_minus, e.z};
  for (double v : values) {
    if (!std::isfinite(v)) throw NotAState("non-finite density matrix entry");
  }
  if (std::abs(e.trace() - 1.0) > kTraceTolerance) {
    throw NotAState("trace deviates from 1 by " +
                    std::to_string(e.trace() - 1.0));
  }
  for (double lambda : detail::x_state_spectrum(e)) {
    if (lambda < -kNegativeEigenvalueTolerance) {
      throw NotAState("negative eigenvalue " + std::to_string(lambda));
    }
  }
  return TwoSiteRDM(e);
}

/// Clamps noise-level negatives to zero and renormalizes.
template <std::size_t N>
std::array<double, N> clamp_spectrum(std::array<double, N> values) {
  double total = 0.0;
  for (double& v : values) {
    if (v < 0.0) {
      if (v < -kNegativeEigenvalueTolerance) {
        throw NotAState("negative eigenvalue " + std::to_string(v));
      }
      v = 0.0;
    }
    total += v;
  }
  if (total > 0.0) {
    for (double& v : values) v /= total;
  }
  return values;
}

/// Closed-form spectrum, clamped and sorted descending.
inline std::array<double, 4> eigenvalues(const TwoSiteRDM& rdm) {
  auto spectrum = clamp_spectrum(detail::x_state_spectrum(rdm.elements()));
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  return spectrum;
}

/// -x log2 x with 0 log 0 = 0.
inline double entropy_term(double x) {
  return x > 0.0 ? -x * std::log2(x) : 0.0;
}

/// Shannon/von Neumann entropy of a probability vector, in bits.
inline double von_neumann_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) s += entropy_term(p);
  return s;
}

inline double von_neumann_entropy(const TwoSiteRDM& rdm) {
  const auto spectrum = eigenvalues(rdm);
  return von_neumann_entropy(std::span<const double>(spectrum));
}

enum class Site { first, second };

/// Diagonal of the single-site marginal as (p_up, p_down). Off-diagonals
/// vanish identically for this block structure.
inline std::array<double, 2> reduced_single_site(const TwoSiteRDM& rdm,
                                                 Site site) {
  const auto& e = rdm.elements();
  if (site == Site::first) return {e.x_plus + e.y_plus, e.y_minus + e.x_minus};
  return {e.x_plus + e.y_minus, e.y_plus + e.x_minus};
}

/// Row-major 4x4 print with 6 significant digits.
inline std::string format_matrix(const TwoSiteRDM& rdm) {
  const Eigen::Matrix4d rho = rdm.matrix();
  std::ostringstream out;
  char buf[32];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      std::snprintf(buf, sizeof buf, "%14.6g", rho(r, c));
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace xxcorr
