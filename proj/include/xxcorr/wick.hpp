#pragma once

// Two-site X-state entries from the free-fermion correlators f_m.
//
// The diagonal entries follow from <n_i n_{i+m}> = f_0^2 - f_m^2. The central
// coherence Z = <c_i^+ prod_{k=i}^{i+m-1} (1 - 2 n_k) c_{i+m}> is available
// both as explicit polynomials (m = 2, 3, 4) and by enumerating every Wick
// pairing of the expanded operator string.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "xxcorr/error.hpp"
#include "xxcorr/free_fermion.hpp"

namespace xxcorr {

struct TwoSiteElements {
  double x_plus = 0.0;
  double x_minus = 0.0;
  double y_plus = 0.0;
  double y_minus = 0.0;
  double z = 0.0;
  int separation = 0;

  double trace() const { return x_plus + y_plus + y_minus + x_minus; }
};

struct DiagonalElements {
  double x_plus;
  double x_minus;
  double y_plus;
  double y_minus;
};

namespace detail {

inline void require_index(const FermiCoefficients& f, int m) {
  if (m < 0 || static_cast<std::size_t>(m) > f.max_separation()) {
    throw InvalidArgument("Fermi coefficients do not reach separation " +
                          std::to_string(m));
  }
}

}  // namespace detail

inline DiagonalElements diagonal_elements(const FermiCoefficients& f, int m) {
  detail::require_index(f, m);
  const double f0 = f[0];
  const double fm = f[static_cast<std::size_t>(m)];
  const double pair = f0 * f0 - fm * fm;
  return {.x_plus = pair,
          .x_minus = 1.0 - 2.0 * f0 + pair,
          .y_plus = f0 - pair,
          .y_minus = f0 - pair};
}

/// Explicit polynomial for Z at m = 2, 3, 4.
inline double z_element(const FermiCoefficients& f, int m) {
  if (m < 2 || m > 4) {
    throw UnsupportedSeparation("explicit Z polynomial exists for m = 2, 3, 4; got " +
                                std::to_string(m));
  }
  detail::require_index(f, m);
  const double f0 = f[0];
  const double f1 = f[1];
  const double f2 = f[2];
  if (m == 2) return f2 - 2 * f0 * f2 + 2 * f1 * f1;

  const double f3 = f[3];
  if (m == 3) {
    return 4 * (f1 * f1 * f1 - 2 * f0 * f1 * f2 + f2 * f2 * f1 + f0 * f0 * f3 -
                f1 * f1 * f3 + f1 * f2 - f0 * f3) +
           f3;
  }

  const double f4 = f[4];
  const double quartic =
      f1 * f1 * f1 * f1 - 3 * f0 * f1 * f1 * f2 + 2 * f1 * f1 * f2 * f2 +
      2 * f0 * f0 * f1 * f3 + f0 * f0 * f2 * f2 - f2 * f2 * f2 * f2 -
      2 * f0 * f1 * f2 * f3 + 2 * f1 * f2 * f2 * f3 - 2 * f1 * f1 * f1 * f3 +
      f1 * f1 * f3 * f3 - f0 * f2 * f3 * f3 - f0 * f0 * f0 * f4 +
      2 * f0 * f1 * f1 * f4 - 2 * f1 * f1 * f2 * f4 + f0 * f2 * f2 * f4;
  const double cubic = 3 * f1 * f1 * f2 - 2 * f0 * f2 * f2 - 4 * f0 * f1 * f3 +
                       2 * f1 * f2 * f3 + 3 * f0 * f0 * f4 - 2 * f1 * f1 * f4 +
                       f2 * f3 * f3 - f2 * f2 * f4;
  const double quadratic = 2 * f1 * f3 - 3 * f0 * f4 + f2 * f2;
  return 8 * quartic + 4 * cubic + 2 * quadratic + f4;
}

namespace detail {

struct FermionOp {
  bool creation;
  int site;
};

class PairingExpander {
 public:
  explicit PairingExpander(const FermiCoefficients& f) : f_(f) {}

  /// <op_0 op_1 ... op_{n-1}> in a number-conserving Gaussian state.
  double expectation(std::vector<FermionOp> ops) const {
    if (ops.size() % 2 != 0) return 0.0;
    return pairings(ops);
  }

 private:
  double contraction(const FermionOp& a, const FermionOp& b) const {
    if (a.creation == b.creation) return 0.0;
    const double hop = f_[static_cast<std::size_t>(std::abs(a.site - b.site))];
    if (a.creation) return hop;  // <c_a^+ c_b>
    return (a.site == b.site ? 1.0 : 0.0) - hop;  // <c_a c_b^+>
  }

  // Pair the first operator with each later one; the sign counts the
  // operators it has to hop over.
  double pairings(std::vector<FermionOp>& ops) const {
    if (ops.empty()) return 1.0;
    const FermionOp first = ops.front();
    double total = 0.0;
    for (std::size_t j = 1; j < ops.size(); ++j) {
      const double c = contraction(first, ops[j]);
      if (c == 0.0) continue;
      std::vector<FermionOp> rest;
      rest.reserve(ops.size() - 2);
      for (std::size_t k = 1; k < ops.size(); ++k) {
        if (k != j) rest.push_back(ops[k]);
      }
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      total += sign * c * pairings(rest);
    }
    return total;
  }

  const FermiCoefficients& f_;
};

}  // namespace detail

inline constexpr int kMaxPairingSeparation = 8;

/// Z by expanding prod_{k=0}^{m-1} (1 - 2 c_k^+ c_k) into 2^m operator strings
/// and summing all Wick pairings of each.
inline double z_string_wick(const FermiCoefficients& f, int m) {
  if (m < 1) throw InvalidArgument("separation must be >= 1");
  if (m > kMaxPairingSeparation) {
    throw ComplexityCap("pairing enumeration is capped at m = " +
                        std::to_string(kMaxPairingSeparation));
  }
  detail::require_index(f, m);
  const detail::PairingExpander expander(f);
  double total = 0.0;
  for (std::uint32_t subset = 0; subset < (1u << m); ++subset) {
    std::vector<detail::FermionOp> ops{{true, 0}};
    int picked = 0;
    for (int k = 0; k < m; ++k) {
      if (subset & (1u << k)) {
        ops.push_back({true, k});
        ops.push_back({false, k});
        ++picked;
      }
    }
    ops.push_back({false, m});
    total += std::pow(-2.0, picked) * expander.expectation(std::move(ops));
  }
  return total;
}

/// All five entries; m = 1 (and m > 4) goes through the pairing expansion.
inline TwoSiteElements two_site_elements(const FermiCoefficients& f, int m) {
  const auto d = diagonal_elements(f, m);
  const double z = (m >= 2 && m <= 4) ? z_element(f, m) : z_string_wick(f, m);
  return {.x_plus = d.x_plus,
          .x_minus = d.x_minus,
          .y_plus = d.y_plus,
          .y_minus = d.y_minus,
          .z = z,
          .separation = m};
}

/// Largest |z_element - z_string_wick| over random coefficient vectors with
/// f_0 in [0, 1] and the rest in [-1/2, 1/2].
inline double wick_identity_check(int m, int samples, std::uint64_t seed) {
  if (m < 2 || m > 4) {
    throw UnsupportedSeparation("identity check covers m = 2, 3, 4");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> occupation(0.0, 1.0);
  std::uniform_real_distribution<double> hopping(-0.5, 0.5);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> values(5);
    values[0] = occupation(rng);
    for (std::size_t i = 1; i < values.size(); ++i) values[i] = hopping(rng);
    const FermiCoefficients f(std::move(values), ModelParams{});
    worst = std::max(worst, std::abs(z_element(f, m) - z_string_wick(f, m)));
  }
  return worst;
}

}  // namespace xxcorr
