#pragma once

// Pairwise correlation measures of the two-site X-state: concurrence, quantum
// mutual information, classical correlations, quantum discord and the
// Jensen-Shannon quantum coherence. Each closed form has a brute-force
// counterpart used as an oracle.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "xxcorr/error.hpp"
#include "xxcorr/free_fermion.hpp"
#include "xxcorr/rdm.hpp"
#include "xxcorr/wick.hpp"

namespace xxcorr {

inline constexpr double kMeasureNegativeTolerance = 1e-9;

/// Binary Shannon entropy in bits.
inline double binary_entropy(double x) {
  constexpr double slack = 1e-12;
  if (x < -slack || x > 1.0 + slack) {
    throw InternalConsistency("binary entropy argument outside [0, 1]: " +
                              std::to_string(x));
  }
  x = std::clamp(x, 0.0, 1.0);
  return entropy_term(x) + entropy_term(1.0 - x);
}

namespace detail {

inline double clamp_measure(double value, const char* name) {
  if (value >= 0.0) return value;
  if (value >= -kMeasureNegativeTolerance) return 0.0;
  throw InternalConsistency(std::string(name) + " came out negative: " +
                            std::to_string(value));
}

template <int N>
double entropy_of_symmetric(const Eigen::Matrix<double, N, N>& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> solver(
      m, Eigen::EigenvaluesOnly);
  std::array<double, N> values{};
  for (int i = 0; i < N; ++i) values[i] = solver.eigenvalues()(i);
  const auto clamped = clamp_spectrum(values);
  return von_neumann_entropy(std::span<const double>(clamped));
}

}  // namespace detail

/// max{0, 2(|Z| - sqrt(X+ X-))}
inline double concurrence(const TwoSiteRDM& rdm) {
  const auto& e = rdm.elements();
  const double product = std::max(0.0, e.x_plus * e.x_minus);
  return std::max(0.0, 2.0 * (std::abs(e.z) - std::sqrt(product)));
}

/// Wootters concurrence from the spectrum of rho (sy x sy) rho* (sy x sy).
inline double concurrence_spin_flip(const Eigen::Matrix4d& rho) {
  Eigen::Matrix4d flip = Eigen::Matrix4d::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Eigen::Matrix4d tilde = flip * rho * flip;  // rho is real
  const Eigen::EigenSolver<Eigen::Matrix4d> solver(rho * tilde, false);
  std::array<double, 4> roots{};
  for (int i = 0; i < 4; ++i) {
    roots[i] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

inline double mutual_information(const TwoSiteRDM& rdm) {
  const auto a = reduced_single_site(rdm, Site::first);
  const auto b = reduced_single_site(rdm, Site::second);
  const double value = von_neumann_entropy(std::span<const double>(a)) +
                       von_neumann_entropy(std::span<const double>(b)) -
                       von_neumann_entropy(rdm);
  return detail::clamp_measure(value, "mutual information");
}

/// The two measurement branches of the X-state formula: branch 1 measures
/// site B along x, branch 2 along z.
struct DiscordBranches {
  double cc1;
  double cc2;
  double qd1;
  double qd2;
};

inline DiscordBranches discord_branches(const TwoSiteRDM& rdm) {
  const auto& e = rdm.elements();
  const double rho11 = e.x_plus;
  const double rho22 = e.y_plus;
  const double rho33 = e.y_minus;
  const double rho44 = e.x_minus;
  const double rho23 = std::abs(e.z);
  constexpr double rho14 = 0.0;

  const double bloch_z = 1.0 - 2.0 * (rho33 + rho44);
  const double w =
      0.5 * (1.0 + std::sqrt(bloch_z * bloch_z +
                             4.0 * (rho14 + rho23) * (rho14 + rho23)));
  const double d1 = binary_entropy(w);
  const double diagonal_entropy = entropy_term(rho11) + entropy_term(rho22) +
                                  entropy_term(rho33) + entropy_term(rho44);
  const double entropy_b = binary_entropy(rho11 + rho33);
  const double d2 = diagonal_entropy - entropy_b;

  const double entropy_a = binary_entropy(rho11 + rho22);
  const double joint = von_neumann_entropy(rdm);
  return {.cc1 = entropy_a - d1,
          .cc2 = entropy_a - d2,
          .qd1 = entropy_b - joint + d1,
          .qd2 = entropy_b - joint + d2};
}

inline double classical_correlations(const TwoSiteRDM& rdm) {
  const auto b = discord_branches(rdm);
  return detail::clamp_measure(std::max(b.cc1, b.cc2), "classical correlations");
}

inline double quantum_discord(const TwoSiteRDM& rdm) {
  const auto b = discord_branches(rdm);
  return detail::clamp_measure(std::min(b.qd1, b.qd2), "quantum discord");
}

namespace detail {

/// Sum_k p_k S(rho_A | k) for a projective measurement of site B along the
/// Bloch direction (theta, phi).
inline double measured_conditional_entropy(const Eigen::Matrix4d& rho,
                                           double theta, double phi) {
  using cplx = std::complex<double>;
  const cplx phase = std::polar(1.0, phi);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::array<std::array<cplx, 2>, 2> basis{{
      {cplx(c), phase * s},
      {cplx(-s), phase * c},
  }};
  double total = 0.0;
  for (const auto& v : basis) {
    cplx block[2][2] = {};
    for (int a = 0; a < 2; ++a) {
      for (int ap = 0; ap < 2; ++ap) {
        cplx sum = 0.0;
        for (int b = 0; b < 2; ++b) {
          for (int bp = 0; bp < 2; ++bp) {
            sum += std::conj(v[b]) * rho(2 * a + b, 2 * ap + bp) * v[bp];
          }
        }
        block[a][ap] = sum;
      }
    }
    const double p = block[0][0].real() + block[1][1].real();
    if (p <= 1e-15) continue;
    const double diff = block[0][0].real() - block[1][1].real();
    const double radius = std::sqrt(diff * diff + 4.0 * std::norm(block[0][1]));
    const double l1 = std::max(0.0, 0.5 * (p + radius)) / p;
    const double l2 = std::max(0.0, 0.5 * (p - radius)) / p;
    total += p * (entropy_term(l1) + entropy_term(l2));
  }
  return total;
}

template <class F>
std::pair<double, double> golden_section(const F& f, double lo, double hi,
                                         double tol = 1e-10) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace detail

struct DiscordGrid {
  int theta_steps = 181;
  int phi_steps = 90;
};

/// Discord by direct minimization of the measured conditional entropy over
/// projective measurements on site B: an angular grid, then one golden-section
/// pass in theta and in phi around the best grid point.
inline double discord_bruteforce(const TwoSiteRDM& rdm, DiscordGrid grid = {}) {
  using std::numbers::pi;
  if (grid.theta_steps < 2 || grid.phi_steps < 1) {
    throw InvalidArgument("discord grid needs >= 2 theta and >= 1 phi steps");
  }
  const Eigen::Matrix4d rho = rdm.matrix();

  Eigen::Matrix2d marginal_b = Eigen::Matrix2d::Zero();
  for (int a = 0; a < 2; ++a) {
    marginal_b += rho.block<2, 2>(2 * a, 2 * a);
  }
  const double entropy_b = detail::entropy_of_symmetric<2>(marginal_b);
  const double joint = detail::entropy_of_symmetric<4>(rho);

  const double dtheta = pi / (grid.theta_steps - 1);
  const double dphi = pi / grid.phi_steps;
  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  int best_j = 0;
  for (int i = 0; i < grid.theta_steps; ++i) {
    for (int j = 0; j < grid.phi_steps; ++j) {
      const double v = detail::measured_conditional_entropy(rho, i * dtheta, j * dphi);
      if (v < best) {
        best = v;
        best_i = i;
        best_j = j;
      }
    }
  }

  const double phi0 = best_j * dphi;
  const auto [theta_star, theta_val] = detail::golden_section(
      [&](double t) { return detail::measured_conditional_entropy(rho, t, phi0); },
      std::max(0.0, (best_i - 1) * dtheta), std::min(pi, (best_i + 1) * dtheta));
  const auto [phi_star, phi_val] = detail::golden_section(
      [&](double p) { return detail::measured_conditional_entropy(rho, theta_star, p); },
      phi0 - dphi, phi0 + dphi);
  best = std::min({best, theta_val, phi_val});

  return detail::clamp_measure(entropy_b - joint + best, "brute-force discord");
}

/// Explicit Jensen-Shannon coherence for the symmetric (Y+ = Y-) X-state.
inline double quantum_coherence(const TwoSiteRDM& rdm) {
  const auto& e = rdm.elements();
  if (std::abs(e.y_plus - e.y_minus) > 1e-9) {
    throw AssumptionViolated(
        "explicit coherence formula needs Y+ = Y-; use coherence_bruteforce");
  }
  const double z = std::abs(e.z);
  const double mixture =
      entropy_term(e.y_plus - 0.5 * z) + entropy_term(e.y_minus + 0.5 * z);
  const double state = entropy_term(e.y_plus - z) + entropy_term(e.y_minus + z);
  const double incoherent = entropy_term(e.y_plus) + entropy_term(e.y_minus);
  const double divergence = mixture - 0.5 * state - 0.5 * incoherent;
  return std::sqrt(detail::clamp_measure(divergence, "Jensen-Shannon divergence"));
}

/// sqrt(S((rho + rho_d)/2) - S(rho)/2 - S(rho_d)/2) by dense diagonalization.
inline double coherence_bruteforce(const Eigen::Matrix4d& rho) {
  const Eigen::Matrix4d diag = rho.diagonal().asDiagonal();
  const double divergence = detail::entropy_of_symmetric<4>(0.5 * (rho + diag)) -
                            0.5 * detail::entropy_of_symmetric<4>(rho) -
                            0.5 * detail::entropy_of_symmetric<4>(diag);
  return std::sqrt(detail::clamp_measure(divergence, "Jensen-Shannon divergence"));
}

inline double coherence_bruteforce(const TwoSiteRDM& rdm) {
  return coherence_bruteforce(rdm.matrix());
}

struct CorrelationPoint {
  double temperature;
  double field;
  int separation;
};

struct CorrelationReport {
  double concurrence = 0.0;
  double mutual_information = 0.0;
  double classical_correlations = 0.0;
  double quantum_discord = 0.0;
  double quantum_coherence = 0.0;
  CorrelationPoint point{};
};

inline CorrelationReport measure_state(const TwoSiteRDM& rdm,
                                       CorrelationPoint point) {
  const auto branches = discord_branches(rdm);
  const bool first = branches.qd1 <= branches.qd2;
  CorrelationReport r;
  r.concurrence = concurrence(rdm);
  r.mutual_information = mutual_information(rdm);
  // Pick CC and QD from the same branch so that QD + CC = I holds exactly.
  r.classical_correlations = detail::clamp_measure(
      first ? branches.cc1 : branches.cc2, "classical correlations");
  r.quantum_discord = detail::clamp_measure(first ? branches.qd1 : branches.qd2,
                                            "quantum discord");
  r.quantum_coherence = quantum_coherence(rdm);
  r.point = point;
  return r;
}

/// State for separation m at the given parameters (thermodynamic limit).
inline TwoSiteRDM two_site_state(const ModelParams& params, int m) {
  if (m < 1) throw UnsupportedSeparation("separation must be >= 1");
  const auto f = fermi_coefficients(std::max(4, m), params);
  return assemble(two_site_elements(f, m));
}

inline CorrelationReport all_measures(const ModelParams& params, int m) {
  return measure_state(two_site_state(params, m),
                       {params.temperature(), params.field(), m});
}

}  // namespace xxcorr
