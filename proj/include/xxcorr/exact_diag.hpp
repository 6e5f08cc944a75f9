#pragma once

// Exact diagonalization of the periodic XX ring in the S^z basis, used as a
// ground-truth check on the free-fermion pipeline.
//
// H = J sum_{i=1}^{N} (S^x_i S^x_{i+1} + S^y_i S^y_{i+1}) - h sum_i S^z_i,
// site N+1 = site 1, S = sigma / 2. A set bit in a basis state is spin up.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>
#include <vector>

#include "xxcorr/error.hpp"
#include "xxcorr/free_fermion.hpp"
#include "xxcorr/rdm.hpp"

namespace xxcorr::ed {

inline constexpr int kMaxDenseSites = 14;

class FiniteChainSpec {
 public:
  FiniteChainSpec(int sites, ModelParams params) : sites_(sites), params_(params) {
    if (sites < 2) throw InvalidArgument("finite chain needs N >= 2");
    if (sites > kMaxDenseSites) {
      throw BudgetExceeded("dense diagonalization is limited to N <= " +
                           std::to_string(kMaxDenseSites) + ", got " +
                           std::to_string(sites));
    }
  }

  int sites() const { return sites_; }
  const ModelParams& params() const { return params_; }

 private:
  int sites_;
  ModelParams params_;
};

/// One fixed-magnetization block of the Hamiltonian.
struct SectorBlock {
  int up_count = 0;
  std::vector<std::uint32_t> states;
  Eigen::MatrixXd hamiltonian;
};

struct SpinHamiltonian {
  int sites = 0;
  std::vector<SectorBlock> sectors;  // indexed by number of up spins

  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& s : sectors) d += s.states.size();
    return d;
  }
};

inline SpinHamiltonian build_spin_hamiltonian(const FiniteChainSpec& spec) {
  const int n = spec.sites();
  const double J = spec.params().coupling();
  const double h = spec.params().field();
  const std::uint32_t full = 1u << n;

  SpinHamiltonian result{n, std::vector<SectorBlock>(n + 1)};
  for (int up = 0; up <= n; ++up) result.sectors[up].up_count = up;
  for (std::uint32_t s = 0; s < full; ++s) {
    result.sectors[std::popcount(s)].states.push_back(s);
  }

  for (auto& sector : result.sectors) {
    const auto dim = static_cast<Eigen::Index>(sector.states.size());
    std::unordered_map<std::uint32_t, Eigen::Index> index;
    index.reserve(sector.states.size());
    for (Eigen::Index i = 0; i < dim; ++i) index.emplace(sector.states[i], i);

    sector.hamiltonian = Eigen::MatrixXd::Zero(dim, dim);
    const double zeeman = -h * (sector.up_count - 0.5 * n);
    for (Eigen::Index col = 0; col < dim; ++col) {
      const std::uint32_t s = sector.states[col];
      sector.hamiltonian(col, col) += zeeman;
      for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        const bool up_i = (s >> i) & 1u;
        const bool up_j = (s >> j) & 1u;
        if (up_i == up_j) continue;
        // (J/2)(S+_i S-_j + S-_i S+_j) flips an antiparallel pair.
        const std::uint32_t flipped = s ^ (1u << i) ^ (1u << j);
        sector.hamiltonian(index.at(flipped), col) += 0.5 * J;
      }
    }
  }
  return result;
}

struct SectorEigensystem {
  int up_count = 0;
  std::vector<std::uint32_t> states;
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;  // columns are eigenvectors
};

inline std::vector<SectorEigensystem> diagonalize(const SpinHamiltonian& h) {
  std::vector<SectorEigensystem> out;
  out.reserve(h.sectors.size());
  for (const auto& sector : h.sectors) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sector.hamiltonian);
    if (solver.info() != Eigen::Success) {
      throw InternalConsistency("sector eigensolver failed");
    }
    out.push_back({sector.up_count, sector.states, solver.eigenvalues(),
                   solver.eigenvectors()});
  }
  return out;
}

inline std::vector<double> spin_spectrum(const FiniteChainSpec& spec) {
  const SpinHamiltonian h = build_spin_hamiltonian(spec);
  std::vector<double> energies;
  energies.reserve(h.dimension());
  for (const auto& sector : h.sectors) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        sector.hamiltonian, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      energies.push_back(solver.eigenvalues()(i));
    }
  }
  std::sort(energies.begin(), energies.end());
  return energies;
}

/// Many-body energies of the Jordan-Wigner fermions on the ring. Even fermion
/// number uses antiperiodic momenta 2 pi (n + 1/2) / N, odd fermion number
/// periodic momenta 2 pi n / N.
inline std::vector<double> fermion_spectrum(const FiniteChainSpec& spec) {
  using std::numbers::pi;
  const int n = spec.sites();
  const auto& p = spec.params();
  std::array<std::vector<double>, 2> levels;
  for (int q = 0; q < n; ++q) {
    levels[0].push_back(dispersion(2.0 * pi * (q + 0.5) / n, p));
    levels[1].push_back(dispersion(2.0 * pi * q / n, p));
  }
  const double offset = 0.5 * p.field() * n;

  std::vector<double> energies;
  energies.reserve(std::size_t{1} << n);
  for (std::uint32_t occ = 0; occ < (1u << n); ++occ) {
    const auto& eps = levels[std::popcount(occ) % 2];
    double e = offset;
    for (int q = 0; q < n; ++q) {
      if (occ & (1u << q)) e += eps[q];
    }
    energies.push_back(e);
  }
  std::sort(energies.begin(), energies.end());
  return energies;
}

struct SpectrumReport {
  std::vector<double> spin_energies;
  std::vector<double> fermion_energies;
  double max_abs_deviation = 0.0;
};

inline SpectrumReport spectrum_match(const FiniteChainSpec& spec) {
  SpectrumReport r{spin_spectrum(spec), fermion_spectrum(spec), 0.0};
  if (r.spin_energies.size() != r.fermion_energies.size()) {
    throw InternalConsistency("spin and fermion spectra differ in size");
  }
  for (std::size_t i = 0; i < r.spin_energies.size(); ++i) {
    r.max_abs_deviation = std::max(
        r.max_abs_deviation, std::abs(r.spin_energies[i] - r.fermion_energies[i]));
  }
  return r;
}

namespace detail {

/// Basis states of one sector grouped by the configuration of the spins
/// outside the pair (site_a, site_b); each group lists the sector index of
/// the four pair configurations uu, ud, du, dd (-1 when absent).
inline std::vector<std::array<Eigen::Index, 4>> pair_groups(
    const std::vector<std::uint32_t>& states, int site_a, int site_b) {
  const std::uint32_t pair_mask = (1u << site_a) | (1u << site_b);
  std::unordered_map<std::uint32_t, std::size_t> slot;
  std::vector<std::array<Eigen::Index, 4>> groups;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::uint32_t s = states[i];
    const auto [it, inserted] = slot.emplace(s & ~pair_mask, groups.size());
    if (inserted) groups.push_back({-1, -1, -1, -1});
    const int a = ((s >> site_a) & 1u) ? 0 : 1;
    const int b = ((s >> site_b) & 1u) ? 0 : 1;
    groups[it->second][2 * a + b] = static_cast<Eigen::Index>(i);
  }
  return groups;
}

inline void accumulate_pair_rdm(Eigen::Matrix4d& rho, double weight,
                                const Eigen::Ref<const Eigen::VectorXd>& v,
                                const std::vector<std::array<Eigen::Index, 4>>& groups) {
  for (const auto& g : groups) {
    for (int r = 0; r < 4; ++r) {
      if (g[r] < 0) continue;
      const double vr = weight * v(g[r]);
      for (int c = 0; c < 4; ++c) {
        if (g[c] >= 0) rho(r, c) += vr * v(g[c]);
      }
    }
  }
}

inline void check_separation(const FiniteChainSpec& spec, int m) {
  if (m < 1 || 2 * m >= spec.sites()) {
    throw InvalidArgument("separation must satisfy 1 <= m < N/2; got m = " +
                          std::to_string(m) + ", N = " +
                          std::to_string(spec.sites()));
  }
}

inline constexpr double kOffStructureTolerance = 1e-10;

/// Checks that rho has the X-shape with vanishing corners and returns its
/// entries.
inline TwoSiteRDM to_x_state(const Eigen::Matrix4d& rho, int m) {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const bool allowed = r == c || (r == 1 && c == 2) || (r == 2 && c == 1);
      if (!allowed && std::abs(rho(r, c)) > kOffStructureTolerance) {
        throw InternalConsistency("two-site matrix is not X-shaped at (" +
                                  std::to_string(r) + ", " + std::to_string(c) + ")");
      }
    }
  }
  return assemble({.x_plus = rho(0, 0),
                   .x_minus = rho(3, 3),
                   .y_plus = rho(1, 1),
                   .y_minus = rho(2, 2),
                   .z = 0.5 * (rho(1, 2) + rho(2, 1)),
                   .separation = m});
}

}  // namespace detail

/// Full 4x4 reduced matrix of sites (0, m) in the Gibbs state exp(-H/T)/Z.
inline Eigen::Matrix4d thermal_two_site_matrix(const FiniteChainSpec& spec, int m) {
  detail::check_separation(spec, m);
  if (spec.params().zero_temperature()) {
    throw InvalidArgument("thermal RDM needs T > 0; use ground_two_site_rdm");
  }
  const auto systems = diagonalize(build_spin_hamiltonian(spec));
  double e0 = std::numeric_limits<double>::infinity();
  for (const auto& s : systems) {
    if (s.energies.size() > 0) e0 = std::min(e0, s.energies.minCoeff());
  }
  const double beta = spec.params().beta();
  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  double partition = 0.0;
  for (const auto& s : systems) {
    const auto groups = detail::pair_groups(s.states, 0, m);
    for (Eigen::Index k = 0; k < s.energies.size(); ++k) {
      const double w = std::exp(-beta * (s.energies(k) - e0));
      partition += w;
      detail::accumulate_pair_rdm(rho, w, s.vectors.col(k), groups);
    }
  }
  return rho / partition;
}

inline TwoSiteRDM thermal_two_site_rdm(const FiniteChainSpec& spec, int m) {
  return detail::to_x_state(thermal_two_site_matrix(spec, m), m);
}

inline constexpr double kDegeneracyRelativeGap = 1e-10;

/// Ground-state reduced matrix; a degenerate ground space is mixed uniformly.
inline TwoSiteRDM ground_two_site_rdm(const FiniteChainSpec& spec, int m) {
  detail::check_separation(spec, m);
  const auto systems = diagonalize(build_spin_hamiltonian(spec));
  double e0 = std::numeric_limits<double>::infinity();
  for (const auto& s : systems) {
    if (s.energies.size() > 0) e0 = std::min(e0, s.energies.minCoeff());
  }
  const double window = kDegeneracyRelativeGap * std::max(1.0, std::abs(e0));
  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  int degeneracy = 0;
  for (const auto& s : systems) {
    const auto groups = detail::pair_groups(s.states, 0, m);
    for (Eigen::Index k = 0; k < s.energies.size(); ++k) {
      if (s.energies(k) - e0 > window) continue;
      ++degeneracy;
      detail::accumulate_pair_rdm(rho, 1.0, s.vectors.col(k), groups);
    }
  }
  return detail::to_x_state(rho / degeneracy, m);
}

}  // namespace xxcorr::ed
