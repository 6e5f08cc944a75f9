#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "xxcorr/exact_diag.hpp"
#include "xxcorr/measures.hpp"
#include "xxcorr/validate.hpp"

namespace xxcorr::ed {
namespace {

using std::numbers::pi;

FiniteChainSpec ring(int n, double h, double T = 0.0, double J = 1.0) {
  return FiniteChainSpec(n, ModelParams(J, h, T));
}

// Dense 2^N Hamiltonian built from Kronecker products of Pauli matrices,
// without the magnetization-sector bookkeeping.
Eigen::MatrixXd kron_hamiltonian(int n, double J, double h) {
  const int dim = 1 << n;
  Eigen::Matrix2d sx, sz;
  sx << 0, 0.5, 0.5, 0;
  sz << 0.5, 0, 0, -0.5;
  Eigen::MatrixXcd sy_c(2, 2);
  const auto embed = [&](const Eigen::MatrixXcd& op, int site) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int s = 0; s < n; ++s) {
      const Eigen::MatrixXcd factor =
          (s == site) ? op : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(2, 2));
      Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
      for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * factor;
      out = next;
    }
    return out;
  };
  sy_c << 0, std::complex<double>(0, -0.5), std::complex<double>(0, 0.5), 0;
  const Eigen::MatrixXcd sxc = sx.cast<std::complex<double>>();
  const Eigen::MatrixXcd szc = sz.cast<std::complex<double>>();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    H += J * (embed(sxc, i) * embed(sxc, j) + embed(sy_c, i) * embed(sy_c, j));
    H += h * embed(szc, i);
  }
  EXPECT_LT(H.imag().cwiseAbs().maxCoeff(), 1e-15);
  return H.real();
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(s.eigenvalues().data(), s.eigenvalues().data() + m.rows());
  return v;
}

TEST(FiniteChainSpec, Bounds) {
  EXPECT_THROW(ring(1, 0.0), InvalidArgument);
  EXPECT_THROW(ring(15, 0.0), BudgetExceeded);
  EXPECT_NO_THROW(ring(14, 0.0));
}

TEST(SpinHamiltonian, SectorSizes) {
  const auto h = build_spin_hamiltonian(ring(3, 0.0));
  ASSERT_EQ(h.sectors.size(), 4u);
  EXPECT_EQ(h.sectors[0].states.size(), 1u);
  EXPECT_EQ(h.sectors[1].states.size(), 3u);
  EXPECT_EQ(h.sectors[2].states.size(), 3u);
  EXPECT_EQ(h.sectors[3].states.size(), 1u);
  EXPECT_EQ(h.dimension(), 8u);
}

TEST(SpinSpectrum, TwoSiteRingCountsBondTwice) {
  // the ring on two sites has bonds (1,2) and (2,1)
  const auto e = spin_spectrum(ring(2, 0.0));
  const std::vector<double> expected{-1.0, 0.0, 0.0, 1.0};
  ASSERT_EQ(e.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(e[i], expected[i], 1e-14);
}

TEST(SpinSpectrum, PureFieldIsZeeman) {
  const auto e = spin_spectrum(FiniteChainSpec(2, ModelParams(1e-300, 1.0, 0.0)));
  const std::vector<double> expected{-1.0, 0.0, 0.0, 1.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(e[i], expected[i], 1e-14);
}

TEST(SpinSpectrum, MatchesKroneckerConstruction) {
  for (int n : {2, 3, 5, 6}) {
    for (double h : {0.0, 0.7}) {
      const auto sector = spin_spectrum(ring(n, h, 0.0, 1.3));
      const auto dense = sorted_eigenvalues(kron_hamiltonian(n, 1.3, h));
      ASSERT_EQ(sector.size(), dense.size());
      for (std::size_t i = 0; i < dense.size(); ++i) EXPECT_NEAR(sector[i], dense[i], 1e-12);
    }
  }
}

TEST(SpectrumMatch, Examples) {
  EXPECT_LT(spectrum_match(ring(2, 0.0)).max_abs_deviation, 1e-12);
  EXPECT_LT(spectrum_match(ring(8, 0.5)).max_abs_deviation, 1e-9);
  const auto r = spectrum_match(ring(10, 1.0));
  EXPECT_EQ(r.spin_energies.size(), 1024u);
  EXPECT_LT(r.max_abs_deviation, 1e-9);
}

TEST(SpectrumMatch, AllSizesAndFields) {
  for (int n = 2; n <= 12; ++n) {
    for (double h : {0.0, 0.5, 1.0, 1.5}) {
      EXPECT_LT(spectrum_match(ring(n, h)).max_abs_deviation, 1e-9) << "N=" << n << " h=" << h;
    }
  }
}

TEST(ThermalRDM, InfiniteTemperature) {
  const auto rho = thermal_two_site_matrix(ring(8, 0.3, 1e6), 2);
  EXPECT_TRUE(rho.isApprox(Eigen::Matrix4d::Identity() / 4, 1e-5));
}

TEST(ThermalRDM, ZeroFieldSymmetry) {
  const auto e = thermal_two_site_rdm(ring(8, 0.0, 1.0), 2).elements();
  EXPECT_NEAR(e.y_plus, e.y_minus, 1e-12);
  EXPECT_NEAR(e.x_plus, e.x_minus, 1e-12);
}

TEST(ThermalRDM, ValidXStates) {
  for (int n : {6, 9}) {
    for (double T : {0.1, 1.0}) {
      for (double h : {-0.4, 0.6}) {
        for (int m = 1; 2 * m < n; ++m) {
          const auto rho = thermal_two_site_matrix(ring(n, h, T), m);
          EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
          const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> s(rho);
          EXPECT_GT(s.eigenvalues().minCoeff(), -1e-12);
          EXPECT_NO_THROW(thermal_two_site_rdm(ring(n, h, T), m));
        }
      }
    }
  }
}

TEST(ThermalRDM, FiniteSizeConvergence) {
  const auto params = ModelParams::with_field(0.5, 1.0);
  const double d8 = finite_size_deviation(8, params, 2);
  const double d12 = finite_size_deviation(12, params, 2);
  EXPECT_LT(d12, 0.05);
  EXPECT_LT(d12, d8);
  const double d14 = finite_size_deviation(14, ModelParams::with_field(0.2, 0.5), 2);
  EXPECT_LT(d14, finite_size_deviation(8, ModelParams::with_field(0.2, 0.5), 2));
}

TEST(ThermalRDM, Errors) {
  EXPECT_THROW(thermal_two_site_rdm(ring(8, 0.0, 0.0), 2), InvalidArgument);
  EXPECT_THROW(thermal_two_site_rdm(ring(8, 0.0, 1.0), 4), InvalidArgument);
  EXPECT_THROW(thermal_two_site_rdm(ring(8, 0.0, 1.0), 0), InvalidArgument);
}

TEST(GroundRDM, SaturatedField) {
  // large positive h favours spin down along sz; the state is a product
  const auto e = ground_two_site_rdm(ring(8, 2.0), 2).elements();
  EXPECT_NEAR(e.x_plus + e.x_minus, 1.0, 1e-12);
  EXPECT_NEAR(std::max(e.x_plus, e.x_minus), 1.0, 1e-12);
  EXPECT_NEAR(e.z, 0.0, 1e-12);
}

TEST(GroundRDM, HalfFillingCorrelator) {
  // thermodynamic value 2/pi^2 at h = 0
  const auto e = ground_two_site_rdm(ring(12, 0.0), 2).elements();
  EXPECT_NEAR(std::abs(e.z), 2 / (pi * pi), 0.05);
}

TEST(GroundRDM, ConcurrenceDropsAcrossSaturation) {
  const double below = concurrence(ground_two_site_rdm(ring(10, 0.99), 2));
  const double above = concurrence(ground_two_site_rdm(ring(10, 1.01), 2));
  EXPECT_GT(below, 0.0);
  EXPECT_LE(above, below);
}

}  // namespace
}  // namespace xxcorr::ed
