#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "xxcorr/measures.hpp"

namespace xxcorr {
namespace {

using std::numbers::pi;

TwoSiteRDM mixed() { return assemble({0.25, 0.25, 0.25, 0.25, 0.0, 2}); }
TwoSiteRDM up_up() { return assemble({1.0, 0.0, 0.0, 0.0, 0.0, 2}); }
TwoSiteRDM bell() { return assemble({0.0, 0.0, 0.5, 0.5, 0.5, 2}); }

double h2(double x) { return -x * std::log2(x) - (1 - x) * std::log2(1 - x); }

// Random X-state with Y+ = Y- and |Z| <= Y.
TwoSiteRDM random_symmetric_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double xp = u(rng), xm = u(rng), y = u(rng);
  const double total = xp + xm + 2 * y;
  xp /= total;
  xm /= total;
  y /= total;
  return assemble({xp, xm, y, y, (2 * u(rng) - 1) * y, 2});
}

TEST(BinaryEntropy, EdgesAndClamp) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  EXPECT_EQ(binary_entropy(1.0 + 1e-13), 0.0);
  EXPECT_THROW(binary_entropy(1.1), InternalConsistency);
}

TEST(Concurrence, Examples) {
  EXPECT_EQ(concurrence(two_site_state(ModelParams::with_field(0.0, 0.0), 2)), 0.0);
  EXPECT_EQ(concurrence(mixed()), 0.0);
  EXPECT_NEAR(concurrence(bell()), 1.0, 1e-15);
  EXPECT_GT(concurrence(two_site_state(ModelParams::with_field(0.95, 0.0), 2)), 0.0);
}

TEST(Concurrence, ClosedFormMatchesSpinFlipRoute) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto rdm = random_symmetric_state(rng);
    EXPECT_NEAR(concurrence(rdm), concurrence_spin_flip(rdm.matrix()), 1e-10);
  }
  for (double T : {0.0, 0.05, 0.3}) {
    for (int i = 0; i <= 24; ++i) {
      const double h = 0.05 * i;
      for (int m = 2; m <= 4; ++m) {
        const auto rdm = two_site_state(ModelParams::with_field(h, T), m);
        EXPECT_NEAR(concurrence(rdm), concurrence_spin_flip(rdm.matrix()), 1e-10);
      }
    }
  }
}

TEST(MutualInformation, Examples) {
  EXPECT_NEAR(mutual_information(mixed()), 0.0, 1e-15);
  EXPECT_NEAR(mutual_information(up_up()), 0.0, 1e-15);
  // classical mixture of ud and du: marginals 1 bit each, joint 1 bit
  EXPECT_NEAR(mutual_information(assemble({0, 0, 0.5, 0.5, 0.0, 2})), 1.0, 1e-15);
  // pure Bell state: joint entropy 0
  EXPECT_NEAR(mutual_information(bell()), 2.0, 1e-15);
}

TEST(ClassicalCorrelations, Examples) {
  EXPECT_NEAR(classical_correlations(mixed()), 0.0, 1e-15);
  EXPECT_NEAR(classical_correlations(up_up()), 0.0, 1e-15);
  const auto rdm = two_site_state(ModelParams::with_field(0.0, 0.0), 2);
  EXPECT_NEAR(classical_correlations(rdm), mutual_information(rdm) - quantum_discord(rdm), 1e-12);
  EXPECT_NEAR(classical_correlations(rdm),
              mutual_information(rdm) - discord_bruteforce(rdm), 1e-6);
  EXPECT_NEAR(classical_correlations(bell()), 1.0, 1e-12);
}

TEST(QuantumDiscord, Examples) {
  EXPECT_NEAR(quantum_discord(mixed()), 0.0, 1e-15);
  EXPECT_NEAR(quantum_discord(up_up()), 0.0, 1e-15);
  EXPECT_GT(quantum_discord(two_site_state(ModelParams::with_field(0.0, 0.0), 2)), 0.01);
  EXPECT_NEAR(quantum_discord(bell()), 1.0, 1e-12);
}

TEST(DiscordBruteforce, Examples) {
  EXPECT_NEAR(discord_bruteforce(mixed()), 0.0, 1e-12);
  EXPECT_NEAR(discord_bruteforce(up_up()), 0.0, 1e-12);
  const auto rdm = two_site_state(ModelParams::with_field(0.7, 0.2), 2);
  EXPECT_NEAR(discord_bruteforce(rdm), quantum_discord(rdm), 1e-6);
}

TEST(DiscordBruteforce, RandomSymmetricStates) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    const auto rdm = random_symmetric_state(rng);
    // the brute-force minimum can only be at or below either branch
    const auto b = discord_branches(rdm);
    EXPECT_LE(discord_bruteforce(rdm), std::min(b.qd1, b.qd2) + 1e-9);
  }
}

TEST(QuantumCoherence, Examples) {
  EXPECT_EQ(quantum_coherence(assemble({0.1, 0.2, 0.35, 0.35, 0.0, 2})), 0.0);
  EXPECT_EQ(quantum_coherence(mixed()), 0.0);
  const auto rdm = two_site_state(ModelParams::with_field(0.0, 0.0), 2);
  EXPECT_NEAR(quantum_coherence(rdm), coherence_bruteforce(rdm), 1e-10);
  EXPECT_THROW(quantum_coherence(assemble({0.3, 0.2, 0.3, 0.2, 0.1, 2})), AssumptionViolated);
}

TEST(CoherenceBruteforce, Examples) {
  EXPECT_NEAR(coherence_bruteforce(assemble({0.1, 0.2, 0.35, 0.35, 0.0, 2})), 0.0, 1e-15);
  // mixture eigenvalues {3/4, 1/4}, S(rho) = 0, S(rho_d) = 1
  const double expected = std::sqrt(h2(0.25) - 0.5);
  EXPECT_NEAR(expected, 0.557923, 1e-6);
  EXPECT_NEAR(coherence_bruteforce(bell()), expected, 1e-12);
  EXPECT_NEAR(quantum_coherence(bell()), expected, 1e-12);
  // no symmetry assumption on the brute-force route
  EXPECT_NO_THROW(coherence_bruteforce(assemble({0.3, 0.2, 0.3, 0.2, 0.1, 2})));
}

TEST(QuantumCoherence, MatchesBruteforceOnRandomStates) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    const auto rdm = random_symmetric_state(rng);
    const double qc = quantum_coherence(rdm);
    EXPECT_NEAR(qc, coherence_bruteforce(rdm), 1e-10);
    EXPECT_GE(qc, 0.0);
    EXPECT_LE(qc, 1.0);
  }
}

TEST(AllMeasures, Examples) {
  const auto hot = all_measures(ModelParams::with_field(0.0, 1e12), 2);
  EXPECT_NEAR(hot.concurrence, 0.0, 1e-9);
  EXPECT_NEAR(hot.mutual_information, 0.0, 1e-9);
  EXPECT_NEAR(hot.classical_correlations, 0.0, 1e-9);
  EXPECT_NEAR(hot.quantum_discord, 0.0, 1e-9);
  EXPECT_NEAR(hot.quantum_coherence, 0.0, 1e-9);

  const auto product = all_measures(ModelParams::with_field(2.0, 0.0), 3);
  EXPECT_EQ(product.concurrence, 0.0);
  EXPECT_EQ(product.mutual_information, 0.0);
  EXPECT_EQ(product.classical_correlations, 0.0);
  EXPECT_EQ(product.quantum_discord, 0.0);
  EXPECT_EQ(product.quantum_coherence, 0.0);
  EXPECT_EQ(product.point.separation, 3);

  const auto ground = all_measures(ModelParams::with_field(0.0, 0.0), 2);
  EXPECT_EQ(ground.concurrence, 0.0);
  EXPECT_GT(ground.quantum_discord, 0.0);
  EXPECT_GT(ground.quantum_coherence, 0.0);

  EXPECT_NO_THROW(all_measures(ModelParams::with_field(0.3, 0.5), 1));
  EXPECT_THROW(all_measures(ModelParams::with_field(0.3, 0.5), 0), UnsupportedSeparation);
}

class MeasureGrid : public ::testing::TestWithParam<int> {};

TEST_P(MeasureGrid, BranchIdentityAndNonNegativity) {
  const int m = GetParam();
  for (double T : {0.0, 0.05, 0.4, 1.5}) {
    for (int i = 0; i <= 30; ++i) {
      const double h = -1.5 + 0.1 * i;
      const auto r = all_measures(ModelParams::with_field(h, T), m);
      EXPECT_NEAR(r.quantum_discord + r.classical_correlations, r.mutual_information, 1e-9);
      for (double v : {r.concurrence, r.mutual_information, r.classical_correlations,
                       r.quantum_discord, r.quantum_coherence}) {
        EXPECT_GE(v, -1e-9);
      }
      EXPECT_LE(r.quantum_coherence, 1.0);
      EXPECT_LE(r.concurrence, 1.0);
    }
  }
}

TEST_P(MeasureGrid, FieldReversalInvariance) {
  const int m = GetParam();
  for (double T : {0.0, 0.1, 1.0}) {
    for (double h : {0.1, 0.45, 0.8, 0.97, 1.3}) {
      const auto up = all_measures(ModelParams::with_field(h, T), m);
      const auto down = all_measures(ModelParams::with_field(-h, T), m);
      EXPECT_NEAR(up.concurrence, down.concurrence, 1e-9);
      EXPECT_NEAR(up.mutual_information, down.mutual_information, 1e-9);
      EXPECT_NEAR(up.classical_correlations, down.classical_correlations, 1e-9);
      EXPECT_NEAR(up.quantum_discord, down.quantum_discord, 1e-9);
      EXPECT_NEAR(up.quantum_coherence, down.quantum_coherence, 1e-9);
    }
  }
}

TEST_P(MeasureGrid, DiscordAndCoherenceDecreaseWithTemperature) {
  const int m = GetParam();
  double qd_prev = all_measures(ModelParams::with_field(0.0, 0.0), m).quantum_discord;
  double qc_prev = all_measures(ModelParams::with_field(0.0, 0.0), m).quantum_coherence;
  for (int i = 1; i <= 40; ++i) {
    const auto r = all_measures(ModelParams::with_field(0.0, 0.05 * i), m);
    EXPECT_LE(r.quantum_discord, qd_prev + 1e-9) << "T=" << 0.05 * i;
    EXPECT_LE(r.quantum_coherence, qc_prev + 1e-9) << "T=" << 0.05 * i;
    qd_prev = r.quantum_discord;
    qc_prev = r.quantum_coherence;
  }
}

TEST_P(MeasureGrid, ClosedFormDiscordMatchesBruteforce) {
  const int m = GetParam();
  for (double T : {0.05, 0.5, 2.0}) {
    for (double h : {0.0, 0.5, 0.95, 1.5}) {
      const auto rdm = two_site_state(ModelParams::with_field(h, T), m);
      EXPECT_NEAR(quantum_discord(rdm), discord_bruteforce(rdm), 1e-6);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Separations, MeasureGrid, ::testing::Values(1, 2, 3, 4));

}  // namespace
}  // namespace xxcorr
