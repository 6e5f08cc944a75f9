#pragma once

// Oracle comparison suites: each pits a closed form against an independent
// evaluation route and reports the largest deviation seen.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "xxcorr/exact_diag.hpp"
#include "xxcorr/measures.hpp"
#include "xxcorr/parallel.hpp"
#include "xxcorr/scan.hpp"
#include "xxcorr/wick.hpp"

namespace xxcorr {

struct ValidationReport {
  std::string suite;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::vector<std::string> details;
};

inline constexpr std::string_view kValidationSuites[] = {
    "wick", "discord", "coherence", "spectrum", "finite_size"};

/// The (T, h) grid shared by the discord and coherence suites:
/// 20 x 20 points over T in [0.05, 2], h in [0, 1.5].
struct OracleGrid {
  Range temperature{0.05, 2.0, 20};
  Range field{0.0, 1.5, 20};
  std::vector<int> separations{2, 3, 4};
};

namespace detail {

inline std::string describe(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

template <class Deviation>
ValidationReport grid_suite(std::string name, double tolerance,
                            const OracleGrid& grid, int threads,
                            const Deviation& deviation) {
  const auto ts = grid.temperature.values();
  const auto hs = grid.field.values();
  const auto& ms = grid.separations;
  std::vector<double> dev(ts.size() * hs.size() * ms.size());
  parallel_for(dev.size(), threads, [&](std::size_t idx) {
    const std::size_t it = idx / (hs.size() * ms.size());
    const std::size_t ih = (idx / ms.size()) % hs.size();
    const int m = ms[idx % ms.size()];
    dev[idx] = deviation(two_site_state(ModelParams::with_field(hs[ih], ts[it]), m));
  });

  ValidationReport r{std::move(name), true, 0.0, tolerance, {}};
  for (std::size_t idx = 0; idx < dev.size(); ++idx) {
    r.max_deviation = std::max(r.max_deviation, dev[idx]);
    if (!(dev[idx] < tolerance)) {
      r.passed = false;
      const std::size_t it = idx / (hs.size() * ms.size());
      const std::size_t ih = (idx / ms.size()) % hs.size();
      r.details.push_back("T=" + std::to_string(ts[it]) + " h=" +
                          std::to_string(hs[ih]) + " m=" +
                          std::to_string(ms[idx % ms.size()]) +
                          " deviation " + describe(dev[idx]));
    }
  }
  return r;
}

}  // namespace detail

inline ValidationReport validate_wick(std::uint64_t seed, int samples = 100) {
  ValidationReport r{"wick", true, 0.0, 1e-12, {}};
  for (int m = 2; m <= 4; ++m) {
    const double dev = wick_identity_check(m, samples, seed);
    r.max_deviation = std::max(r.max_deviation, dev);
    r.details.push_back("m=" + std::to_string(m) + " max deviation " +
                        detail::describe(dev));
    if (!(dev < r.tolerance)) r.passed = false;
  }
  return r;
}

inline ValidationReport validate_discord(const OracleGrid& grid = {},
                                         int threads = default_thread_count()) {
  return detail::grid_suite("discord", 1e-6, grid, threads, [](const TwoSiteRDM& rdm) {
    return std::abs(quantum_discord(rdm) - discord_bruteforce(rdm));
  });
}

inline ValidationReport validate_coherence(const OracleGrid& grid = {},
                                           int threads = default_thread_count()) {
  return detail::grid_suite("coherence", 1e-10, grid, threads,
                            [](const TwoSiteRDM& rdm) {
                              return std::abs(quantum_coherence(rdm) -
                                              coherence_bruteforce(rdm));
                            });
}

inline ValidationReport validate_spectrum(int max_sites = 12,
                                          int threads = default_thread_count()) {
  const std::vector<double> fields{0.0, 0.5, 1.0, 1.5};
  std::vector<std::pair<int, double>> cases;
  for (int n = 2; n <= max_sites; ++n) {
    for (double h : fields) cases.emplace_back(n, h);
  }
  std::vector<double> dev(cases.size());
  parallel_for(cases.size(), threads, [&](std::size_t i) {
    const ed::FiniteChainSpec spec(cases[i].first,
                                   ModelParams::with_field(cases[i].second, 0.0));
    dev[i] = ed::spectrum_match(spec).max_abs_deviation;
  });
  ValidationReport r{"spectrum", true, 0.0, 1e-9, {}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    r.max_deviation = std::max(r.max_deviation, dev[i]);
    if (!(dev[i] < r.tolerance)) {
      r.passed = false;
      r.details.push_back("N=" + std::to_string(cases[i].first) + " h=" +
                          std::to_string(cases[i].second) + " deviation " +
                          detail::describe(dev[i]));
    }
  }
  return r;
}

/// Largest element-wise gap between the finite-ring thermal state and the
/// thermodynamic-limit state.
inline double finite_size_deviation(int sites, const ModelParams& params, int m) {
  const auto finite =
      ed::thermal_two_site_rdm(ed::FiniteChainSpec(sites, params), m).elements();
  const auto bulk = two_site_state(params, m).elements();
  return std::max({std::abs(finite.x_plus - bulk.x_plus),
                   std::abs(finite.x_minus - bulk.x_minus),
                   std::abs(finite.y_plus - bulk.y_plus),
                   std::abs(finite.y_minus - bulk.y_minus),
                   std::abs(finite.z - bulk.z)});
}

inline ValidationReport validate_finite_size() {
  const auto params = ModelParams::with_field(0.5, 1.0);
  const double small = finite_size_deviation(8, params, 2);
  const double large = finite_size_deviation(12, params, 2);
  ValidationReport r{"finite_size", true, large, 0.05, {}};
  r.details.push_back("N=8 deviation " + detail::describe(small));
  r.details.push_back("N=12 deviation " + detail::describe(large));
  if (!(large < r.tolerance)) r.passed = false;
  if (!(large < small)) {
    r.passed = false;
    r.details.push_back("N=12 deviation is not smaller than N=8");
  }
  return r;
}

inline ValidationReport validate(std::string_view suite, std::uint64_t seed,
                                 int threads = default_thread_count()) {
  if (suite == "wick") return validate_wick(seed);
  if (suite == "discord") return validate_discord({}, threads);
  if (suite == "coherence") return validate_coherence({}, threads);
  if (suite == "spectrum") return validate_spectrum(12, threads);
  if (suite == "finite_size") return validate_finite_size();
  throw InvalidArgument("unknown validation suite '" + std::string(suite) + "'");
}

}  // namespace xxcorr
