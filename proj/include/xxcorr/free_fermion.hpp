#pragma once

// Free-fermion description of the XX chain in a transverse field:
// dispersion, Fermi-Dirac occupation and the two-point correlators
//   f_m = <c_i^+ c_{i+m}> = (1/pi) \int_0^pi cos(k m) g(k) dk.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "xxcorr/error.hpp"
#include "xxcorr/quadrature.hpp"

namespace xxcorr {

/// Coupling J, transverse field h and temperature T (k_B = 1).
class ModelParams {
 public:
  ModelParams() = default;

  ModelParams(double coupling, double field, double temperature)
      : coupling_(coupling), field_(field), temperature_(temperature) {
    if (!std::isfinite(coupling) || coupling == 0.0) {
      throw InvalidArgument("coupling J must be finite and nonzero");
    }
    if (!std::isfinite(field)) throw InvalidArgument("field h must be finite");
    if (!(temperature >= 0.0) || std::isinf(temperature)) {
      throw InvalidArgument("temperature must be finite and >= 0, got " +
                            std::to_string(temperature));
    }
  }

  /// J = 1 shorthand.
  static ModelParams with_field(double field, double temperature) {
    return {1.0, field, temperature};
  }

  double coupling() const { return coupling_; }
  double field() const { return field_; }
  double temperature() const { return temperature_; }
  bool zero_temperature() const { return temperature_ == 0.0; }

  /// Inverse temperature; +inf at T = 0.
  double beta() const {
    return zero_temperature() ? std::numeric_limits<double>::infinity()
                              : 1.0 / temperature_;
  }

  ModelParams with_field_value(double field) const {
    return {coupling_, field, temperature_};
  }

 private:
  double coupling_ = 1.0;
  double field_ = 0.0;
  double temperature_ = 0.0;
};

/// epsilon(k) = J cos(k) - h
inline double dispersion(double k, const ModelParams& p) {
  return p.coupling() * std::cos(k) - p.field();
}

/// 1 / (1 + exp(epsilon / T)); at T = 0 a step with value 1/2 at epsilon = 0.
inline double fermi_function(double energy, double temperature) {
  if (temperature == 0.0) {
    if (energy < 0.0) return 1.0;
    if (energy > 0.0) return 0.0;
    return 0.5;
  }
  const double x = energy / temperature;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

inline double fermi_occupation(double k, const ModelParams& p) {
  return fermi_function(dispersion(k, p), p.temperature());
}

/// f_0 ... f_{m_max} together with the parameters they were computed for.
class FermiCoefficients {
 public:
  FermiCoefficients(std::vector<double> values, ModelParams params)
      : values_(std::move(values)), params_(params) {
    if (values_.empty()) throw InvalidArgument("empty Fermi coefficient list");
  }

  double operator[](std::size_t m) const { return values_.at(m); }
  std::size_t max_separation() const { return values_.size() - 1; }
  const std::vector<double>& values() const { return values_; }
  const ModelParams& params() const { return params_; }

 private:
  std::vector<double> values_;
  ModelParams params_;
};

namespace detail {

/// Ground-state correlator: the filled region of the band is a single
/// interval in [0, pi] bounded by the Fermi momentum.
inline double fermi_coefficient_ground(int m, const ModelParams& p) {
  using std::numbers::pi;
  const double J = p.coupling();
  const double ratio = p.field() / J;
  // J > 0 fills k in (k_F, pi]; J < 0 fills [0, k_F).
  const bool fills_upper = J > 0.0;
  bool full = false;
  bool empty = false;
  if (ratio >= 1.0) {
    (fills_upper ? full : empty) = true;
  } else if (ratio <= -1.0) {
    (fills_upper ? empty : full) = true;
  }
  if (full) return m == 0 ? 1.0 : 0.0;
  if (empty) return 0.0;

  const double kf = std::acos(ratio);
  if (fills_upper) {
    if (m == 0) return (pi - kf) / pi;
    return -std::sin(m * kf) / (m * pi);
  }
  if (m == 0) return kf / pi;
  return std::sin(m * kf) / (m * pi);
}

/// Breakpoints in [0, pi] where epsilon(k) = e * T for e in {0, +-1, +-4,
/// +-16, +-64}. They bracket the thermal window around the Fermi momentum,
/// which is far narrower than [0, pi] at low T.
inline std::vector<double> thermal_breakpoints(const ModelParams& p) {
  using std::numbers::pi;
  std::vector<double> points{0.0, pi};
  const double T = p.temperature();
  for (double e : {0.0, 1.0, -1.0, 4.0, -4.0, 16.0, -16.0, 64.0, -64.0}) {
    const double c = (p.field() + e * T) / p.coupling();
    if (c > -1.0 && c < 1.0) points.push_back(std::acos(c));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace detail

/// f_m in the thermodynamic limit. T = 0 uses the closed form; T > 0 integrates
/// adaptively over panels split at the thermal window around the Fermi level.
inline double fermi_coefficient(int m, const ModelParams& p) {
  using std::numbers::pi;
  if (m < 0) throw InvalidArgument("separation m must be >= 0");
  if (p.zero_temperature()) return detail::fermi_coefficient_ground(m, p);

  const auto integrand = [&](double k) {
    return std::cos(k * m) * fermi_occupation(k, p);
  };
  constexpr double tolerance = 1e-12;
  const auto points = detail::thermal_breakpoints(p);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    // narrow panels near the Fermi level get a floor so rounding in the
    // occupation (about eps / T) cannot stall the refinement
    const double share = std::max((points[i + 1] - points[i]) / pi, 0.01);
    integral += quadrature::integrate(integrand, points[i], points[i + 1],
                                      {.abs_tol = tolerance * pi * share,
                                       .max_depth = 30});
  }
  return integral / pi;
}

inline FermiCoefficients fermi_coefficients(int max_separation,
                                            const ModelParams& p) {
  if (max_separation < 4) {
    throw InvalidArgument("max separation must be >= 4, got " +
                          std::to_string(max_separation));
  }
  std::vector<double> values(static_cast<std::size_t>(max_separation) + 1);
  for (int m = 0; m <= max_separation; ++m) values[m] = fermi_coefficient(m, p);
  return {std::move(values), p};
}

/// Finite-ring analogue (1/N) sum_n cos(k_n m) g(k_n), k_n = 2 pi n / N.
inline double fermi_coefficient_finite(int m, const ModelParams& p,
                                       int sites) {
  if (sites < 2) throw InvalidArgument("chain length must be >= 2");
  if (p.zero_temperature()) {
    throw InvalidArgument(
        "finite-N momentum sums need T > 0 (T = 0 is parity-sector dependent)");
  }
  if (m < 0) throw InvalidArgument("separation m must be >= 0");
  double sum = 0.0;
  for (int n = 0; n < sites; ++n) {
    const double k = 2.0 * std::numbers::pi * n / sites;
    sum += std::cos(k * m) * fermi_occupation(k, p);
  }
  return sum / sites;
}

}  // namespace xxcorr
