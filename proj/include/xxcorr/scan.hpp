#pragma once

// (T, h, m) sweeps, derivative-based location of the critical field, onset
// search, and CSV / JSON emission of scan tables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "xxcorr/error.hpp"
#include "xxcorr/measures.hpp"
#include "xxcorr/parallel.hpp"

namespace xxcorr {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class Measure { concurrence, mutual_info, cc, qd, qc };

inline constexpr Measure kAllMeasures[] = {Measure::concurrence, Measure::mutual_info,
                                           Measure::cc, Measure::qd, Measure::qc};

inline std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::concurrence: return "concurrence";
    case Measure::mutual_info: return "mutual_info";
    case Measure::cc: return "cc";
    case Measure::qd: return "qd";
    case Measure::qc: return "qc";
  }
  return "";
}

inline Measure parse_measure(std::string_view name) {
  for (Measure m : kAllMeasures) {
    if (measure_name(m) == name) return m;
  }
  throw InvalidArgument("unknown measure '" + std::string(name) +
                        "' (expected concurrence, mutual_info, cc, qd or qc)");
}

inline double measure_value(const CorrelationReport& r, Measure m) {
  switch (m) {
    case Measure::concurrence: return r.concurrence;
    case Measure::mutual_info: return r.mutual_information;
    case Measure::cc: return r.classical_correlations;
    case Measure::qd: return r.quantum_discord;
    case Measure::qc: return r.quantum_coherence;
  }
  return 0.0;
}

/// Evenly spaced axis `start:stop:steps`, endpoints included. A single-step
/// axis is a fixed value and needs start == stop.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  static Range fixed(double value) { return {value, value, 1}; }

  static Range parse(std::string_view text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
      if (c == ':') {
        parts.push_back(current);
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    parts.push_back(current);
    if (parts.size() != 3) {
      throw InvalidArgument("range must look like start:stop:steps, got '" +
                            std::string(text) + "'");
    }
    Range r;
    try {
      std::size_t used = 0;
      r.start = std::stod(parts[0], &used);
      if (used != parts[0].size()) throw std::invalid_argument("trailing");
      r.stop = std::stod(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument("trailing");
      r.steps = std::stoi(parts[2], &used);
      if (used != parts[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw InvalidArgument("malformed range '" + std::string(text) + "'");
    }
    r.validate("range");
    return r;
  }

  void validate(std::string_view axis) const {
    if (!std::isfinite(start) || !std::isfinite(stop)) {
      throw InvalidArgument(std::string(axis) + ": range must be finite");
    }
    if (steps < 1) throw InvalidArgument(std::string(axis) + ": steps must be >= 1");
    if (steps == 1 && start != stop) {
      throw InvalidArgument(std::string(axis) +
                            ": a swept axis needs at least 2 steps");
    }
  }

  std::vector<double> values() const {
    if (steps == 1) return {start};
    std::vector<double> v(static_cast<std::size_t>(steps));
    const double step = (stop - start) / (steps - 1);
    for (int i = 0; i < steps; ++i) v[i] = start + i * step;
    v.back() = stop;
    return v;
  }

  std::string to_string() const {
    std::ostringstream out;
    out.precision(12);
    out << start << ':' << stop << ':' << steps;
    return out.str();
  }
};

struct ScanGrid {
  Range field = Range::fixed(0.0);
  Range temperature = Range::fixed(0.0);
  std::vector<int> separations{2};
  std::vector<Measure> measures{std::begin(kAllMeasures), std::end(kAllMeasures)};
  double coupling = 1.0;

  void validate() const {
    field.validate("h");
    temperature.validate("T");
    if (temperature.start < 0.0 || temperature.stop < 0.0) {
      throw InvalidArgument("T range must be >= 0");
    }
    if (separations.empty()) throw InvalidArgument("no separations requested");
    for (int m : separations) {
      if (m < 1 || m > 4) {
        throw InvalidArgument("separations must be in {1, 2, 3, 4}; got " +
                              std::to_string(m));
      }
    }
    if (measures.empty()) throw InvalidArgument("no measures requested");
    ModelParams(coupling, 0.0, 0.0);
  }

  std::size_t point_count() const {
    return static_cast<std::size_t>(field.steps) * temperature.steps *
           separations.size();
  }
};

struct ScanRow {
  double temperature;
  double field;
  int separation;
  CorrelationReport report;
};

struct ScanTable {
  std::vector<Measure> columns;
  std::vector<ScanRow> rows;
  std::map<std::string, std::string> meta;
};

/// Error from one scan point, tagged with its coordinates.
class PointFailure : public Error {
 public:
  PointFailure(const CorrelationPoint& p, const std::string& what)
      : Error("scan point (T=" + std::to_string(p.temperature) +
              ", h=" + std::to_string(p.field) + ", m=" +
              std::to_string(p.separation) + ") failed: " + what),
        point_(p) {}
  const CorrelationPoint& point() const { return point_; }

 private:
  CorrelationPoint point_;
};

/// Evaluates every (T, h, m) point; rows are ordered T-major, then h, then m,
/// independent of the number of workers.
inline ScanTable scan(const ScanGrid& grid, int threads = default_thread_count(),
                      std::uint64_t seed = 0) {
  grid.validate();
  const auto temperatures = grid.temperature.values();
  const auto fields = grid.field.values();
  const std::size_t nm = grid.separations.size();
  const std::size_t nh = fields.size();

  ScanTable table;
  table.columns = grid.measures;
  table.rows.resize(grid.point_count());
  parallel_for(table.rows.size(), threads, [&](std::size_t idx) {
    const std::size_t it = idx / (nh * nm);
    const std::size_t ih = (idx / nm) % nh;
    const std::size_t im = idx % nm;
    const CorrelationPoint point{temperatures[it], fields[ih], grid.separations[im]};
    try {
      const ModelParams params(grid.coupling, point.field, point.temperature);
      table.rows[idx] = {point.temperature, point.field, point.separation,
                         all_measures(params, point.separation)};
    } catch (const std::exception& e) {
      throw PointFailure(point, e.what());
    }
  });

  std::string seps;
  for (std::size_t i = 0; i < nm; ++i) {
    seps += (i ? "," : "") + std::to_string(grid.separations[i]);
  }
  std::ostringstream coupling;
  coupling.precision(12);
  coupling << grid.coupling;
  table.meta = {{"tool", "xxcorr"},
                {"version", std::string(kToolVersion)},
                {"h_range", grid.field.to_string()},
                {"T_range", grid.temperature.to_string()},
                {"J", coupling.str()},
                {"m", seps},
                {"seed", std::to_string(seed)}};
  return table;
}

namespace detail {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace detail

/// Header `T,h,m,<measures>` followed by one line per row, LF terminated.
inline void emit_csv(const ScanTable& table, std::ostream& out) {
  out << "T,h,m";
  for (Measure m : table.columns) out << ',' << measure_name(m);
  out << '\n';
  for (const auto& row : table.rows) {
    out << detail::format_number(row.temperature) << ','
        << detail::format_number(row.field) << ',' << row.separation;
    for (Measure m : table.columns) {
      out << ',' << detail::format_number(measure_value(row.report, m));
    }
    out << '\n';
  }
}

inline nlohmann::ordered_json to_json(const ScanTable& table) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.meta) meta[k] = v;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r;
    r["T"] = row.temperature;
    r["h"] = row.field;
    r["m"] = row.separation;
    for (Measure m : table.columns) {
      r[std::string(measure_name(m))] = measure_value(row.report, m);
    }
    rows.push_back(std::move(r));
  }
  return {{"meta", std::move(meta)}, {"rows", std::move(rows)}};
}

inline void emit_json(const ScanTable& table, std::ostream& out) {
  out << to_json(table).dump(2) << '\n';
}

struct QptProfile {
  double peak_field = 0.0;
  double peak_derivative = 0.0;
  std::vector<double> fields;
  std::vector<double> values;
  std::vector<double> derivatives;
};

/// d(measure)/dh on an evenly spaced field grid (central differences inside,
/// one-sided at the ends) and the field where |derivative| is largest.
inline QptProfile qpt_locate(double temperature, double h_start, double h_stop,
                             double dh, Measure measure, int m,
                             int threads = default_thread_count(),
                             double coupling = 1.0) {
  if (!(dh > 0.0)) throw InvalidArgument("dh must be > 0");
  if (!(h_stop > h_start)) throw InvalidArgument("h range must be increasing");
  const auto intervals =
      static_cast<long>(std::floor((h_stop - h_start) / dh + 1e-9));
  const long points = intervals + 1;
  if (points - 2 < 5) {
    throw DegenerateRange("qpt scan needs at least 5 interior points, got " +
                          std::to_string(std::max(0L, points - 2)));
  }

  QptProfile p;
  p.fields.resize(points);
  p.values.resize(points);
  p.derivatives.resize(points);
  for (long i = 0; i < points; ++i) p.fields[i] = h_start + i * dh;
  parallel_for(p.fields.size(), threads, [&](std::size_t i) {
    const ModelParams params(coupling, p.fields[i], temperature);
    p.values[i] = measure_value(all_measures(params, m), measure);
  });

  for (long i = 0; i < points; ++i) {
    if (i == 0) {
      p.derivatives[i] = (p.values[1] - p.values[0]) / dh;
    } else if (i == points - 1) {
      p.derivatives[i] = (p.values[i] - p.values[i - 1]) / dh;
    } else {
      p.derivatives[i] = (p.values[i + 1] - p.values[i - 1]) / (2.0 * dh);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.derivatives.size(); ++i) {
    if (std::abs(p.derivatives[i]) > std::abs(p.derivatives[best])) best = i;
  }
  p.peak_field = p.fields[best];
  p.peak_derivative = p.derivatives[best];
  return p;
}

struct OnsetOptions {
  double threshold = 1e-9;
  double resolution = 1e-4;
  int coarse_steps = 400;
  double coupling = 1.0;
};

/// Smallest field in [h_start, h_stop] where the measure exceeds the
/// threshold: a coarse sweep brackets the first crossing, bisection narrows
/// the bracket below `resolution` and the upper end is returned.
inline double onset_locate(double temperature, Measure measure, int m,
                           double h_start, double h_stop,
                           const OnsetOptions& opts = {}) {
  if (!(h_stop > h_start)) throw InvalidArgument("h range must be increasing");
  if (!(opts.resolution > 0.0)) throw InvalidArgument("resolution must be > 0");
  const auto above = [&](double h) {
    const ModelParams params(opts.coupling, h, temperature);
    return measure_value(all_measures(params, m), measure) > opts.threshold;
  };
  if (above(h_start)) return h_start;

  const int steps = std::max(2, opts.coarse_steps);
  const double step = (h_stop - h_start) / steps;
  double lo = h_start;
  std::optional<double> hi;
  for (int i = 1; i <= steps; ++i) {
    const double h = (i == steps) ? h_stop : h_start + i * step;
    if (above(h)) {
      hi = h;
      break;
    }
    lo = h;
  }
  if (!hi) {
    throw NotFound(std::string(measure_name(measure)) + " never exceeds " +
                   detail::format_number(opts.threshold) + " on [" +
                   detail::format_number(h_start) + ", " +
                   detail::format_number(h_stop) + "]");
  }
  double upper = *hi;
  while (upper - lo > opts.resolution) {
    const double mid = 0.5 * (lo + upper);
    (above(mid) ? upper : lo) = mid;
  }
  return upper;
}

}  // namespace xxcorr
