// xxcorr: correlation measures of the XX chain in a transverse field.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "xxcorr/xxcorr.hpp"

namespace {

using namespace xxcorr;

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return detail::format_number(v); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat `key = value` file; blank lines and lines starting with # are skipped.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Config entries become ordinary flags, inserted only where the command line
// does not already set them.
void inject_config(CLI::App& app, std::vector<std::string>& args) {
  const auto path = config_path(args);
  if (!path) return;
  std::size_t sub_pos = args.size();
  CLI::App* sub = nullptr;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (auto* s = app.get_subcommand_no_throw(args[i])) {
      sub = s;
      sub_pos = i;
      break;
    }
  }
  std::vector<std::string> global, local;
  for (const auto& [key, value] : read_config(*path)) {
    const std::string flag = "--" + key;
    if (key == "config") throw InvalidArgument("config files cannot nest");
    if (has_flag(args, flag)) continue;
    auto* target = (sub && sub->get_option_no_throw(flag)) ? &local
                   : app.get_option_no_throw(flag)           ? &global
                                                             : nullptr;
    if (!target) {
      // keys meant for other subcommands may share one file
      bool known = false;
      for (const auto* s : app.get_subcommands({})) known = known || s->get_option_no_throw(flag);
      if (!known) throw InvalidArgument("unknown config key '" + key + "'");
      continue;
    }
    target->push_back(flag);
    target->push_back(value);
  }
  if (sub) args.insert(args.begin() + sub_pos + 1, local.begin(), local.end());
  args.insert(args.begin(), global.begin(), global.end());
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw IoError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
};

void emit(const ScanTable& table, const std::string& format, const std::string& out_path) {
  Output out(out_path);
  if (format == "json") {
    emit_json(table, out.stream());
  } else {
    emit_csv(table, out.stream());
  }
  out.finish();
}

std::pair<double, double> parse_interval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos) {
    throw InvalidArgument("expected start:stop, got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    const double a = std::stod(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("trailing");
    const std::string rest = text.substr(colon + 1);
    const double b = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing");
    return {a, b};
  } catch (const std::logic_error&) {
    throw InvalidArgument("malformed interval '" + text + "'");
  }
}

std::vector<Measure> parse_measures(const std::vector<std::string>& names) {
  std::vector<Measure> out;
  for (const auto& n : names) out.push_back(parse_measure(n));
  return out;
}

struct Options {
  double h = 0.0;
  double T = 0.0;
  double J = 1.0;
  std::vector<int> m{2};
  int m_max = 4;
  std::string h_range;
  std::string T_range;
  std::vector<std::string> measures;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 0;
  int N = 8;
  int threads = default_thread_count();
  double dh = 1e-3;
  double resolution = 1e-4;
  double threshold = 1e-9;
  std::string suite;
  std::string config;
};

int run_fm(const Options& o) {
  if (o.m_max < 0) throw InvalidArgument("--m-max must be >= 0");
  const ModelParams params(o.J, o.h, o.T);
  Output out(o.out);
  out.stream() << "m,f_m\n";
  for (int m = 0; m <= o.m_max; ++m) {
    out.stream() << m << ',' << fmt(fermi_coefficient(m, params)) << '\n';
  }
  out.finish();
  return 0;
}

int run_rdm(const Options& o) {
  const ModelParams params(o.J, o.h, o.T);
  Output out(o.out);
  for (int m : o.m) {
    const auto rdm = two_site_state(params, m);
    const auto& e = rdm.elements();
    if (o.format == "json") {
      nlohmann::ordered_json j{{"T", o.T},        {"h", o.h},
                               {"m", m},          {"x_plus", e.x_plus},
                               {"x_minus", e.x_minus}, {"y_plus", e.y_plus},
                               {"y_minus", e.y_minus}, {"z", e.z}};
      out.stream() << j.dump() << '\n';
    } else {
      out.stream() << "# T=" << fmt(o.T) << " h=" << fmt(o.h) << " m=" << m << '\n'
                   << "# X+=" << fmt(e.x_plus) << " X-=" << fmt(e.x_minus)
                   << " Y+=" << fmt(e.y_plus) << " Y-=" << fmt(e.y_minus)
                   << " Z=" << fmt(e.z) << '\n'
                   << format_matrix(rdm);
    }
  }
  out.finish();
  return 0;
}

ScanGrid grid_from(const Options& o) {
  ScanGrid g;
  g.coupling = o.J;
  g.separations = o.m;
  if (!o.measures.empty()) g.measures = parse_measures(o.measures);
  return g;
}

int run_measures(const Options& o) {
  ScanGrid g = grid_from(o);
  g.field = Range::fixed(o.h);
  g.temperature = Range::fixed(o.T);
  emit(scan(g, o.threads, o.seed), o.format, o.out);
  return 0;
}

int run_scan(const Options& o) {
  ScanGrid g = grid_from(o);
  g.field = o.h_range.empty() ? Range::fixed(o.h) : Range::parse(o.h_range);
  g.temperature = o.T_range.empty() ? Range::fixed(o.T) : Range::parse(o.T_range);
  emit(scan(g, o.threads, o.seed), o.format, o.out);
  return 0;
}

int run_qpt(const Options& o) {
  const auto [a, b] = parse_interval(o.h_range.empty() ? "0.8:1.2" : o.h_range);
  const Measure measure = parse_measure(o.measures.empty() ? "qd" : o.measures.front());
  if (o.m.size() != 1) throw InvalidArgument("qpt takes a single --m");
  const auto p = qpt_locate(o.T, a, b, o.dh, measure, o.m.front(), o.threads, o.J);
  std::cout << "peak_h=" << fmt(p.peak_field) << " peak_derivative=" << fmt(p.peak_derivative)
            << '\n';
  if (!o.out.empty()) {
    Output out(o.out);
    out.stream() << "h," << measure_name(measure) << ",derivative\n";
    for (std::size_t i = 0; i < p.fields.size(); ++i) {
      out.stream() << fmt(p.fields[i]) << ',' << fmt(p.values[i]) << ','
                   << fmt(p.derivatives[i]) << '\n';
    }
    out.finish();
  }
  return 0;
}

int run_onset(const Options& o) {
  const auto [a, b] = parse_interval(o.h_range.empty() ? "0:2" : o.h_range);
  const Measure measure =
      parse_measure(o.measures.empty() ? "concurrence" : o.measures.front());
  OnsetOptions opts;
  opts.resolution = o.resolution;
  opts.threshold = o.threshold;
  opts.coupling = o.J;
  for (int m : o.m) {
    const double h = onset_locate(o.T, measure, m, a, b, opts);
    std::printf("m=%d onset_h=%.6f\n", m, h);
  }
  return 0;
}

int run_spectrum(const Options& o) {
  const ed::FiniteChainSpec spec(o.N, ModelParams(o.J, o.h, 0.0));
  const auto r = ed::spectrum_match(spec);
  Output out(o.out);
  out.stream() << "index,spin_energy,fermion_energy,abs_dev\n";
  for (std::size_t i = 0; i < r.spin_energies.size(); ++i) {
    out.stream() << i << ',' << fmt(r.spin_energies[i]) << ','
                 << fmt(r.fermion_energies[i]) << ','
                 << fmt(std::abs(r.spin_energies[i] - r.fermion_energies[i])) << '\n';
  }
  out.finish();
  std::cerr << "max_abs_dev=" << fmt(r.max_abs_deviation) << '\n';
  return 0;
}

int run_validate(const Options& o) {
  const auto r = validate(o.suite, o.seed, o.threads);
  std::printf("%s: %s max_dev=%.3e tol=%.1e\n", r.suite.c_str(), r.passed ? "PASS" : "FAIL",
              r.max_deviation, r.tolerance);
  for (const auto& d : r.details) std::printf("  %s\n", d.c_str());
  return r.passed ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Correlation measures for the XX spin chain in a transverse field"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  app.add_option("--config", o.config, "key = value file; command-line flags take precedence");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  const auto point = [&](CLI::App* s) {
    s->add_option("--h", o.h, "transverse field");
    s->add_option("--T", o.T, "temperature (0 for the ground state)");
    s->add_option("--J", o.J, "coupling");
  };
  const auto output = [&](CLI::App* s) {
    s->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--out", o.out, "output path (default stdout)");
  };
  const auto threads = [&](CLI::App* s) {
    s->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* fm = app.add_subcommand("fm", "Fermi coefficients f_0..f_mmax");
  point(fm);
  fm->add_option("--m-max", o.m_max, "largest separation");
  fm->add_option("--out", o.out, "output path");

  auto* rdm = app.add_subcommand("rdm", "two-site reduced density matrix");
  point(rdm);
  rdm->add_option("--m", o.m, "separation(s)")->delimiter(',');
  output(rdm);

  auto* measures = app.add_subcommand("measures", "all measures at one (T, h)");
  point(measures);
  measures->add_option("--m", o.m, "separation(s)")->delimiter(',');
  measures->add_option("--measure", o.measures, "measure column(s)")->delimiter(',');
  measures->add_option("--seed", o.seed, "recorded in the output metadata");
  output(measures);
  threads(measures);

  auto* scan_cmd = app.add_subcommand("scan", "(T, h) grid of measures");
  point(scan_cmd);
  scan_cmd->add_option("--h-range", o.h_range, "start:stop:steps");
  scan_cmd->add_option("--T-range", o.T_range, "start:stop:steps");
  scan_cmd->add_option("--m", o.m, "separation(s)")->delimiter(',');
  scan_cmd->add_option("--measure", o.measures, "measure column(s)")->delimiter(',');
  scan_cmd->add_option("--seed", o.seed, "recorded in the output metadata");
  output(scan_cmd);
  threads(scan_cmd);

  auto* qpt = app.add_subcommand("qpt", "field of the largest |d measure / dh|");
  qpt->add_option("--T", o.T, "temperature");
  qpt->add_option("--J", o.J, "coupling");
  qpt->add_option("--h-range", o.h_range, "start:stop (default 0.8:1.2)");
  qpt->add_option("--dh", o.dh, "field step (default 1e-3)");
  qpt->add_option("--measure", o.measures, "measure (default qd)");
  qpt->add_option("--m", o.m, "separation");
  qpt->add_option("--out", o.out, "write the derivative profile as CSV");
  threads(qpt);

  auto* onset = app.add_subcommand("onset", "smallest field where a measure turns on");
  onset->add_option("--T", o.T, "temperature");
  onset->add_option("--J", o.J, "coupling");
  onset->add_option("--h-range", o.h_range, "start:stop (default 0:2)");
  onset->add_option("--measure", o.measures, "measure (default concurrence)");
  onset->add_option("--m", o.m, "separation(s)")->delimiter(',');
  onset->add_option("--resolution", o.resolution, "bisection resolution");
  onset->add_option("--threshold", o.threshold, "onset threshold");

  auto* spectrum = app.add_subcommand("spectrum", "spin vs fermion spectrum of a ring");
  spectrum->add_option("--N", o.N, "ring size");
  spectrum->add_option("--h", o.h, "transverse field");
  spectrum->add_option("--J", o.J, "coupling");
  spectrum->add_option("--out", o.out, "output path");

  auto* val = app.add_subcommand("validate", "oracle comparison suites");
  val->add_option("suite", o.suite, "wick|discord|coherence|spectrum|finite_size")
      ->required()
      ->check(CLI::IsMember({"wick", "discord", "coherence", "spectrum", "finite_size"}));
  val->add_option("--seed", o.seed, "random seed");
  threads(val);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    inject_config(app, args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*fm) return run_fm(o);
    if (*rdm) return run_rdm(o);
    if (*measures) return run_measures(o);
    if (*scan_cmd) return run_scan(o);
    if (*qpt) return run_qpt(o);
    if (*onset) return run_onset(o);
    if (*spectrum) return run_spectrum(o);
    if (*val) return run_validate(o);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedSeparation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateRange& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
