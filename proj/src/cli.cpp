#include "dmgrad/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <ostream>
#include <sstream>
#include <variant>

#include "dmgrad/baseline_optimizer.hpp"
#include "dmgrad/errors.hpp"
#include "dmgrad/interrogation_mode.hpp"
#include "dmgrad/phase_model.hpp"
#include "dmgrad/sensitivity.hpp"
#include "dmgrad/signal_model.hpp"

namespace dmgrad::cli {

using nlohmann::json;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

using Cell = std::variant<std::monostate, double, long long, std::string, bool>;

/// Rows share one column list; the first `csv_width` columns form the CSV
/// body, JSON output carries all of them.
struct Table {
  std::string description;
  std::vector<std::string> columns;
  std::size_t csv_width = 0;
  std::vector<std::vector<Cell>> rows;
  json summary;
};

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? json(v) : json(nullptr);
        } else {
          return json(v);
        }
      },
      c);
}

std::string render(const Table& t, OutputFormat format, const std::string& command) {
  std::ostringstream os;
  if (format == OutputFormat::csv) {
    os << "# dmgrad " << version << " " << command << "\n";
    os << "# " << t.description << "\n";
    for (std::size_t i = 0; i < t.csv_width; ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < t.csv_width; ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << "\n";
    }
    return os.str();
  }
  json doc;
  doc["tool"] = "dmgrad";
  doc["version"] = version;
  doc["command"] = command;
  json results = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    results.push_back(std::move(obj));
  }
  doc["results"] = std::move(results);
  if (!t.summary.is_null()) doc["summary"] = t.summary;
  return doc.dump(2) + "\n";
}

struct Point {
  double baseline;
  double omega;
  int diamonds;
};

std::vector<Point> grid_points(const Scenario& s) {
  std::vector<Point> points;
  for (double b : s.baseline.values) {
    for (double w : s.omega.values) {
      for (int q : s.diamonds) points.push_back({b, w, q});
    }
  }
  return points;
}

DmWave wave_at(const Scenario& s, double omega) { return DmWave(omega, s.phi, s.rho_dm); }

double delta_omega_at(const Scenario& s, double omega) {
  return delta_omega(AtomTransition(s.omega_atom), wave_at(s, omega), s.constants);
}

OptimizationOutcome optimise(const Scenario& s, const Point& p) {
  HeightProblem problem;
  problem.noise = s.noise;
  problem.diamonds = p.diamonds;
  problem.recoil_velocity = s.recoil_velocity;
  problem.gravity = s.constants.g_surface();
  problem.speed_of_light = s.constants.c();
  problem.delta_omega = delta_omega_at(s, p.omega);
  problem.omega = p.omega;
  problem.momentum_transfers = s.momentum_transfers;
  return optimize_height(p.baseline, problem);
}

double height_at(const Scenario& s, const Point& p) {
  if (s.height) {
    if (!(*s.height < p.baseline)) {
      throw DomainError("fountain height h = " + format_number(*s.height) + " m must be below the baseline B = " +
                        format_number(p.baseline) + " m");
    }
    return *s.height;
  }
  return optimise(s, p).h_star;
}

void check_repetitions(const Scenario& s, double t_tot) {
  if (!s.repetitions || std::holds_alternative<FixedPhaseNoise>(s.noise)) return;
  const double nu = repetitions(s.noise, t_tot);
  if (std::abs(*s.repetitions - nu) > 1e-6 * nu) {
    throw ConfigError("noise.nu", "inconsistent with T_int/T_tot = " + format_number(nu));
  }
}

Table sensitivity_table(const Scenario& s) {
  Table t;
  t.description =
      "resonant-mode sensitivity; columns: B [m], h [m], omega [rad/s], Q, N, scheme, delta_eps, eps_5sigma";
  t.columns = {"B", "h", "omega", "Q", "N", "scheme", "delta_eps", "eps_5sigma",
               "tau_L", "T_tot", "T", "delta_omega", "noise_phase", "noise", "nu", "snr", "g"};
  t.csv_width = 8;
  for (const auto& p : grid_points(s)) {
    const double h = height_at(s, p);
    SensitivityInputs in;
    in.variant = s.variant;
    in.diamonds = p.diamonds;
    in.momentum_transfers = s.momentum_transfers;
    in.wave = wave_at(s, p.omega);
    in.transition = AtomTransition(s.omega_atom);
    in.geometry = DetectorGeometry(p.baseline, h, s.recoil_velocity, s.constants.g_surface(), s.constants.c());
    in.noise = s.noise;
    in.snr = s.snr;
    in.constants = s.constants;
    const auto r = evaluate_sensitivity(in);
    check_repetitions(s, r.total_duration);
    t.rows.push_back({p.baseline, h, p.omega, static_cast<long long>(p.diamonds),
                      static_cast<long long>(s.momentum_transfers), std::string(to_string(s.variant)), r.delta_eps,
                      r.eps_5sigma, in.geometry.delay(), r.total_duration, r.interrogation_time, r.delta_omega,
                      r.noise_phase, std::string(noise_kind_name(s.noise)), repetitions(s.noise, r.total_duration),
                      s.snr, s.constants.g_surface()});
  }
  return t;
}

Table optimize_table(const Scenario& s) {
  Table t;
  t.description =
      "optimal fountain height; columns: B [m], omega [rad/s], Q, noise, h_star [m], fraction, delta_eps_star, "
      "iterations, converged";
  t.columns = {"B", "omega", "Q", "noise", "h_star", "fraction", "delta_eps_star", "iterations", "converged"};
  t.csv_width = t.columns.size();
  for (const auto& p : grid_points(s)) {
    const auto o = optimise(s, p);
    t.rows.push_back({p.baseline, p.omega, static_cast<long long>(p.diamonds),
                      std::string(noise_kind_name(s.noise)), o.h_star, o.fraction, o.delta_eps_star,
                      static_cast<long long>(o.iterations), o.converged});
  }
  return t;
}

Table eval_signal_table(const Scenario& s) {
  Table t;
  t.description =
      "signal amplitude in both regimes; columns: B [m], h [m], omega [rad/s], Q, N, scheme, omega_T [rad], "
      "tau_L [s], delta_omega [rad/s], mode, phi_s_exact [rad], phi_s_lmt [rad], relative_difference";
  t.columns = {"B", "h", "omega", "Q", "N", "scheme", "omega_T", "tau_L", "delta_omega", "mode",
               "phi_s_exact", "phi_s_lmt", "relative_difference", "lmt_note"};
  t.csv_width = 13;
  for (const auto& p : grid_points(s)) {
    const double h = height_at(s, p);
    double period;
    if (s.interrogation_time) {
      period = *s.interrogation_time;
    } else if (s.omega_t) {
      period = *s.omega_t / p.omega;
    } else {
      period = resonant_omega_t(s.variant) / p.omega;
    }
    const PulseScheme scheme(s.variant, p.diamonds, period, s.momentum_transfers);
    const DetectorGeometry geo(p.baseline, h, s.recoil_velocity, s.constants.g_surface(), s.constants.c());
    const DmWave wave = wave_at(s, p.omega);
    const double d_omega = delta_omega_at(s, p.omega);
    const double omega_t = p.omega * period;
    const auto exact = signal_amplitude_exact(s.eps_bar, d_omega, wave, geo.delay(), scheme);
    Cell lmt, rel, note;
    try {
      const auto small = signal_amplitude_lmt(s.eps_bar, d_omega, wave, geo.delay(), scheme);
      lmt = small.value;
      rel = exact.value > 0.0 ? std::abs(small.value - exact.value) / exact.value : 0.0;
    } catch (const DomainError& e) {
      note = std::string(e.what());
    }
    t.rows.push_back({p.baseline, h, p.omega, static_cast<long long>(p.diamonds),
                      static_cast<long long>(s.momentum_transfers), std::string(to_string(s.variant)), omega_t,
                      geo.delay(), d_omega, mode_value<double>(s.variant, omega_t, p.diamonds), exact.value, lmt, rel,
                      note});
  }
  return t;
}

std::vector<double> omega_t_values(const Scenario& s) {
  if (s.omega_t_grid.ranged) return s.omega_t_grid.values;
  std::vector<double> xs;
  constexpr int count = 401;
  for (int i = 0; i < count; ++i) xs.push_back(two_pi * i / (count - 1));
  return xs;
}

Table mode_function_table(const Scenario& s) {
  Table t;
  t.description = "interrogation-mode functions; columns: omega_T [rad], Q, Q_plus, Q_minus";
  t.columns = {"omega_T", "Q", "Q_plus", "Q_minus"};
  t.csv_width = t.columns.size();
  for (int q : s.diamonds) {
    for (double x : omega_t_values(s)) {
      t.rows.push_back({x, static_cast<long long>(q), mode_plus(x, q), mode_minus(x, q)});
    }
  }
  return t;
}

Table mode_max_table(const Scenario& s) {
  Table t;
  t.description =
      "maximum of |Q(omega_T)| over (0, 2pi); columns: Q, scheme, omega_T_star [rad], q_max, deviation (q_max - Q/2, "
      "minus scheme only)";
  t.columns = {"Q", "scheme", "omega_T_star", "q_max", "deviation"};
  t.csv_width = t.columns.size();
  for (int q : s.diamonds) {
    const auto m = maximize_mode(s.variant, q);
    t.rows.push_back({static_cast<long long>(q), std::string(to_string(s.variant)), m.omega_t_star, m.q_max,
                      m.deviation ? Cell(*m.deviation) : Cell()});
  }
  return t;
}

class UnitRandom {
 public:
  explicit UnitRandom(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on the open interval (0, 1).
  double next() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct OracleSample {
  SchemeVariant variant;
  int diamonds;
  double omega_t;
  double omega_tau;
  double omega_t0;
};

Table oracle_table(const Scenario& s, bool& passed) {
  std::vector<OracleSample> samples = {
      {SchemeVariant::minus, 3, std::numbers::pi / 2, 0.3, 0.0},
      {SchemeVariant::minus, 4, std::numbers::pi / 2, 0.7, 0.0},
      {SchemeVariant::minus, 2, 1.5 * std::numbers::pi, 0.2, 0.0},
      {SchemeVariant::plus, 5, std::numbers::pi, 0.5, 0.0},
  };
  UnitRandom rng(s.seed);
  for (int i = 0; i < s.oracle_samples; ++i) {
    OracleSample o;
    o.variant = rng.next() < 0.5 ? SchemeVariant::minus : SchemeVariant::plus;
    o.diamonds = 1 + static_cast<int>(rng.next() * 12.0);
    o.omega_t = two_pi * rng.next();
    o.omega_tau = rng.next();
    o.omega_t0 = two_pi * rng.next();
    samples.push_back(o);
  }

  const double omega = s.omega.values.front();
  const DmWave wave = wave_at(s, omega);
  const double d_omega = delta_omega_at(s, omega) > 0.0 ? delta_omega_at(s, omega) : 1.0;
  const double eps = s.eps_bar > 0.0 ? s.eps_bar : 1.0;

  Table t;
  t.description =
      "closed-form signal amplitude vs phase-quadrature oracle; columns: index, scheme, Q, omega_T [rad], "
      "omega_tau_L [rad], closed_form [rad], oracle [rad], relative_deviation";
  t.columns = {"index", "scheme", "Q", "omega_T", "omega_tau_L", "closed_form", "oracle", "relative_deviation"};
  t.csv_width = t.columns.size();
  double worst = 0.0;
  long long worst_index = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& o = samples[i];
    const PulseScheme scheme(o.variant, o.diamonds, o.omega_t / omega);
    const double tau = o.omega_tau / omega;
    const double closed = signal_amplitude_exact(eps, d_omega, wave, tau, scheme).value * (1.0 + s.oracle_corruption);
    const double reference = rms_signal_amplitude_oracle(scheme, o.omega_t0 / omega, tau, wave, eps, d_omega);
    const double dev = reference > 0.0 ? std::abs(closed - reference) / reference : std::abs(closed);
    if (dev > worst || i == 0) {
      worst = dev;
      worst_index = static_cast<long long>(i);
    }
    t.rows.push_back({static_cast<long long>(i), std::string(to_string(o.variant)), static_cast<long long>(o.diamonds),
                      o.omega_t, o.omega_tau, closed, reference, dev});
  }
  passed = worst <= oracle_tolerance;
  t.summary = {{"seed", s.seed},
               {"samples", samples.size()},
               {"tolerance", oracle_tolerance},
               {"max_relative_deviation", worst},
               {"worst_index", worst_index},
               {"passed", passed}};
  return t;
}

void require_single(const Scenario& s, const std::string& axis) {
  const auto check = [&](bool ranged, const char* name, const char* field) {
    if (ranged && axis != name) {
      throw ConfigError(field, "only the sweep axis may be a range (sweeping " + axis + ")");
    }
  };
  check(s.omega.ranged, "omega", "dm.omega");
  check(s.baseline.ranged, "B", "geometry.B");
  if (axis != "omega_T") check(s.diamonds_ranged, "Q", "scheme.Q");
}

Table sweep_table(const Scenario& s, const std::string& axis) {
  require_single(s, axis);
  if (axis == "omega") {
    if (!s.omega.ranged) throw ConfigError("dm.omega", "--axis omega requires a range");
    return sensitivity_table(s);
  }
  if (axis == "B") {
    if (!s.baseline.ranged) throw ConfigError("geometry.B", "--axis B requires a range");
    return sensitivity_table(s);
  }
  if (axis == "Q") {
    if (!s.diamonds_ranged) throw ConfigError("scheme.Q", "--axis Q requires a range or list");
    return mode_max_table(s);
  }
  if (!s.omega_t_grid.ranged) throw ConfigError("scheme.omega_T", "--axis omega_T requires a range");
  return mode_function_table(s);
}

struct Flags {
  std::string config;
  std::string output;
  std::string format;
  std::string axis;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int execute(const std::string& command, const Flags& flags, std::ostream& out, std::ostream& err) {
  Scenario s = flags.config.empty() ? parse_scenario(json::object()) : load_scenario(flags.config);
  if (flags.seed_set) s.seed = flags.seed;

  const bool tabular = command == "mode-function" || command == "mode-max" || command == "sweep";
  OutputFormat format = s.format.value_or(tabular ? OutputFormat::csv : OutputFormat::json);
  if (!flags.format.empty()) format = flags.format == "csv" ? OutputFormat::csv : OutputFormat::json;

  Table table;
  std::string label = command;
  int status = success;
  if (command == "sensitivity") {
    table = sensitivity_table(s);
  } else if (command == "optimize") {
    table = optimize_table(s);
  } else if (command == "eval-signal") {
    table = eval_signal_table(s);
  } else if (command == "mode-function") {
    table = mode_function_table(s);
  } else if (command == "mode-max") {
    table = mode_max_table(s);
  } else if (command == "sweep") {
    table = sweep_table(s, flags.axis);
    label += " --axis " + flags.axis;
  } else if (command == "oracle") {
    bool passed = false;
    try {
      table = oracle_table(s, passed);
    } catch (const NumericalError& e) {
      err << "oracle failure: " << e.what() << "\n";
      return oracle_failure;
    }
    if (!passed) {
      err << "oracle failure: max relative deviation "
          << format_number(table.summary["max_relative_deviation"].get<double>()) << " exceeds "
          << format_number(oracle_tolerance) << "\n";
      status = oracle_failure;
    }
  }

  const std::string text = render(table, format, label);
  const std::string path = !flags.output.empty() ? flags.output : s.output_path.value_or("");
  if (path.empty()) {
    out << text;
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("output.path", "cannot write \"" + path + "\"");
    file << text;
  }
  return status;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sensitivity toolkit for multi-diamond atom-gradiometer dark-matter detectors", "dmgrad"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", version);

  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"eval-signal", "signal amplitude, exact and small-delay forms"},
      {"mode-function", "tabulate the interrogation-mode functions"},
      {"mode-max", "maximise |Q(omega_T)| for each Q"},
      {"sensitivity", "resonant-mode coupling uncertainty"},
      {"optimize", "optimal fountain height on the baseline"},
      {"sweep", "one-axis parameter sweep"},
      {"oracle", "cross-check closed forms against phase quadrature"},
  };
  const auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config, "scenario JSON file");
    sub->add_option("--output", flags.output, "write output here instead of stdout");
    sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option_function<std::uint64_t>(
        "--seed", [&flags](const std::uint64_t& v) { flags.seed = v, flags.seed_set = true; }, "oracle RNG seed");
  };
  // Common flags are accepted on either side of the subcommand.
  add_common(&app);
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    if (name == "sweep") {
      sub->add_option("--axis", flags.axis, "sweep axis")
          ->required()
          ->check(CLI::IsMember({"omega", "B", "Q", "omega_T"}));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? success : config_error;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  try {
    return execute(command, flags, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return domain_error;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return domain_error;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("dmgrad");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dmgrad::cli
