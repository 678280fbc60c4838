#include "dmgrad/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace dmgrad::cli {

using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

struct UnitInfo {
  Dimension dimension;
  double factor;
};

const std::map<std::string, UnitInfo, std::less<>>& unit_table() {
  static const std::map<std::string, UnitInfo, std::less<>> table = {
      {"m", {Dimension::length, 1.0}},
      {"km", {Dimension::length, 1e3}},
      {"cm", {Dimension::length, 1e-2}},
      {"mm", {Dimension::length, 1e-3}},
      {"s", {Dimension::time, 1.0}},
      {"ms", {Dimension::time, 1e-3}},
      {"us", {Dimension::time, 1e-6}},
      {"ns", {Dimension::time, 1e-9}},
      {"min", {Dimension::time, 60.0}},
      {"h", {Dimension::time, 3600.0}},
      {"rad/s", {Dimension::angular_frequency, 1.0}},
      {"mHz", {Dimension::angular_frequency, 2.0 * pi * 1e-3}},
      {"Hz", {Dimension::angular_frequency, 2.0 * pi}},
      {"kHz", {Dimension::angular_frequency, 2.0 * pi * 1e3}},
      {"MHz", {Dimension::angular_frequency, 2.0 * pi * 1e6}},
      {"GHz", {Dimension::angular_frequency, 2.0 * pi * 1e9}},
      {"THz", {Dimension::angular_frequency, 2.0 * pi * 1e12}},
      {"GeV/cm^3", {Dimension::energy_density, units::joule_per_gev / units::cubic_metre_per_cubic_centimetre}},
      {"GeV/cm3", {Dimension::energy_density, units::joule_per_gev / units::cubic_metre_per_cubic_centimetre}},
      {"J/m^3", {Dimension::energy_density, 1.0}},
      {"J/m3", {Dimension::energy_density, 1.0}},
      {"kg", {Dimension::mass, 1.0}},
      {"g", {Dimension::mass, 1e-3}},
      {"m/s^2", {Dimension::acceleration, 1.0}},
      {"m/s2", {Dimension::acceleration, 1.0}},
      {"m/s", {Dimension::velocity, 1.0}},
      {"cm/s", {Dimension::velocity, 1e-2}},
      {"mm/s", {Dimension::velocity, 1e-3}},
      {"rad", {Dimension::angle, 1.0}},
      {"mrad", {Dimension::angle, 1e-3}},
      {"pi", {Dimension::angle, pi}},
      {"J*s", {Dimension::action, 1.0}},
      {"J s", {Dimension::action, 1.0}},
  };
  return table;
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void require_object(const json& node, const std::string& path) {
  if (!node.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void check_keys(const json& node, const std::string& path, std::initializer_list<std::string_view> allowed) {
  require_object(node, path);
  for (const auto& [key, value] : node.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError(join(path, key), "unknown field");
  }
}

double number(const json& node, const std::string& path) {
  if (!node.is_number()) throw ConfigError(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

int integer(const json& node, const std::string& path) {
  if (!node.is_number_integer()) throw ConfigError(path, "expected an integer");
  return node.get<int>();
}

double positive(double v, const std::string& path) {
  if (!(v > 0.0)) throw ConfigError(path, "must be positive");
  return v;
}

bool is_range(const json& node) { return node.is_object() && node.contains("start"); }

Axis parse_axis(const json& node, Dimension dim, const std::string& path) {
  if (!is_range(node)) return {{parse_quantity(node, dim, path)}, false};
  check_keys(node, path, {"start", "stop", "count", "units", "spacing"});
  if (!node.contains("stop")) throw ConfigError(join(path, "stop"), "missing");
  if (!node.contains("count")) throw ConfigError(join(path, "count"), "missing");
  if (!node.contains("units") || !node["units"].is_string()) throw ConfigError(join(path, "units"), "missing unit string");
  const std::string unit = node["units"].get<std::string>();
  const double start = to_si(number(node["start"], join(path, "start")), unit, dim, join(path, "units"));
  const double stop = to_si(number(node["stop"], join(path, "stop")), unit, dim, join(path, "units"));
  const int count = integer(node["count"], join(path, "count"));
  if (count < 2) throw ConfigError(join(path, "count"), "a range needs count >= 2");
  const std::string spacing = node.value("spacing", "linear");
  Axis axis{{}, true};
  axis.values.reserve(count);
  if (spacing == "linear") {
    for (int i = 0; i < count; ++i) axis.values.push_back(start + (stop - start) * i / (count - 1));
  } else if (spacing == "log") {
    if (!(start > 0.0 && stop > 0.0)) throw ConfigError(path, "log spacing needs positive bounds");
    const double ls = std::log(start), le = std::log(stop);
    for (int i = 0; i < count; ++i) axis.values.push_back(std::exp(ls + (le - ls) * i / (count - 1)));
    axis.values.front() = start;
    axis.values.back() = stop;
  } else {
    throw ConfigError(join(path, "spacing"), "expected \"linear\" or \"log\"");
  }
  if (!(stop > start)) throw ConfigError(path, "range must be increasing (stop > start)");
  return axis;
}

std::vector<int> parse_diamonds(const json& node, const std::string& path, bool& ranged) {
  std::vector<int> out;
  ranged = false;
  if (node.is_number_integer()) {
    out.push_back(node.get<int>());
  } else if (node.is_array()) {
    ranged = node.size() > 1;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(integer(node[i], path + "[" + std::to_string(i) + "]"));
    if (out.empty()) throw ConfigError(path, "empty list");
  } else if (is_range(node)) {
    check_keys(node, path, {"start", "stop", "count"});
    const int start = integer(node["start"], join(path, "start"));
    if (!node.contains("stop")) throw ConfigError(join(path, "stop"), "missing");
    const int stop = integer(node["stop"], join(path, "stop"));
    if (stop <= start) throw ConfigError(path, "range must be increasing (stop > start)");
    int count = stop - start + 1;
    if (node.contains("count")) {
      count = integer(node["count"], join(path, "count"));
      if (count < 2) throw ConfigError(join(path, "count"), "a range needs count >= 2");
      if ((stop - start) % (count - 1) != 0) throw ConfigError(join(path, "count"), "does not give an integer step");
    }
    const int step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) out.push_back(start + i * step);
    ranged = true;
  } else {
    throw ConfigError(path, "expected an integer, a list of integers or a range");
  }
  for (int q : out) {
    if (q < 1) throw ConfigError(path, "diamond count Q must be at least 1");
  }
  return out;
}

void parse_transition(const json& node, Scenario& s) {
  check_keys(node, "transition", {"omega_atom"});
  if (node.contains("omega_atom")) {
    s.omega_atom = positive(parse_quantity(node["omega_atom"], Dimension::angular_frequency, "transition.omega_atom"),
                            "transition.omega_atom");
  }
}

void parse_dm(const json& node, Scenario& s) {
  check_keys(node, "dm", {"omega", "rho_dm", "phi", "eps_bar"});
  if (node.contains("omega")) {
    s.omega = parse_axis(node["omega"], Dimension::angular_frequency, "dm.omega");
    for (double w : s.omega.values) positive(w, "dm.omega");
  }
  if (node.contains("rho_dm")) {
    s.rho_dm = parse_quantity(node["rho_dm"], Dimension::energy_density, "dm.rho_dm");
    if (!(s.rho_dm >= 0.0)) throw ConfigError("dm.rho_dm", "must be non-negative");
  }
  if (node.contains("phi")) s.phi = parse_quantity(node["phi"], Dimension::angle, "dm.phi");
  if (node.contains("eps_bar")) {
    s.eps_bar = number(node["eps_bar"], "dm.eps_bar");
    if (!(s.eps_bar >= 0.0)) throw ConfigError("dm.eps_bar", "must be non-negative");
  }
}

void parse_scheme(const json& node, Scenario& s) {
  check_keys(node, "scheme", {"variant", "Q", "N", "T", "omega_T"});
  if (node.contains("variant")) {
    const auto& v = node["variant"];
    if (v == "minus" || v == "-") {
      s.variant = SchemeVariant::minus;
    } else if (v == "plus" || v == "+") {
      s.variant = SchemeVariant::plus;
    } else {
      throw ConfigError("scheme.variant", "expected \"minus\" or \"plus\"");
    }
  }
  if (node.contains("Q")) s.diamonds = parse_diamonds(node["Q"], "scheme.Q", s.diamonds_ranged);
  if (node.contains("N")) {
    s.momentum_transfers = integer(node["N"], "scheme.N");
    if (s.momentum_transfers < 1) throw ConfigError("scheme.N", "momentum number N must be at least 1");
  }
  if (node.contains("T") && node.contains("omega_T") && !is_range(node["omega_T"])) {
    throw ConfigError("scheme", "set at most one of T and a scalar omega_T");
  }
  if (node.contains("T")) {
    s.interrogation_time = positive(parse_quantity(node["T"], Dimension::time, "scheme.T"), "scheme.T");
  }
  if (node.contains("omega_T")) {
    Axis a = parse_axis(node["omega_T"], Dimension::angle, "scheme.omega_T");
    if (a.ranged) {
      s.omega_t_grid = std::move(a);
    } else {
      s.omega_t = positive(a.values.front(), "scheme.omega_T");
    }
  }
}

void parse_gravity(const json& node, Scenario& s) {
  const std::string path = "geometry.g";
  if (node.is_object() && node.contains("mode")) {
    check_keys(node, path, {"mode", "value", "units"});
    const auto& mode = node["mode"];
    if (mode == "derived") {
      if (node.contains("value")) throw ConfigError(join(path, "value"), "not allowed with mode \"derived\"");
      s.overrides.gravity_mode = GravityMode::derived;
      return;
    }
    if (mode != "user") throw ConfigError(join(path, "mode"), "expected \"user\" or \"derived\"");
    json q = node;
    q.erase("mode");
    s.overrides.g_surface = positive(parse_quantity(q, Dimension::acceleration, path), path);
    s.overrides.gravity_mode = GravityMode::user_supplied;
    return;
  }
  s.overrides.g_surface = positive(parse_quantity(node, Dimension::acceleration, path), path);
}

void parse_geometry(const json& node, Scenario& s) {
  check_keys(node, "geometry", {"B", "h", "v_r", "g"});
  if (node.contains("B")) {
    s.baseline = parse_axis(node["B"], Dimension::length, "geometry.B");
    for (double b : s.baseline.values) positive(b, "geometry.B");
  }
  if (node.contains("h")) {
    if (node["h"] == "optimize") {
      s.height.reset();
    } else {
      s.height = positive(parse_quantity(node["h"], Dimension::length, "geometry.h"), "geometry.h");
    }
  }
  if (node.contains("v_r")) {
    s.recoil_velocity = parse_quantity(node["v_r"], Dimension::velocity, "geometry.v_r");
    if (!(s.recoil_velocity >= 0.0)) throw ConfigError("geometry.v_r", "must be non-negative");
  }
  if (node.contains("g")) parse_gravity(node["g"], s);
}

void parse_constants(const json& node, Scenario& s) {
  check_keys(node, "constants", {"c", "hbar", "planck_mass", "earth_mass", "earth_radius"});
  const auto get = [&](const char* key, Dimension dim, std::optional<double>& target) {
    if (node.contains(key)) target = positive(parse_quantity(node[key], dim, join("constants", key)), join("constants", key));
  };
  get("c", Dimension::velocity, s.overrides.speed_of_light);
  get("hbar", Dimension::action, s.overrides.hbar);
  get("planck_mass", Dimension::mass, s.overrides.planck_mass);
  get("earth_mass", Dimension::mass, s.overrides.earth_mass);
  get("earth_radius", Dimension::length, s.overrides.earth_radius);
}

void parse_noise(const json& node, Scenario& s) {
  check_keys(node, "noise", {"kind", "delta_phi", "n_at", "T_int", "nu", "snr"});
  const std::string kind = node.contains("kind") ? node["kind"].get<std::string>() : "shot";
  if (kind == "fixed") {
    if (!node.contains("delta_phi")) throw ConfigError("noise.delta_phi", "required for kind \"fixed\"");
    for (const char* k : {"n_at", "T_int", "nu"}) {
      if (node.contains(k)) throw ConfigError(join("noise", k), "not used by kind \"fixed\"");
    }
    s.noise = FixedPhaseNoise{positive(parse_quantity(node["delta_phi"], Dimension::angle, "noise.delta_phi"),
                                       "noise.delta_phi")};
  } else if (kind == "shot" || kind == "quantum_enhanced") {
    if (node.contains("delta_phi")) throw ConfigError("noise.delta_phi", "not used by shot-noise kinds");
    double atoms = 1e6;
    double t_int = 1e4;
    if (node.contains("n_at")) {
      atoms = number(node["n_at"], "noise.n_at");
      if (!(atoms >= 1.0)) throw ConfigError("noise.n_at", "atom number must be at least 1");
    }
    if (node.contains("T_int")) t_int = positive(parse_quantity(node["T_int"], Dimension::time, "noise.T_int"), "noise.T_int");
    if (node.contains("nu")) s.repetitions = positive(number(node["nu"], "noise.nu"), "noise.nu");
    if (kind == "shot") {
      s.noise = ShotNoise{atoms, t_int};
    } else {
      s.noise = QuantumEnhancedNoise{atoms, t_int};
    }
  } else {
    throw ConfigError("noise.kind", "expected \"fixed\", \"shot\" or \"quantum_enhanced\"");
  }
  if (node.contains("snr")) s.snr = positive(number(node["snr"], "noise.snr"), "noise.snr");
}

void parse_oracle(const json& node, Scenario& s) {
  check_keys(node, "oracle", {"seed", "samples", "corrupt_closed_form"});
  if (node.contains("seed")) {
    if (!node["seed"].is_number_unsigned()) throw ConfigError("oracle.seed", "expected a non-negative integer");
    s.seed = node["seed"].get<std::uint64_t>();
  }
  if (node.contains("samples")) {
    s.oracle_samples = integer(node["samples"], "oracle.samples");
    if (s.oracle_samples < 1) throw ConfigError("oracle.samples", "must be at least 1");
  }
  if (node.contains("corrupt_closed_form")) s.oracle_corruption = number(node["corrupt_closed_form"], "oracle.corrupt_closed_form");
}

void parse_output(const json& node, Scenario& s) {
  check_keys(node, "output", {"format", "path"});
  if (node.contains("format")) {
    if (node["format"] == "csv") {
      s.format = OutputFormat::csv;
    } else if (node["format"] == "json") {
      s.format = OutputFormat::json;
    } else {
      throw ConfigError("output.format", "expected \"csv\" or \"json\"");
    }
  }
  if (node.contains("path")) {
    if (!node["path"].is_string()) throw ConfigError("output.path", "expected a string");
    s.output_path = node["path"].get<std::string>();
  }
}

}  // namespace

std::string_view to_string(Dimension d) noexcept {
  switch (d) {
    case Dimension::length:
      return "length";
    case Dimension::time:
      return "time";
    case Dimension::angular_frequency:
      return "angular frequency";
    case Dimension::energy_density:
      return "energy density";
    case Dimension::mass:
      return "mass";
    case Dimension::acceleration:
      return "acceleration";
    case Dimension::velocity:
      return "velocity";
    case Dimension::angle:
      return "angle";
    case Dimension::action:
      return "action";
  }
  return "?";
}

double to_si(double value, std::string_view unit, Dimension dimension, const std::string& path) {
  const auto& table = unit_table();
  const auto it = table.find(unit);
  if (it == table.end()) {
    throw ConfigError(path, "unknown unit \"" + std::string(unit) + "\" (expected a " +
                                std::string(to_string(dimension)) + " unit)");
  }
  if (it->second.dimension != dimension) {
    throw ConfigError(path, "unit \"" + std::string(unit) + "\" is a " + std::string(to_string(it->second.dimension)) +
                                " unit, expected " + std::string(to_string(dimension)));
  }
  return value * it->second.factor;
}

double parse_quantity(const json& node, Dimension dimension, const std::string& path) {
  if (node.is_string()) {
    const std::string text = node.get<std::string>();
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(value)) throw ConfigError(path, "cannot parse quantity \"" + text + "\"");
    std::string unit(end);
    const auto first = unit.find_first_not_of(' ');
    if (first == std::string::npos) throw ConfigError(path, "quantity \"" + text + "\" has no unit");
    unit = unit.substr(first);
    return to_si(value, unit, dimension, path);
  }
  if (node.is_number()) throw ConfigError(path, "physical quantities need explicit units");
  check_keys(node, path, {"value", "units"});
  if (!node.contains("value")) throw ConfigError(join(path, "value"), "missing");
  if (!node.contains("units") || !node["units"].is_string()) throw ConfigError(join(path, "units"), "missing unit string");
  return to_si(number(node["value"], join(path, "value")), node["units"].get<std::string>(), dimension,
               join(path, "units"));
}

Scenario parse_scenario(const json& config) {
  check_keys(config, "", {"transition", "dm", "scheme", "geometry", "constants", "noise", "oracle", "output"});
  Scenario s;
  s.height.reset();
  try {
    if (config.contains("transition")) parse_transition(config["transition"], s);
    if (config.contains("dm")) parse_dm(config["dm"], s);
    if (config.contains("scheme")) parse_scheme(config["scheme"], s);
    if (config.contains("geometry")) parse_geometry(config["geometry"], s);
    if (config.contains("constants")) parse_constants(config["constants"], s);
    if (config.contains("noise")) parse_noise(config["noise"], s);
    if (config.contains("oracle")) parse_oracle(config["oracle"], s);
    if (config.contains("output")) parse_output(config["output"], s);
  } catch (const json::exception& e) {
    throw ConfigError("<config>", e.what());
  }
  s.constants = PhysicalConstants(s.overrides);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  return parse_scenario(config);
}

}  // namespace dmgrad::cli
