#pragma once

// Scenario configuration: JSON with an explicit unit string on every
// physical field, converted to SI at ingest.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dmgrad/constants.hpp"
#include "dmgrad/pulse_scheme.hpp"
#include "dmgrad/sensitivity.hpp"

namespace dmgrad::cli {

/// Schema or unit violation; `path` is the dotted field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class Dimension {
  length,
  time,
  angular_frequency,
  energy_density,
  mass,
  acceleration,
  velocity,
  angle,
  action,
};

std::string_view to_string(Dimension dimension) noexcept;

/// Converts `value` in `unit` to SI. Throws ConfigError naming `path` for an
/// unknown unit or one of the wrong dimension.
double to_si(double value, std::string_view unit, Dimension dimension, const std::string& path);

/// Accepts {"value": x, "units": "m"} or the string form "x m".
double parse_quantity(const nlohmann::json& node, Dimension dimension, const std::string& path);

enum class OutputFormat { csv, json };

/// A scalar or a (start, stop, count) range, already in SI.
struct Axis {
  std::vector<double> values;
  bool ranged = false;
};

struct Scenario {
  double omega_atom = 2.7e15;
  Axis omega{{2.0 * 3.141592653589793}, false};
  double rho_dm = energy_density_to_si(0.4);
  double phi = 0.0;
  double eps_bar = 1.0;

  SchemeVariant variant = SchemeVariant::minus;
  std::vector<int> diamonds{1};
  bool diamonds_ranged = false;
  int momentum_transfers = 1;
  std::optional<double> interrogation_time;
  std::optional<double> omega_t;
  Axis omega_t_grid;

  Axis baseline{{100.0}, false};
  std::optional<double> height;  ///< nullopt: optimise
  double recoil_velocity = 0.0;
  ConstantOverrides overrides;
  PhysicalConstants constants;

  NoiseModel noise = ShotNoise{1e6, 1e4};
  std::optional<double> repetitions;  ///< ν, consistency-checked against T_int/T_tot
  double snr = 1.0;

  std::uint64_t seed = 42;
  int oracle_samples = 100;
  double oracle_corruption = 0.0;  ///< test hook: scales the closed form by (1 + x)

  std::optional<OutputFormat> format;
  std::optional<std::string> output_path;
};

Scenario parse_scenario(const nlohmann::json& config);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace dmgrad::cli
