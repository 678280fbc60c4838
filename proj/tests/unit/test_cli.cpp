#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "approx.hpp"
#include "dmgrad/cli.hpp"
#include "dmgrad/errors.hpp"
#include "dmgrad/scenario.hpp"

using namespace dmgrad;
using namespace dmgrad::cli;
using nlohmann::json;
using dmgrad::test::rel_diff;

namespace {

const std::string data_dir = DMGRAD_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_config(const std::string& name, const json& doc) {
  const auto path = std::filesystem::temp_directory_path() / ("dmgrad_test_" + name + ".json");
  std::ofstream(path) << doc.dump();
  return path;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("unit conversion at ingest") {
  CHECK(to_si(1.5, "km", Dimension::length, "x") == 1500.0);
  CHECK(to_si(2.0, "ms", Dimension::time, "x") == 2e-3);
  CHECK(rel_diff(to_si(1.0, "Hz", Dimension::angular_frequency, "x"), 2.0 * 3.141592653589793) < 1e-16);
  CHECK(rel_diff(to_si(0.4, "GeV/cm^3", Dimension::energy_density, "x"), 6.408706536e-5) < 1e-15);
  CHECK(to_si(3.0, "rad/s", Dimension::angular_frequency, "x") == 3.0);
  CHECK_THROWS_AS(to_si(1.0, "bananas", Dimension::length, "geometry.B"), ConfigError);
  CHECK_THROWS_AS(to_si(1.0, "s", Dimension::length, "geometry.B"), ConfigError);

  CHECK(parse_quantity(json("100 m"), Dimension::length, "x") == 100.0);
  CHECK(parse_quantity(json{{"value", 2.0}, {"units", "km"}}, Dimension::length, "x") == 2000.0);
  CHECK_THROWS_AS(parse_quantity(json(100.0), Dimension::length, "x"), ConfigError);
  CHECK_THROWS_AS(parse_quantity(json("100"), Dimension::length, "x"), ConfigError);
}

TEST_CASE("energy density round trip through the config boundary") {
  dmgrad::test::Draw draw(51);
  for (int i = 0; i < 100; ++i) {
    const double gev = draw.log_uniform(1e-3, 1e3);
    const auto s = parse_scenario(json{{"dm", {{"rho_dm", {{"value", gev}, {"units", "GeV/cm^3"}}}}}});
    CHECK(rel_diff(energy_density_from_si(s.rho_dm), gev) < 4e-16);
  }
}

TEST_CASE("scenario errors carry the field path") {
  try {
    load_scenario(data_dir + "/bad_unit.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.path() == "geometry.B");
    CHECK(std::string(e.what()).find("bananas") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_scenario(json{{"geometry", {{"Bee", "1 m"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_scenario(json{{"noise", {{"kind", "pink"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_scenario(json{{"scheme", {{"variant", "x"}}}}), ConfigError);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"sensitivity", "--config", data_dir + "/bad_unit.json"}).code == config_error);
  CHECK(invoke({"sensitivity", "--config", "/nonexistent/scenario.json"}).code == config_error);
  CHECK(invoke({"frobnicate"}).code == config_error);
  CHECK(invoke({}).code == config_error);
  CHECK(invoke({"sweep"}).code == config_error);

  const auto tall = write_config("tall", {{"geometry", {{"B", "10 m"}, {"h", "20 m"}}}});
  const auto r = invoke({"sensitivity", "--config", tall.string()});
  CHECK(r.code == domain_error);
  CHECK(r.err.find("below the baseline") != std::string::npos);

  const auto corrupt = write_config("corrupt", {{"oracle", {{"samples", 5}, {"corrupt_closed_form", 1e-6}}}});
  CHECK(invoke({"oracle", "--config", corrupt.string()}).code == oracle_failure);

  CHECK(invoke({"oracle", "--config", data_dir + "/oracle_500.json"}).code == success);
}

TEST_CASE("100 bananas is a config error with the field named") {
  const auto r = invoke({"sensitivity", "--config", data_dir + "/bad_unit.json"});
  CHECK(r.code == 2);
  CHECK(r.err.find("geometry.B") != std::string::npos);
}

TEST_CASE("optimize reports the one-fifth fraction for shot noise") {
  const auto r = invoke({"optimize", "--config", data_dir + "/resonant_shot.json", "--format", "json"});
  REQUIRE(r.code == success);
  const auto doc = json::parse(r.out);
  CHECK(doc["tool"] == "dmgrad");
  CHECK(doc["command"] == "optimize");
  const auto& row = doc["results"].at(0);
  CHECK(std::abs(row["fraction"].get<double>() - 0.2) < 1e-8);
  CHECK(row["converged"].get<bool>());
  CHECK(row["noise"] == "shot");
}

TEST_CASE("csv layout") {
  const auto r = invoke({"sweep", "--axis", "B", "--config", data_dir + "/baseline_sweep.json"});
  REQUIRE(r.code == success);
  CHECK(r.out.find('\r') == std::string::npos);
  const auto lines = csv_lines(r.out);
  REQUIRE(lines.size() == 3 + 7);
  CHECK(lines[0].rfind("# dmgrad ", 0) == 0);
  CHECK(lines[1].rfind("# ", 0) == 0);
  CHECK(lines[2] == "B,h,omega,Q,N,scheme,delta_eps,eps_5sigma");
  const std::string after_b = lines[3].substr(lines[3].find(',') + 1);
  CHECK(std::abs(std::stod(after_b.substr(0, after_b.find(','))) / 10.0 - 1.0 / 3.0) < 1e-8);
  // 17 significant digits survive a round trip
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("baseline sweep halves as B^(-3/2)") {
  const auto r = invoke({"sweep", "--axis", "B", "--config", data_dir + "/baseline_sweep.json", "--format", "json"});
  REQUIRE(r.code == success);
  const auto rows = json::parse(r.out)["results"];
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = rows[i]["delta_eps"].get<double>() / rows[i - 1]["delta_eps"].get<double>();
    const double b_ratio = rows[i]["B"].get<double>() / rows[i - 1]["B"].get<double>();
    CHECK(rel_diff(ratio, std::pow(b_ratio, -1.5)) < 1e-9);
  }
}

TEST_CASE("flags may precede the subcommand") {
  const auto a = invoke({"--config", data_dir + "/mode_maxima.json", "mode-max"});
  const auto b = invoke({"mode-max", "--config", data_dir + "/mode_maxima.json"});
  CHECK(a.code == success);
  CHECK(a.out == b.out);
}

TEST_CASE("sweep axis must carry the range") {
  CHECK(invoke({"sweep", "--axis", "omega", "--config", data_dir + "/baseline_sweep.json"}).code == config_error);
  CHECK(invoke({"sweep", "--axis", "Q", "--config", data_dir + "/mode_maxima.json"}).code == success);
  CHECK(invoke({"sweep", "--axis", "omega_T", "--config", data_dir + "/mode_function_grid.json"}).code == success);
}

TEST_CASE("repetition count must agree with the integration time") {
  const auto p = write_config("nu", {{"noise", {{"kind", "shot"}, {"n_at", 1e6}, {"T_int", "1e4 s"}, {"nu", 7}}}});
  const auto r = invoke({"sensitivity", "--config", p.string()});
  CHECK(r.code == config_error);
  CHECK(r.err.find("noise.nu") != std::string::npos);
}

TEST_CASE("small-delay column is empty outside its validity range") {
  const auto p = write_config("lmt", {{"dm", {{"omega", "1 MHz"}}}, {"geometry", {{"B", "1000 m"}, {"h", "10 m"}}}});
  const auto r = invoke({"eval-signal", "--config", p.string(), "--format", "json"});
  REQUIRE(r.code == success);
  const auto row = json::parse(r.out)["results"].at(0);
  CHECK(row["phi_s_lmt"].is_null());
  CHECK(row["lmt_note"].get<std::string>().find("omega*tau_L") != std::string::npos);
  CHECK(row["phi_s_exact"].get<double>() > 0.0);
}

TEST_CASE("output is deterministic and honours --output and --seed") {
  const auto path = std::filesystem::temp_directory_path() / "dmgrad_test_oracle.csv";
  const std::vector<std::string> args = {"oracle", "--config", data_dir + "/oracle_500.json", "--format", "csv",
                                         "--seed", "7", "--output", path.string()};
  REQUIRE(invoke(args).code == success);
  std::ifstream first_file(path);
  const std::string first((std::istreambuf_iterator<char>(first_file)), {});
  REQUIRE(invoke(args).code == success);
  std::ifstream second_file(path);
  const std::string second((std::istreambuf_iterator<char>(second_file)), {});
  CHECK(!first.empty());
  CHECK(first == second);

  auto other = args;
  other[6] = "8";
  REQUIRE(invoke(other).code == success);
  std::ifstream third_file(path);
  const std::string third((std::istreambuf_iterator<char>(third_file)), {});
  CHECK(third != first);
}
