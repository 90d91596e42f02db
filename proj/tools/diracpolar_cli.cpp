// Command-line front end: load scenario files (or presets), run the identity
// and invariance suites, emit machine- and human-readable reports.
//
// Exit codes: 0 success, 1 residual failure, 2 input/validation error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "diracpolar/verify.hpp"

namespace {

using namespace diracpolar;

void emit(const ojson& rep, const std::string& json_path) {
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw InvalidScenario("cannot open report path '" + json_path + "'");
    write_json(rep, out);
    out << "\n";
  }
  write_json(rep, std::cout);
  std::cout << "\n";
}

int finish(const ojson& rep, const std::string& json_path, bool pass) {
  emit(rep, json_path);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar Dirac field toolkit: identity suites, Lie-invariance "
               "diagnostics and the spherical no-go certificate"};
  app.require_subcommand(1);

  std::string scenario_path, json_path, killing_name;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_samples;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", scenario_path, "scenario file or preset name")->required();
    cmd->add_option("--json", json_path, "write the JSON report to this path");
    cmd->add_option("--tolerance", tolerance, "override every check tolerance");
    cmd->add_option("--seed", seed, "override the random-spinor seed");
    cmd->add_option("--samples", n_samples, "number of random spinors for the property suites");
  };

  auto* verify = app.add_subcommand("verify", "run the identity suites");
  add_common(verify);
  auto* invariance =
      app.add_subcommand("invariance", "Lie reports along a Killing field");
  add_common(invariance);
  invariance->add_option("--killing", killing_name, "Killing field name from the chart presets");
  auto* nogo = app.add_subcommand("nogo", "spherical-symmetry no-go certificate");
  add_common(nogo);

  CLI11_PARSE(app, argc, argv);

  try {
    Scenario s = load_scenario(scenario_path);
    if (seed) s.seed = *seed;
    if (n_samples) s.random_spinors = *n_samples;
    if (tolerance && !verify->parsed()) s.tolerance = *tolerance;

    if (verify->parsed()) {
      const ojson rep = run_verify(s, tolerance);
      return finish(rep, json_path, rep.at("pass").get<bool>());
    }
    if (invariance->parsed()) {
      if (!killing_name.empty()) {
        s.killing_name = killing_name;
        s.killing_custom.reset();
      }
      const ojson rep = run_invariance(s, s.killing());
      return finish(rep, json_path, rep.at("pass").get<bool>());
    }
    if (nogo->parsed()) {
      if (!s.spherical)
        throw InvalidScenario("nogo needs a spherical scenario (A, B, C, eta, ... of r)");
      const ojson rep = run_nogo(*s.spherical);
      return finish(rep, json_path, rep.at("established").get<bool>());
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
