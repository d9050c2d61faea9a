// SPDX-License-Identifier: Apache-2.0
//
// icecav: command-line front end for the coupled membrane/cavity analyses.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "icecav/commands.hpp"
#include "icecav/errors.hpp"

namespace {

using icecav::ConfigError;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<int> parse_int_list(const std::string& text, std::size_t count, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": '" + item + "' is not an integer");
    }
  }
  if (out.size() != count) {
    throw ConfigError(std::string(flag) + " expects " + std::to_string(count) +
                      " comma-separated integers");
  }
  return out;
}

struct Options {
  std::optional<std::string> preset;
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::string> truncation;
  std::optional<double> time_window;
  std::optional<int> samples;
  bool strict = false;
};

icecav::RunConfig resolve(const Options& o) {
  if (o.preset && o.config) throw ConfigError("give either --preset or --config, not both");
  icecav::RunConfig c;
  if (o.config) {
    std::vector<std::string> warnings;
    c = icecav::load_config(*o.config, o.strict, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  } else {
    c = icecav::config_from_preset(o.preset.value_or("gecko"));
  }
  if (o.out) c.output_dir = *o.out;
  if (o.truncation) {
    const auto t = parse_int_list(*o.truncation, 5, "--truncation");
    c.truncation = {t[0], t[1], t[2], t[3], t[4]};
  }
  if (o.time_window) c.time_window = *o.time_window;
  if (o.samples) c.time_samples = *o.samples;
  c.validate();
  return c;
}

void print(const icecav::CommandOutput& out) {
  std::cout << out.summary;
  for (const auto& f : out.files) std::cout << "wrote " << f.string() << "\n";
}

int fail(const char* kind, const std::string& message, int code) {
  nlohmann::json record{{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << record.dump() << "\n";
  return code;
}

const char* numerical_kind(const icecav::NumericalError& e) {
  if (dynamic_cast<const icecav::ResonanceError*>(&e)) return "resonance";
  if (dynamic_cast<const icecav::ConvergenceError*>(&e)) return "convergence";
  if (dynamic_cast<const icecav::GridResolutionError*>(&e)) return "grid_resolution";
  if (dynamic_cast<const icecav::DomainError*>(&e)) return "domain";
  return "numerical";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Internally coupled ears: membrane/cavity modal analyses"};
  app.set_version_flag("--version", std::string(icecav::kVersion));
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--preset", opt.preset, "Named parameter set (gecko, varanus)");
    sub->add_option("--config", opt.config, "Configuration file (dotted.key = value)");
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--truncation", opt.truncation, "n1_max,n2_max,n3_max,k1_max,k2_max");
    sub->add_option("--time-window", opt.time_window, "Simulated time span in s");
    sub->add_option("--samples", opt.samples, "Number of time samples");
    sub->add_flag("--strict", opt.strict, "Treat unknown configuration keys as errors");
  };

  auto* modes = app.add_subcommand("modes", "Cavity and membrane mode tables");
  add_common(modes);

  auto* simulate = app.add_subcommand("simulate", "First-order modal amplitude time series");
  add_common(simulate);
  std::string method = "closed";
  simulate->add_option("--method", method, "closed or picard")
      ->check(CLI::IsMember({"closed", "picard"}));

  auto* coupling = app.add_subcommand("coupling", "Spinning-weighted coupling census per n3");
  add_common(coupling);
  int n3_min = 1;
  int n3_max = 4;
  coupling->add_option("--n3-min", n3_min, "First axial index");
  coupling->add_option("--n3-max", n3_max, "Last axial index");

  auto* transient = app.add_subcommand("transient", "Start-up transient of one membrane mode");
  add_common(transient);
  std::string mode = "1,1";
  transient->add_option("--mode", mode, "Membrane mode k1,k2");

  auto* oracle = app.add_subcommand("oracle1d", "1-D boundary-source solver cross-check");
  std::uint64_t seed = 0;
  int cases = 20;
  std::string oracle_out = ".";
  oracle->add_option("--seed", seed, "First random seed");
  oracle->add_option("--cases", cases, "Number of random problems");
  oracle->add_option("--out", oracle_out, "Output directory");

  auto* report = app.add_subcommand("report", "Relaxation, dominance and resonance summary");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fail("usage", e.what(), kExitConfig);
  }

  try {
    if (oracle->parsed()) {
      const auto rep = icecav::cmd_oracle1d(seed, cases, oracle_out);
      print(rep.output);
      return rep.passed ? 0 : kExitNumerical;
    }
    const icecav::RunConfig config = resolve(opt);
    if (modes->parsed()) {
      print(icecav::cmd_modes(config));
    } else if (simulate->parsed()) {
      print(icecav::cmd_simulate(config, method == "picard" ? icecav::SimulationMethod::picard
                                                            : icecav::SimulationMethod::closed_form));
    } else if (coupling->parsed()) {
      print(icecav::cmd_coupling(config, n3_min, n3_max));
    } else if (transient->parsed()) {
      const auto k = parse_int_list(mode, 2, "--mode");
      print(icecav::cmd_transient(config, k[0], k[1]));
    } else if (report->parsed()) {
      print(icecav::cmd_report(config));
    }
  } catch (const ConfigError& e) {
    return fail("config", e.what(), kExitConfig);
  } catch (const icecav::NumericalError& e) {
    return fail(numerical_kind(e), e.what(), kExitNumerical);
  } catch (const std::exception& e) {
    return fail("numerical", e.what(), kExitNumerical);
  }
  return 0;
}
