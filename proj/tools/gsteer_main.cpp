/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gsteer/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitIoError = 2;

std::string flag_name(const std::string& key) {
  std::string flag = "--" + key;
  for (auto& ch : flag) {
    if (ch == '_') ch = '-';
  }
  if (flag == "--" + key) {
    return flag;
  }
  return flag + ",--" + key;  // kebab flag plus the underscore alias
}

int run_check(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "gsteer: cannot open '" << path << "'\n";
    return kExitIoError;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string diagnostic;
  if (gsteer::io::check_report(buffer.str(), &diagnostic)) {
    std::cout << "check: OK (" << path << " reproduces bit-for-bit)\n";
    return kExitOk;
  }
  std::cerr << "check: FAILED for " << path << ": " << diagnostic << "\n";
  return kExitDomainError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-setting steering predictions for weakly coupled mediators"};
  app.set_version_flag("--version", gsteer::io::kToolVersion);

  std::string check_path;
  app.add_option("--check", check_path,
                 "re-run the scenario stored in a JSON report and verify the "
                 "results reproduce bit-for-bit");

  struct ScenarioState {
    CLI::App* cmd = nullptr;
    std::map<std::string, std::string> values;
    std::string config_file;
    std::string out_path;
    std::string format = "json";
  };
  std::map<std::string, ScenarioState> states;

  for (const auto& name : gsteer::io::scenario_names()) {
    auto& state = states[name];
    state.cmd = app.add_subcommand(name, "run the '" + name + "' scenario");
    for (const auto& spec : gsteer::io::scenario_schema(name)) {
      std::string doc = spec.doc;
      if (!spec.fallback.empty()) {
        doc += " [default: " + spec.fallback + "]";
      }
      state.cmd->add_option(flag_name(spec.key), state.values[spec.key], doc);
    }
    state.cmd->add_option("--config", state.config_file,
                          "flat 'key = value' parameter file ('#' comments)");
    state.cmd->add_option("--out", state.out_path,
                          "output file (relative paths resolve against $" +
                              std::string(gsteer::io::kOutputDirEnv) + ")");
    state.cmd->add_option("--format", state.format, "json | csv | svg")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDomainError;
  }

  if (!check_path.empty()) {
    return run_check(check_path);
  }

  ScenarioState* active = nullptr;
  std::string scenario;
  for (auto& [name, state] : states) {
    if (state.cmd->parsed()) {
      active = &state;
      scenario = name;
      break;
    }
  }
  if (active == nullptr) {
    std::cerr << app.help() << "\n";
    return kExitDomainError;
  }

  try {
    gsteer::io::RunConfig config;
    config.scenario = scenario;
    config.output_path = active->out_path;
    config.format = active->format;
    if (!active->config_file.empty()) {
      config.params = gsteer::io::parse_config_file(active->config_file);
    }
    for (const auto& [key, value] : active->values) {
      if (!value.empty()) {
        config.params[key] = value;  // explicit flags win over the config file
      }
    }
    const auto report = gsteer::io::run_scenario(config);
    gsteer::io::write_report(report, config);
    return kExitOk;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "gsteer: I/O error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "gsteer: " << e.what() << "\n";
    return kExitDomainError;
  }
}
