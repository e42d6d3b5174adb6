// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0
//
// rwrs <command> [--config PATH] [--seed U64] [--workers N] [--out DIR]
//      [--strict] [--set key=value ...]
//
// Exit status: 0 pass (or any outcome without --strict), 1 config error,
// 2 acceptance failure under --strict, 3 runtime failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rwrs/config.hpp"
#include "rwrs/error.hpp"
#include "rwrs/experiments.hpp"
#include "rwrs/output.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Random walks in random scenery: Monte Carlo checks"};
  app.set_version_flag("--version", rwrs::version());

  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  bool strict = false;
  std::vector<std::string> sets;

  std::vector<std::string> names(std::begin(rwrs::kCommands), std::end(rwrs::kCommands));
  app.add_option("command", command, "Experiment to run")->required()->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "Flat key = value config file (env RWRS_CONFIG)");
  app.add_option("--seed", seed, "Master seed (env RWRS_SEED)");
  app.add_option("--workers", workers, "Worker threads, 0 = all cores (env RWRS_WORKERS)");
  app.add_option("--out", out, "Output directory (env RWRS_OUT)");
  app.add_flag("--strict", strict, "Exit 2 when an acceptance statistic fails (env RWRS_STRICT)");
  app.add_option("--set", sets, "Override any config key: --set key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  rwrs::ExperimentConfig config;
  try {
    if (config_path.empty())
      if (const char* env = std::getenv("RWRS_CONFIG"); env != nullptr) config_path = env;
    if (!config_path.empty()) config = rwrs::load_config(config_path);
    rwrs::apply_environment(config);
    config.command = command;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw rwrs::ConfigError("--set expects key=value, got '" + s + "'");
      config.set(s.substr(0, eq), s.substr(eq + 1));
    }
    if (seed) config.seed = *seed;
    if (workers) config.workers = *workers;
    if (out) config.out = *out;
    if (strict) config.strict = true;
    config.validate();
  } catch (const rwrs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  try {
    const rwrs::CommandResult result = rwrs::run_command(config);
    rwrs::write_artifacts(result, config, config.out);
    for (const auto& c : result.checks)
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " = " << c.value << " in ["
                << c.lower << ", " << c.upper << "]\n";
    std::cout << "artifacts: " << config.out << '\n';
    if (config.strict && !result.passed()) return 2;
  } catch (const rwrs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
