// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rwrs/limit_process.hpp"
#include "rwrs/rwrs.hpp"

namespace rwrs {

inline constexpr std::string_view kCommands[] = {"walk-scaling", "schema-cf",   "limit-selfsim",
                                                 "tail-check",   "holder-check", "feasible-sweep"};

/// Everything a CLI run depends on. Parsed from a flat `key = value` file;
/// unknown keys and malformed values are ConfigErrors.
struct ExperimentConfig {
  std::string command = "walk-scaling";

  // Schema / model.
  double alpha = 2.0;
  double beta = 2.0;
  double sigma = 1.0;
  double nu = 0.0;
  std::string scenery = "stable";  // stable | pareto | zero
  double pareto_a1 = 0.5;
  double pareto_a2 = 0.5;
  std::int64_t n = 4096;
  std::int64_t copies = 0;  // c_n; 0 -> ceil(sqrt(n))
  std::vector<double> times{1.0};
  std::vector<double> theta{0.25, 0.5, 1.0};

  // Limit-process grids.
  double horizon = 1.0;
  double h_t = 0.0;  // 0 -> horizon / 2^14
  double h_x = 0.0;  // 0 -> 2 h_t^{1/alpha}
  std::int64_t m = 64;
  std::int64_t mc_reps = 10000;

  // Command specifics.
  std::int64_t n_min_log2 = 8;
  std::int64_t n_max_log2 = 14;
  std::vector<double> u_grid;  // empty -> upper quantiles
  std::int64_t holder_coarse_log2 = 8;
  std::int64_t holder_fine_log2 = 10;
  double tolerance = 0.05;

  // Run control.
  std::int64_t replicas = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out = "out";
  bool strict = false;

  /// Applies one assignment; the value is parsed according to the key type.
  void set(std::string_view key, std::string_view value);
  /// Checks every module precondition the command relies on.
  void validate() const;
  /// Sorted `key = value` lines; parse(canonical()) reproduces the config.
  [[nodiscard]] std::string canonical() const;
  [[nodiscard]] std::map<std::string, std::string> entries() const;

  [[nodiscard]] SchemaConfig schema() const;
  /// Limit-process description with Y = walk limit law, W = scenery limit law.
  [[nodiscard]] LimitConfig limit() const;
};

[[nodiscard]] ExperimentConfig parse_config(std::string_view text);
[[nodiscard]] ExperimentConfig load_config(const std::string& path);

/// RWRS_SEED, RWRS_WORKERS, RWRS_OUT, RWRS_STRICT.
void apply_environment(ExperimentConfig& config);

}  // namespace rwrs
