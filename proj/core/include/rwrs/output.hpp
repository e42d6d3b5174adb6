// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rwrs/config.hpp"

namespace rwrs {

/// One acceptance statistic: passes when lower <= value <= upper.
struct Check {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool passed = false;
};

[[nodiscard]] Check make_check(std::string name, double value, double std_error, double lower,
                               double upper);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool scatter = false;
};

struct Plot {
  std::string file;  // e.g. "slopes.svg"
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

/// Self-contained SVG line/scatter chart.
[[nodiscard]] std::string render_svg(const Plot& plot);

struct CommandResult {
  std::string command;
  std::string raw_csv;  // per-replica rows, sorted by replica
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> estimates;  // extra reported numbers
  std::vector<Plot> plots;

  [[nodiscard]] bool passed() const;
};

/// Canonical config, seed, version and the list of files written alongside.
[[nodiscard]] std::string manifest_json(const ExperimentConfig& config,
                                        const std::vector<std::string>& files);
[[nodiscard]] std::string summary_json(const CommandResult& result);

/// Writes manifest.json, raw.csv, summary.json and plots into `dir`.
void write_artifacts(const CommandResult& result, const ExperimentConfig& config,
                     const std::filesystem::path& dir);

/// RWRS version string baked in at build time.
[[nodiscard]] std::string version();

}  // namespace rwrs
