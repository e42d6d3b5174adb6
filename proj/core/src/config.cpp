// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "rwrs/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <variant>

#include "rwrs/error.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

namespace {

using Slot = std::variant<double*, std::int64_t*, std::uint64_t*, unsigned*, std::string*, bool*,
                          std::vector<double>*>;

std::vector<std::pair<std::string_view, Slot>> bind(ExperimentConfig& c) {
  return {
      {"alpha", &c.alpha},
      {"beta", &c.beta},
      {"command", &c.command},
      {"copies", &c.copies},
      {"h_t", &c.h_t},
      {"h_x", &c.h_x},
      {"holder_coarse_log2", &c.holder_coarse_log2},
      {"holder_fine_log2", &c.holder_fine_log2},
      {"horizon", &c.horizon},
      {"m", &c.m},
      {"mc_reps", &c.mc_reps},
      {"n", &c.n},
      {"n_max_log2", &c.n_max_log2},
      {"n_min_log2", &c.n_min_log2},
      {"nu", &c.nu},
      {"out", &c.out},
      {"pareto_a1", &c.pareto_a1},
      {"pareto_a2", &c.pareto_a2},
      {"replicas", &c.replicas},
      {"scenery", &c.scenery},
      {"seed", &c.seed},
      {"sigma", &c.sigma},
      {"strict", &c.strict},
      {"theta", &c.theta},
      {"times", &c.times},
      {"tolerance", &c.tolerance},
      {"u_grid", &c.u_grid},
      {"workers", &c.workers},
  };
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* type) {
  throw ConfigError("key '" + std::string(key) + "': cannot parse '" + std::string(value) +
                    "' as " + type);
}

template <class T>
T parse_number(std::string_view key, std::string_view value, const char* type) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) bad_value(key, value, type);
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  const double x = parse_number<double>(key, value, "real");
  if (!std::isfinite(x)) bad_value(key, value, "finite real");
  return x;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_double(xs[i]);
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

void ExperimentConfig::set(std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  for (auto& [name, slot] : bind(*this)) {
    if (name != key) continue;
    std::visit(
        [&](auto* p) {
          using T = std::remove_pointer_t<decltype(p)>;
          if constexpr (std::is_same_v<T, double>) {
            *p = parse_real(key, value);
          } else if constexpr (std::is_same_v<T, std::int64_t>) {
            *p = parse_number<std::int64_t>(key, value, "integer");
          } else if constexpr (std::is_same_v<T, std::uint64_t>) {
            *p = parse_number<std::uint64_t>(key, value, "unsigned 64-bit integer");
          } else if constexpr (std::is_same_v<T, unsigned>) {
            *p = parse_number<unsigned>(key, value, "unsigned integer");
          } else if constexpr (std::is_same_v<T, bool>) {
            if (value == "true" || value == "1" || value == "yes") *p = true;
            else if (value == "false" || value == "0" || value == "no") *p = false;
            else bad_value(key, value, "boolean");
          } else if constexpr (std::is_same_v<T, std::string>) {
            *p = std::string(value);
          } else {
            p->clear();
            std::string_view rest = value;
            while (!rest.empty()) {
              const auto comma = rest.find(',');
              p->push_back(parse_real(key, trim(rest.substr(0, comma))));
              if (comma == std::string_view::npos) break;
              rest = rest.substr(comma + 1);
            }
          }
        },
        slot);
    return;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

std::map<std::string, std::string> ExperimentConfig::entries() const {
  ExperimentConfig copy = *this;
  std::map<std::string, std::string> out;
  for (auto& [name, slot] : bind(copy)) {
    out[std::string(name)] = std::visit(
        [](auto* p) -> std::string {
          using T = std::remove_pointer_t<decltype(p)>;
          if constexpr (std::is_same_v<T, double>) return format_double(*p);
          else if constexpr (std::is_same_v<T, bool>) return *p ? "true" : "false";
          else if constexpr (std::is_same_v<T, std::string>) return *p;
          else if constexpr (std::is_same_v<T, std::vector<double>>) return join(*p);
          else return std::to_string(*p);
        },
        slot);
  }
  return out;
}

std::string ExperimentConfig::canonical() const {
  std::string s;
  for (const auto& [k, v] : entries()) s += k + " = " + v + "\n";
  return s;
}

SchemaConfig ExperimentConfig::schema() const {
  SchemaConfig s;
  s.alpha = alpha;
  s.beta = beta;
  s.sigma = sigma;
  s.nu = nu;
  if (scenery == "stable") s.scenery_kind = SceneryKind::ExactStable;
  else if (scenery == "pareto") s.scenery_kind = SceneryKind::TwoSidedPareto;
  else if (scenery == "zero") s.scenery_kind = SceneryKind::Zero;
  else throw ConfigError("scenery must be one of stable, pareto, zero");
  s.pareto_a1 = pareto_a1;
  s.pareto_a2 = pareto_a2;
  s.n = n;
  s.copies = copies;
  s.times = times;
  s.master_seed = seed;
  return s;
}

LimitConfig ExperimentConfig::limit() const {
  const SchemaConfig s = schema();
  LimitConfig l;
  l.walk_limit = s.walk_law().limit_law();
  l.scenery = s.scenery_law().limit_law();
  l.horizon = horizon;
  l.time_step = h_t;
  l.bin_width = h_x;
  l.copies = m;
  l.master_seed = seed;
  return l;
}

void ExperimentConfig::validate() const {
  require(std::find(std::begin(kCommands), std::end(kCommands), command) != std::end(kCommands),
          "unknown command '" + command + "'");
  require(replicas >= 1, "replicas must be >= 1");
  require(!out.empty(), "out must be a directory path");
  try {
    if (command == "feasible-sweep") return;
    const SchemaConfig s = schema();
    s.validate();
    if (command == "walk-scaling") {
      require(n_min_log2 >= 1 && n_max_log2 <= 40 && n_max_log2 - n_min_log2 >= 2,
              "walk-scaling needs 1 <= n_min_log2 and n_max_log2 - n_min_log2 >= 2");
      require(tolerance > 0.0, "tolerance must be positive");
      return;
    }
    if (command == "schema-cf") {
      require(theta.size() >= 1, "schema-cf needs at least one theta");
      require(times.size() == 1, "schema-cf evaluates a single time");
      require(mc_reps >= 2, "mc_reps must be >= 2");
    }
    LimitConfig l = limit();
    if (command == "schema-cf") l.horizon = times.back();
    l.validate();
    if (command == "limit-selfsim") {
      require(replicas >= 10, "limit-selfsim needs at least 10 replicas");
      require(l.steps() % 4 == 0, "limit-selfsim needs a step count divisible by 4");
    }
    if (command == "tail-check" || command == "holder-check")
      require(beta < 2.0, "tail and Holder checks require 0 < beta < 2");
    if (command == "holder-check") {
      require(beta < 1.0 || nu == 0.0, "Holder check with beta >= 1 requires nu = 0");
      require(holder_coarse_log2 >= 2 && holder_fine_log2 > holder_coarse_log2,
              "holder grids need 2 <= holder_coarse_log2 < holder_fine_log2");
      const double steps = horizon * std::ldexp(1.0, static_cast<int>(holder_fine_log2));
      require(std::abs(steps - std::round(steps)) < 1e-9,
              "horizon must be a multiple of the fine Holder grid");
      const double ratio = l.horizon / static_cast<double>(l.steps());
      const double per = std::ldexp(1.0, -static_cast<int>(holder_fine_log2)) / ratio;
      require(std::abs(per - std::round(per)) < 1e-9 && per >= 1.0,
              "h_t must divide the fine Holder grid spacing");
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    c.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_environment(ExperimentConfig& config) {
  const std::pair<const char*, const char*> vars[] = {
      {"RWRS_SEED", "seed"}, {"RWRS_WORKERS", "workers"}, {"RWRS_OUT", "out"}, {"RWRS_STRICT", "strict"}};
  for (const auto& [env, key] : vars)
    if (const char* v = std::getenv(env); v != nullptr && *v != '\0') config.set(key, v);
}

}  // namespace rwrs
