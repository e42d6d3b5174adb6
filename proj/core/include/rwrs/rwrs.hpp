// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rwrs/scenery.hpp"
#include "rwrs/stable.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

/// Z_m = sum_{k<=m} xi_{S_k} at integer times 0..n.
class RwrsPath {
 public:
  explicit RwrsPath(std::vector<double> values) : values_(std::move(values)) {}

  [[nodiscard]] std::int64_t horizon() const noexcept {
    return static_cast<std::int64_t>(values_.size()) - 1;
  }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  /// Z_s = Z_[s] + (s - [s]) (Z_[s]+1 - Z_[s]).
  [[nodiscard]] double at(double s) const;

 private:
  std::vector<double> values_;
};

/// Path-sum form; realizes (and caches) exactly the visited sites.
[[nodiscard]] RwrsPath build_rwrs(const WalkPath& walk, Scenery& scenery);

/// Z_s of the walk in the scenery, linearly interpolated.
[[nodiscard]] double rwrs_value(const WalkPath& walk, Scenery& scenery, double s);
/// sum_x N_m(x) xi_x, the local-time form of Z_m.
[[nodiscard]] double rwrs_local_time_sum(const WalkPath& walk, Scenery& scenery, std::int64_t m);

/// delta = 1 - 1/alpha + 1/(alpha beta), alpha in (1,2], beta in (0,2].
[[nodiscard]] double delta_exponent(double alpha, double beta);

enum class FeasibleBranch { BetaBelowOne, BetaOne, BetaAboveOne };

struct Feasibility {
  FeasibleBranch branch;
  double hurst = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_closed = false;
  bool upper_closed = false;

  [[nodiscard]] std::string label() const;
};

/// Classifies H = delta(alpha, beta) against the feasible self-similarity
/// range for index beta:
///   beta < 1:  [(beta+1)/(2 beta), 1/beta)
///   beta = 1:  {1}
///   beta > 1:  (1/beta, (beta+1)/(2 beta)]
/// Throws std::logic_error if H falls outside its branch.
[[nodiscard]] Feasibility feasible_pair(double alpha, double beta);

/// D_n(t) = n^{-delta} Z_{nt}; delta from the walk law and scenery indices.
[[nodiscard]] double rescaled_rwrs(const WalkPath& walk, Scenery& scenery, double n, double t);

/// One random-rewards experiment.
struct SchemaConfig {
  double alpha = 2.0;
  double beta = 2.0;
  double sigma = 1.0;
  double nu = 0.0;
  SceneryKind scenery_kind = SceneryKind::ExactStable;
  double pareto_a1 = 0.5;
  double pareto_a2 = 0.5;
  std::int64_t n = 4096;
  /// c_n; 0 selects ceil(sqrt(n)).
  std::int64_t copies = 0;
  std::vector<double> times{1.0};
  std::uint64_t master_seed = 1;

  void validate() const;
  [[nodiscard]] double delta() const { return delta_exponent(alpha, beta); }
  [[nodiscard]] std::int64_t copy_count() const;
  /// ceil(n * max t): the walk length needed for every time in the grid.
  [[nodiscard]] std::int64_t walk_length() const;
  [[nodiscard]] WalkIncrementLaw walk_law() const;
  [[nodiscard]] SceneryLaw scenery_law() const;
};

/// Evaluates one rescaled walk in scenery D_n(t_j) for every grid time;
/// holds reusable buffers.
class SchemaEvaluator {
 public:
  explicit SchemaEvaluator(const SchemaConfig& config);

  /// D_n^{(copy)}(t_j) for the given replica; deterministic in its arguments.
  void rescaled_copy(std::uint64_t replica, std::uint64_t copy, std::span<double> out);
  /// G_n(t_j) = c_n^{-1/beta} sum_i D_n^{(i)}(t_j), copies summed in order.
  [[nodiscard]] std::vector<double> sample(std::uint64_t replica);

 private:
  SchemaConfig config_;
  WalkIncrementLaw walk_law_;
  SceneryLaw scenery_law_;
  double norm_ = 1.0;
  std::int64_t length_ = 0;
  std::vector<std::int64_t> needed_;  // integer times whose Z is required
  std::vector<std::int64_t> positions_;
  std::vector<double> xi_;
  std::vector<unsigned char> visited_;
  std::vector<double> z_;
};

[[nodiscard]] std::vector<double> sample_schema(const SchemaConfig& config, std::uint64_t replica);

/// X_n = sigma^beta n^{-delta beta} sum_x |f(x)|^beta (1 - i nu tan(pi beta/2) sgn f(x)),
/// f(x) = sum_j theta_j N_{n t_j}(x).
[[nodiscard]] std::complex<double> ks_functional(const WalkPath& walk, const SchemaConfig& config,
                                                 std::span<const double> theta,
                                                 std::span<const double> times);

/// Stream tags under (master, replica, copy).
inline constexpr std::uint64_t kWalkStream = 0x57;
inline constexpr std::uint64_t kSceneryStream = 0x53;

}  // namespace rwrs
