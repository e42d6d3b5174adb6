// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rwrs/rng.hpp"

namespace rwrs {

/// Strictly stable law with characteristic function
///   exp(-scale^index |u|^index (1 - i skewness tan(pi index / 2) sgn u)).
/// With this convention index = 2 has variance 2 scale^2.
struct StableLaw {
  double index = 2.0;
  double scale = 1.0;
  double skewness = 0.0;

  /// Throws DomainError unless index in (0,2], scale > 0, skewness in [-1,1]
  /// and skewness = 0 when index = 1.
  void validate() const;
  [[nodiscard]] std::string describe() const;
};

[[nodiscard]] StableLaw make_stable(double index, double scale, double skewness = 0.0);

[[nodiscard]] std::complex<double> stable_cf(const StableLaw& law, double u);

/// One draw by the Chambers-Mallows-Stuck transform (index != 2) or a
/// Box-Muller-equivalent Gaussian (index = 2).
[[nodiscard]] double sample_stable(const StableLaw& law, CounterRng& rng);

/// Batched draws; identical in law to repeated sample_stable, faster for
/// index = 2 where both Box-Muller outputs are used.
void fill_stable(const StableLaw& law, CounterRng& rng, std::span<double> out);

/// Riemann zeta for s > 1, accurate to ~1e-15 relative.
[[nodiscard]] double riemann_zeta(double s);
/// sum_{k >= first} k^{-s} for s > 1, first >= 1.
[[nodiscard]] double zeta_tail(double s, std::int64_t first);

enum class WalkKind { SimpleSymmetric, DiscretePareto };

/// Integer increment law in the normal domain of attraction of a strictly
/// stable law of index alpha in (1,2].
///
/// SimpleSymmetric: +-1 with probability 1/2 (alpha = 2).
/// DiscretePareto: P(X = +-k) = c k^{-alpha-1}, k >= 1, c = 1/(2 zeta(alpha+1)).
/// Draws use a Vose alias table over |k| <= kTableSize plus one tail bucket;
/// the tail is sampled exactly by rejection from a continuous Pareto.
class WalkIncrementLaw {
 public:
  static constexpr std::int64_t kTableSize = 1024;

  [[nodiscard]] static WalkIncrementLaw simple_symmetric();
  [[nodiscard]] static WalkIncrementLaw discrete_pareto(double index);

  [[nodiscard]] WalkKind kind() const noexcept { return kind_; }
  [[nodiscard]] double index() const noexcept { return index_; }
  /// c in P(X = +-k) = c k^{-alpha-1}; 1/2 for SimpleSymmetric.
  [[nodiscard]] double normalization() const noexcept { return normalization_; }
  /// P(X = k).
  [[nodiscard]] double mass(std::int64_t k) const;
  /// P(|X| > k).
  [[nodiscard]] double tail_mass(std::int64_t k) const;
  /// The stable law Z_alpha with n^{-1/alpha} S_n => Z_alpha.
  [[nodiscard]] StableLaw limit_law() const;
  [[nodiscard]] std::string describe() const;

  [[nodiscard]] std::int64_t sample(CounterRng& rng) const;

 private:
  struct AliasTable {
    std::vector<double> accept;
    std::vector<std::uint32_t> alias;
    double tail_bound = 1.0;  // rejection envelope constant for the tail
  };

  WalkIncrementLaw() = default;
  [[nodiscard]] std::int64_t sample_tail(CounterRng& rng) const;

  WalkKind kind_ = WalkKind::SimpleSymmetric;
  double index_ = 2.0;
  double normalization_ = 0.5;
  std::shared_ptr<const AliasTable> table_;
};

[[nodiscard]] inline std::int64_t sample_walk_increment(const WalkIncrementLaw& law,
                                                        CounterRng& rng) {
  return law.sample(rng);
}

enum class SceneryKind { ExactStable, TwoSidedPareto, Zero };

/// Law of one scenery value xi_x.
///
/// ExactStable: xi ~ StableLaw (its own domain of attraction).
/// TwoSidedPareto: P(xi > u) = A1 u^-beta and P(xi < -u) = A2 u^-beta beyond
///   the lower cutoff (A1 + A2)^{1/beta}; centered when beta in (1,2),
///   symmetric (A1 = A2) required when beta = 1.
/// Zero: degenerate xi = 0, a test fixture that still carries an index.
class SceneryLaw {
 public:
  [[nodiscard]] static SceneryLaw exact_stable(const StableLaw& law);
  [[nodiscard]] static SceneryLaw two_sided_pareto(double index, double a1, double a2);
  [[nodiscard]] static SceneryLaw zero(double index);

  [[nodiscard]] SceneryKind kind() const noexcept { return kind_; }
  [[nodiscard]] double index() const noexcept { return stable_.index; }
  [[nodiscard]] double a1() const noexcept { return a1_; }
  [[nodiscard]] double a2() const noexcept { return a2_; }
  /// Stable law Z_beta with n^{-1/beta} sum xi_x => Z_beta. For Zero this is
  /// the nominal law the fixture stands in for.
  [[nodiscard]] const StableLaw& limit_law() const noexcept { return stable_; }
  [[nodiscard]] std::string describe() const;

  [[nodiscard]] double sample(CounterRng& rng) const;

 private:
  SceneryLaw() = default;

  SceneryKind kind_ = SceneryKind::ExactStable;
  StableLaw stable_{};
  double a1_ = 0.0;
  double a2_ = 0.0;
  double cutoff_ = 1.0;       // (A1 + A2)^{1/beta}
  double positive_prob_ = 0.5;
  double center_ = 0.0;
};

[[nodiscard]] inline double sample_scenery_value(const SceneryLaw& law, CounterRng& rng) {
  return law.sample(rng);
}

}  // namespace rwrs
