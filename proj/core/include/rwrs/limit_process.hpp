// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/stable.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

/// Skeleton of an alpha-stable Levy motion Y on {0, h, 2h, ..., T}.
struct LevyPath {
  double step = 0.0;
  std::vector<double> values;  // Y(k step), values[0] = 0

  [[nodiscard]] std::size_t steps() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  [[nodiscard]] double horizon() const noexcept { return step * static_cast<double>(steps()); }
};

/// Number of grid steps covering [0, T] with step at most h_t.
[[nodiscard]] std::size_t grid_steps(double T, double h_t);

/// Exact-in-law skeleton: i.i.d. increments stable(alpha, chi h^{1/alpha}, mu)
/// where `law` = (alpha, chi, mu) is the law of Y(1). The grid step is
/// T / ceil(T / h_t).
[[nodiscard]] LevyPath sample_levy_path(const StableLaw& law, double T, double h_t, CounterRng& rng);
void sample_levy_path(const StableLaw& law, double T, double h_t, CounterRng& rng, LevyPath& out);

/// Occupation density of a Levy skeleton on bins [b h_x, (b+1) h_x):
///   L_t(b) = (h / h_x) #{k : k h < t, Y(k h) in bin b}
/// so that sum_b L_t(b) h_x = t exactly.
struct GridLocalTime {
  using Field = std::vector<std::pair<std::int64_t, double>>;

  double time_step = 0.0;
  double bin_width = 0.0;
  std::vector<double> checkpoints;
  std::vector<Field> fields;  // sorted by bin, one per checkpoint

  [[nodiscard]] const Field& at(double t) const;
  /// sum_b L_t(b) h_x.
  [[nodiscard]] double mass(std::size_t checkpoint) const;
  /// sum_b L_t(b)^p h_x, the grid version of int L_t(x)^p dx.
  [[nodiscard]] double power_integral(std::size_t checkpoint, double p) const;
};

/// Checkpoints must be (within 1e-9 relative) multiples of the path step
/// no larger than its horizon.
[[nodiscard]] GridLocalTime grid_local_time(const LevyPath& path, double h_x,
                                            std::span<const double> checkpoints);

/// Bilateral beta-stable scenery process W sampled on spatial bins: the
/// increment over bin b is stable(beta, sigma h_x^{1/beta}, nu), drawn from a
/// per-bin keyed stream (order independent).
class SceneryLevy {
 public:
  SceneryLevy(const StableLaw& unit_law, double h_x, StreamKey key);

  [[nodiscard]] double increment(std::int64_t bin) const;
  [[nodiscard]] const StableLaw& bin_law() const noexcept { return bin_law_; }
  [[nodiscard]] double bin_width() const noexcept { return bin_width_; }

 private:
  StableLaw bin_law_;
  double bin_width_;
  StreamKey key_;
};

/// Delta(t) = sum_b L_t(b) dW(b); t must be one of the checkpoints.
[[nodiscard]] double sample_delta(const GridLocalTime& local_time, const SceneryLevy& scenery,
                                  double t);

/// Discretized limit-process experiment.
struct LimitConfig {
  StableLaw walk_limit{2.0, 0.7071067811865476, 0.0};  // law of Y(1)
  StableLaw scenery{1.5, 1.0, 0.0};                     // law of W(1)
  double horizon = 1.0;                                 // T
  double time_step = 0.0;                               // 0: T / 2^14
  double bin_width = 0.0;                               // 0: 2 h_t^{1/alpha}
  std::int64_t copies = 64;                             // m
  std::uint64_t master_seed = 1;

  void validate() const;
  [[nodiscard]] double alpha() const noexcept { return walk_limit.index; }
  [[nodiscard]] double beta() const noexcept { return scenery.index; }
  [[nodiscard]] double delta() const;
  [[nodiscard]] double effective_time_step() const;
  [[nodiscard]] double effective_bin_width() const;
  [[nodiscard]] std::size_t steps() const { return grid_steps(horizon, effective_time_step()); }
};

/// Streams Delta and Gamma = m^{-1/beta} sum_i Delta^{(i)} along the time
/// grid without materializing local-time fields:
///   Delta(k h) = (h / h_x) sum_{l < k} dW(bin of Y(l h)).
/// Holds reusable buffers; one instance per worker thread.
class GammaSampler {
 public:
  explicit GammaSampler(const LimitConfig& config);

  [[nodiscard]] const LimitConfig& config() const noexcept { return config_; }
  [[nodiscard]] double step() const noexcept { return step_; }
  [[nodiscard]] std::size_t steps() const noexcept { return steps_; }

  /// Delta^{(copy)}(k h) for k = 0..steps into out (size steps + 1).
  void delta_path(std::uint64_t replica, std::uint64_t copy, std::span<double> out);
  /// Gamma_m(k h) for k = 0..steps, m = config.copies.
  void gamma_path(std::uint64_t replica, std::span<double> out);
  /// Gamma_m at selected grid times (each a multiple of the step).
  [[nodiscard]] std::vector<double> gamma_at(std::uint64_t replica, std::span<const double> times);
  /// sum_b L_T(b)^p h_x for an independent Levy path keyed by `index`
  /// under a separate stream family.
  [[nodiscard]] double local_time_power_integral(std::uint64_t index, double T, double p);

 private:
  LimitConfig config_;
  double step_ = 0.0;
  double bin_width_ = 0.0;
  std::size_t steps_ = 0;
  LevyPath path_;
  std::vector<std::int64_t> bins_;
  std::vector<double> dw_;
  std::vector<unsigned char> seen_;
  std::vector<double> delta_;
};

[[nodiscard]] std::vector<double> sample_gamma(const LimitConfig& config, std::uint64_t replica,
                                               std::span<const double> times);

struct CfOracle {
  std::complex<double> value;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  /// Mean of the complex exponent integral (before multiplying by -sigma^beta).
  std::complex<double> mean_integral;
};

/// Finite-dimensional characteristic function of the limit process,
///   exp(-sigma^beta E int |sum_j theta_j L_{t_j}(x)|^beta (1 - i nu tan(pi beta/2) sgn) dx),
/// with the expectation replaced by a mean over `mc_reps` independent grid
/// local-time fields. Standard errors by bootstrap over realizations.
[[nodiscard]] CfOracle gamma_cf(const LimitConfig& config, std::span<const double> theta,
                                std::span<const double> times, std::int64_t mc_reps,
                                unsigned workers = 1);

/// C_beta = (int_0^inf x^{-beta} sin x dx)^{-1}, beta in (0,2), by exact
/// series on [0, pi] and an accelerated alternating sum of half-periods.
[[nodiscard]] double c_beta(double beta);
/// (Gamma(1-beta) cos(pi beta/2))^{-1}, with the beta = 1 limit 2/pi.
[[nodiscard]] double c_beta_closed_form(double beta);

struct TailPoint {
  double u = 0.0;
  std::size_t exceed_one_sided = 0;
  std::size_t exceed_two_sided = 0;
  Estimate scaled_one_sided;  // u^beta P(sup Gamma >= u)
  Estimate scaled_two_sided;  // u^beta P(sup |Gamma| >= u)
};

struct TailReport {
  double beta = 0.0;
  std::vector<TailPoint> points;
  Estimate lt_integral;          // E int L_T^beta dx
  Estimate constant_one_sided;   // C_beta sigma^beta (1+nu)/2 E int L_T^beta
  Estimate constant_two_sided;   // C_beta sigma^beta E int L_T^beta
  std::vector<std::pair<std::size_t, double>> hill_sweep;  // (k, estimate)
  double hill_default = 0.0;     // k = ceil(n^0.6)
  std::size_t resolvable = 0;    // index of the largest u with enough exceedances
};

/// Tail analysis from precomputed samples of sup Gamma, sup |Gamma| and
/// independent int L_T^beta realizations. An empty u grid selects upper
/// quantiles of sup |Gamma|.
[[nodiscard]] TailReport sup_tail_check(const SampleSet& sup_one_sided,
                                        const SampleSet& sup_two_sided,
                                        const SampleSet& lt_integrals, double beta, double sigma,
                                        double nu, std::vector<double> u_grid,
                                        std::size_t min_exceedances = 100);

/// Simulating front end: `replicas` Gamma paths on [0, T] and as many
/// independent local-time integrals.
[[nodiscard]] TailReport sup_tail_check(const LimitConfig& config, std::vector<double> u_grid,
                                        std::int64_t replicas, unsigned workers = 1);

/// epsilon in the Holder weight: 0 for 1 <= beta < 2, 1/2 for 0 < beta < 1.
[[nodiscard]] double holder_epsilon(double beta);

/// sup over grid pairs s < t with t - s < 1/e of
///   |G(t) - G(s)| / ((t-s)^{1-1/alpha} |log(t-s)|^{1/alpha + epsilon}).
/// Times must be increasing.
[[nodiscard]] double holder_modulus(std::span<const double> times, std::span<const double> values,
                                    double alpha, double epsilon);

/// Stream tags under (master, replica, copy).
inline constexpr std::uint64_t kLevyStream = 0x4c;
inline constexpr std::uint64_t kSceneryLevyStream = 0x57;
/// Family tag for independent local-time realizations (oracles, constants).
inline constexpr std::uint64_t kLocalTimeFamily = 0x4c54;

}  // namespace rwrs
