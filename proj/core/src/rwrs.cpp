// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "rwrs/rwrs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rwrs/error.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

double RwrsPath::at(double s) const {
  if (!(s >= 0.0) || s > static_cast<double>(horizon()))
    throw DomainError("rwrs: time " + std::to_string(s) + " beyond horizon " +
                      std::to_string(horizon()));
  const auto m = static_cast<std::size_t>(std::floor(s));
  const double frac = s - static_cast<double>(m);
  if (frac == 0.0) return values_[m];
  return values_[m] + frac * (values_[m + 1] - values_[m]);
}

RwrsPath build_rwrs(const WalkPath& walk, Scenery& scenery) {
  std::vector<double> z;
  z.reserve(walk.positions().size());
  double acc = 0.0;
  for (auto x : walk.positions()) {
    acc += scenery.at(x);
    z.push_back(acc);
  }
  return RwrsPath(std::move(z));
}

double rwrs_value(const WalkPath& walk, Scenery& scenery, double s) {
  if (!(s >= 0.0) || s > static_cast<double>(walk.horizon()))
    throw DomainError("rwrs_value: time outside the walk horizon");
  const auto m = static_cast<std::int64_t>(std::floor(s));
  const auto last = std::min(m + 1, walk.horizon());
  double z = 0.0;
  double next = 0.0;
  for (std::int64_t k = 0; k <= last; ++k) {
    const double xi = scenery.at(walk[k]);
    if (k <= m) z += xi; else next = xi;
  }
  return z + (s - static_cast<double>(m)) * next;
}

double rwrs_local_time_sum(const WalkPath& walk, Scenery& scenery, std::int64_t m) {
  const auto field = local_time_field(walk, m);
  double z = 0.0;
  for (const auto& [x, count] : field.entries()) z += static_cast<double>(count) * scenery.at(x);
  return z;
}

double delta_exponent(double alpha, double beta) {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw DomainError("walk index alpha must lie in (1,2], got " + std::to_string(alpha));
  if (!(beta > 0.0 && beta <= 2.0))
    throw DomainError("scenery index beta must lie in (0,2], got " + std::to_string(beta));
  return 1.0 - 1.0 / alpha + 1.0 / (alpha * beta);
}

std::string Feasibility::label() const {
  switch (branch) {
    case FeasibleBranch::BetaBelowOne: return "beta<1";
    case FeasibleBranch::BetaOne: return "beta=1";
    case FeasibleBranch::BetaAboveOne: return "beta>1";
  }
  return "?";
}

Feasibility feasible_pair(double alpha, double beta) {
  Feasibility f{};
  f.hurst = delta_exponent(alpha, beta);
  const double h = f.hurst;
  bool ok = false;
  if (beta < 1.0) {
    f.branch = FeasibleBranch::BetaBelowOne;
    f.lower = (beta + 1.0) / (2.0 * beta);
    f.upper = 1.0 / beta;
    f.lower_closed = true;
    // Round-off slack on the closed end only; the open end is strict.
    ok = h >= f.lower * (1.0 - 1e-12) && h < f.upper;
  } else if (beta == 1.0) {
    f.branch = FeasibleBranch::BetaOne;
    f.lower = f.upper = 1.0;
    f.lower_closed = f.upper_closed = true;
    ok = std::abs(h - 1.0) <= 1e-12;
  } else {
    f.branch = FeasibleBranch::BetaAboveOne;
    f.lower = 1.0 / beta;
    f.upper = (beta + 1.0) / (2.0 * beta);
    f.upper_closed = true;
    ok = h > f.lower && h <= f.upper * (1.0 + 1e-12);
  }
  if (!ok) {
    std::ostringstream os;
    os << "feasibility violated: alpha=" << alpha << " beta=" << beta << " H=" << h;
    throw std::logic_error(os.str());
  }
  return f;
}

double rescaled_rwrs(const WalkPath& walk, Scenery& scenery, double n, double t) {
  if (!walk.law()) throw DomainError("rescaled_rwrs: walk has no increment law");
  if (!(n > 0.0)) throw DomainError("rescaled_rwrs: n must be positive");
  const double delta = delta_exponent(walk.law()->index(), scenery.law().index());
  return std::pow(n, -delta) * rwrs_value(walk, scenery, n * t);
}

// ---------------------------------------------------------------------------

void SchemaConfig::validate() const {
  (void)feasible_pair(alpha, beta);
  (void)walk_law();
  (void)scenery_law();
  if (n < 1) throw DomainError("schema: n must be >= 1");
  if (copies < 0) throw DomainError("schema: copies must be >= 1 (0 selects the default)");
  if (times.empty()) throw DomainError("schema: time grid is empty");
  if (!std::is_sorted(times.begin(), times.end()))
    throw DomainError("schema: time grid must be sorted");
  if (!(times.front() >= 0.0) || !std::isfinite(times.back()))
    throw DomainError("schema: times must be finite and non-negative");
}

std::int64_t SchemaConfig::copy_count() const {
  if (copies > 0) return copies;
  return static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

std::int64_t SchemaConfig::walk_length() const {
  const double t = times.empty() ? 0.0 : times.back();
  return static_cast<std::int64_t>(std::ceil(static_cast<double>(n) * t));
}

WalkIncrementLaw SchemaConfig::walk_law() const {
  if (alpha == 2.0) return WalkIncrementLaw::simple_symmetric();
  return WalkIncrementLaw::discrete_pareto(alpha);
}

SceneryLaw SchemaConfig::scenery_law() const {
  switch (scenery_kind) {
    case SceneryKind::ExactStable: return SceneryLaw::exact_stable(make_stable(beta, sigma, nu));
    case SceneryKind::TwoSidedPareto: return SceneryLaw::two_sided_pareto(beta, pareto_a1, pareto_a2);
    case SceneryKind::Zero: return SceneryLaw::zero(beta);
  }
  throw DomainError("unknown scenery kind");
}

SchemaEvaluator::SchemaEvaluator(const SchemaConfig& config)
    : config_(config), walk_law_(config.walk_law()), scenery_law_(config.scenery_law()) {
  config_.validate();
  norm_ = std::pow(static_cast<double>(config_.n), -config_.delta());
  length_ = config_.walk_length();
  for (double t : config_.times) {
    const double s = static_cast<double>(config_.n) * t;
    const auto m = static_cast<std::int64_t>(std::floor(s));
    needed_.push_back(m);
    if (s > static_cast<double>(m) && m < length_) needed_.push_back(m + 1);
  }
  std::sort(needed_.begin(), needed_.end());
  needed_.erase(std::unique(needed_.begin(), needed_.end()), needed_.end());
  z_.resize(needed_.size());
}

void SchemaEvaluator::rescaled_copy(std::uint64_t replica, std::uint64_t copy,
                                    std::span<double> out) {
  const StreamKey base = StreamKey(config_.master_seed).child({replica, copy});
  CounterRng walk_rng(base.child(kWalkStream));
  generate_positions(length_, walk_law_, walk_rng, positions_);
  const Scenery scenery(scenery_law_, base.child(kSceneryStream));

  const auto [lo_it, hi_it] = std::minmax_element(positions_.begin(), positions_.end());
  const std::int64_t lo = *lo_it;
  std::int64_t span = 0;
  const bool dense = !__builtin_sub_overflow(*hi_it, lo, &span) && span <= 4 * length_ + 64;

  std::size_t next = 0;
  double z = 0.0;
  auto record = [&](std::int64_t k) {
    while (next < needed_.size() && needed_[next] == k) z_[next++] = z;
  };
  if (dense) {
    // Realize xi only on visited sites of the occupied window.
    visited_.assign(static_cast<std::size_t>(span) + 1, 0);
    xi_.resize(static_cast<std::size_t>(span) + 1);
    for (auto x : positions_) {
      const auto i = static_cast<std::size_t>(x - lo);
      if (!visited_[i]) {
        visited_[i] = 1;
        xi_[i] = scenery.value(x);
      }
    }
    for (std::int64_t k = 0; k <= length_; ++k) {
      z += xi_[static_cast<std::size_t>(positions_[static_cast<std::size_t>(k)] - lo)];
      record(k);
    }
  } else {
    std::vector<std::int64_t> sites(positions_.begin(), positions_.end());
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    xi_.resize(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) xi_[i] = scenery.value(sites[i]);
    for (std::int64_t k = 0; k <= length_; ++k) {
      const auto it = std::lower_bound(sites.begin(), sites.end(),
                                       positions_[static_cast<std::size_t>(k)]);
      z += xi_[static_cast<std::size_t>(it - sites.begin())];
      record(k);
    }
  }

  for (std::size_t j = 0; j < config_.times.size(); ++j) {
    const double s = static_cast<double>(config_.n) * config_.times[j];
    const auto m = static_cast<std::int64_t>(std::floor(s));
    const auto idx = static_cast<std::size_t>(
        std::lower_bound(needed_.begin(), needed_.end(), m) - needed_.begin());
    double zs = z_[idx];
    const double frac = s - static_cast<double>(m);
    if (frac > 0.0 && m < length_) zs += frac * (z_[idx + 1] - z_[idx]);
    out[j] = norm_ * zs;
  }
}

std::vector<double> SchemaEvaluator::sample(std::uint64_t replica) {
  const auto k = config_.times.size();
  std::vector<KahanSum> sums(k);
  std::vector<double> d(k);
  const auto copies = static_cast<std::uint64_t>(config_.copy_count());
  for (std::uint64_t i = 0; i < copies; ++i) {
    rescaled_copy(replica, i, d);
    for (std::size_t j = 0; j < k; ++j) sums[j].add(d[j]);
  }
  const double scale = std::pow(static_cast<double>(copies), -1.0 / config_.beta);
  std::vector<double> g(k);
  for (std::size_t j = 0; j < k; ++j) g[j] = scale * sums[j].value();
  return g;
}

std::vector<double> sample_schema(const SchemaConfig& config, std::uint64_t replica) {
  SchemaEvaluator eval(config);
  return eval.sample(replica);
}

std::complex<double> ks_functional(const WalkPath& walk, const SchemaConfig& config,
                                   std::span<const double> theta, std::span<const double> times) {
  if (theta.size() != times.size())
    throw DomainError("ks_functional: theta and times must have the same length");
  const double n = static_cast<double>(config.n);
  const double delta = delta_exponent(config.alpha, config.beta);
  // Per-time-step weight w_k so that f(x) = sum_k w_k 1{S_k = x}.
  std::vector<double> weight(static_cast<std::size_t>(walk.horizon()) + 1, 0.0);
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double s = n * times[j];
    if (!(s >= 0.0) || s > static_cast<double>(walk.horizon()))
      throw DomainError("ks_functional: n t beyond the walk horizon");
    const auto m = static_cast<std::int64_t>(std::floor(s));
    for (std::int64_t k = 0; k <= m; ++k) weight[static_cast<std::size_t>(k)] += theta[j];
    const double frac = s - static_cast<double>(m);
    if (frac > 0.0) weight[static_cast<std::size_t>(m) + 1] += frac * theta[j];
  }
  std::vector<std::pair<std::int64_t, double>> contrib;
  contrib.reserve(weight.size());
  for (std::int64_t k = 0; k <= walk.horizon(); ++k)
    contrib.emplace_back(walk[k], weight[static_cast<std::size_t>(k)]);
  std::sort(contrib.begin(), contrib.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const double skew =
      config.beta == 2.0 ? 0.0 : config.nu * std::tan(0.5 * std::numbers::pi * config.beta);
  KahanSum re;
  KahanSum im;
  for (std::size_t i = 0; i < contrib.size();) {
    double f = 0.0;
    std::size_t j = i;
    for (; j < contrib.size() && contrib[j].first == contrib[i].first; ++j) f += contrib[j].second;
    i = j;
    if (f == 0.0) continue;
    const double mag = std::pow(std::abs(f), config.beta);
    re.add(mag);
    im.add(-mag * skew * (f > 0.0 ? 1.0 : -1.0));
  }
  const double scale = std::pow(config.sigma, config.beta) * std::pow(n, -delta * config.beta);
  return {scale * re.value(), scale * im.value()};
}

}  // namespace rwrs
