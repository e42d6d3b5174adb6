// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "rwrs/limit_process.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "rwrs/error.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/rwrs.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kCfFamily = 0x4346;
constexpr std::uint64_t kBootstrapFamily = 0x4253;

double skew_factor(const StableLaw& law) {
  return law.index == 2.0 ? 0.0 : law.skewness * std::tan(0.5 * kPi * law.index);
}

// Index K with t = K * step, rejecting off-grid times.
std::size_t grid_index(double t, double step, std::size_t steps) {
  const double ratio = t / step;
  const double k = std::round(ratio);
  if (!(t >= 0.0) || std::abs(ratio - k) > 1e-9 * std::max(1.0, k) ||
      k > static_cast<double>(steps))
    throw DomainError("time " + std::to_string(t) + " is not a grid point of the path");
  return static_cast<std::size_t>(k);
}

// floor(Y(k h) / h_x) for k < count.
void bin_positions(const LevyPath& path, double h_x, std::size_t count,
                   std::vector<std::int64_t>& bins) {
  bins.resize(count);
  const double inv = 1.0 / h_x;
  for (std::size_t k = 0; k < count; ++k)
    bins[k] = static_cast<std::int64_t>(std::floor(path.values[k] * inv));
}

// Gauss-Legendre nodes and weights on [-1, 1].
template <std::size_t N>
struct GaussLegendre {
  std::array<double, N> x{};
  std::array<double, N> w{};
  GaussLegendre() {
    for (std::size_t i = 0; i < N; ++i) {
      double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(N) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = z;
        for (std::size_t k = 2; k <= N; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(N) * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

}  // namespace

std::size_t grid_steps(double T, double h_t) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("horizon T must be positive");
  if (!(h_t > 0.0) || h_t > T * (1.0 + 1e-12)) throw DomainError("time step must lie in (0, T]");
  return static_cast<std::size_t>(std::ceil(T / h_t - 1e-9));
}

void sample_levy_path(const StableLaw& law, double T, double h_t, CounterRng& rng, LevyPath& out) {
  law.validate();
  const std::size_t n = grid_steps(T, h_t);
  out.step = T / static_cast<double>(n);
  out.values.resize(n + 1);
  const StableLaw inc{law.index, law.scale * std::pow(out.step, 1.0 / law.index), law.skewness};
  out.values[0] = 0.0;
  fill_stable(inc, rng, std::span<double>(out.values).subspan(1));
  double y = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    y += out.values[k];
    out.values[k] = y;
  }
}

LevyPath sample_levy_path(const StableLaw& law, double T, double h_t, CounterRng& rng) {
  LevyPath p;
  sample_levy_path(law, T, h_t, rng, p);
  return p;
}

const GridLocalTime::Field& GridLocalTime::at(double t) const {
  for (std::size_t j = 0; j < checkpoints.size(); ++j)
    if (std::abs(checkpoints[j] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return fields[j];
  throw DomainError("time " + std::to_string(t) + " is not a checkpoint");
}

double GridLocalTime::mass(std::size_t checkpoint) const {
  KahanSum s;
  for (const auto& [bin, l] : fields.at(checkpoint)) s.add(l * bin_width);
  return s.value();
}

double GridLocalTime::power_integral(std::size_t checkpoint, double p) const {
  KahanSum s;
  for (const auto& [bin, l] : fields.at(checkpoint)) s.add(std::pow(l, p) * bin_width);
  return s.value();
}

GridLocalTime grid_local_time(const LevyPath& path, double h_x, std::span<const double> checkpoints) {
  if (!(h_x > 0.0)) throw DomainError("bin width must be positive");
  GridLocalTime out;
  out.time_step = path.step;
  out.bin_width = h_x;
  out.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  std::vector<std::int64_t> bins;
  bin_positions(path, h_x, path.steps(), bins);
  const double density = path.step / h_x;
  for (double t : checkpoints) {
    const std::size_t k = grid_index(t, path.step, path.steps());
    GridLocalTime::Field field;
    for (const auto& [bin, count] : count_visits(std::span<const std::int64_t>(bins).first(k)))
      field.emplace_back(bin, density * static_cast<double>(count));
    out.fields.push_back(std::move(field));
  }
  return out;
}

SceneryLevy::SceneryLevy(const StableLaw& unit_law, double h_x, StreamKey key)
    : bin_law_{unit_law.index, unit_law.scale * std::pow(h_x, 1.0 / unit_law.index),
               unit_law.skewness},
      bin_width_(h_x),
      key_(key) {
  if (!(h_x > 0.0)) throw DomainError("bin width must be positive");
  bin_law_.validate();
}

double SceneryLevy::increment(std::int64_t bin) const {
  CounterRng rng(key_.site(bin));
  return sample_stable(bin_law_, rng);
}

double sample_delta(const GridLocalTime& local_time, const SceneryLevy& scenery, double t) {
  KahanSum s;
  for (const auto& [bin, l] : local_time.at(t)) s.add(l * scenery.increment(bin));
  return s.value();
}

// ---------------------------------------------------------------------------

void LimitConfig::validate() const {
  walk_limit.validate();
  scenery.validate();
  if (!(walk_limit.index > 1.0)) throw DomainError("Levy motion index alpha must lie in (1,2]");
  if (copies < 1) throw DomainError("copy count m must be >= 1");
  (void)grid_steps(horizon, effective_time_step());
  if (!(effective_bin_width() > 0.0)) throw DomainError("bin width must be positive");
}

double LimitConfig::delta() const { return delta_exponent(alpha(), beta()); }

double LimitConfig::effective_time_step() const {
  return time_step > 0.0 ? time_step : horizon / 16384.0;
}

double LimitConfig::effective_bin_width() const {
  return bin_width > 0.0 ? bin_width : 2.0 * std::pow(effective_time_step(), 1.0 / alpha());
}

GammaSampler::GammaSampler(const LimitConfig& config) : config_(config) {
  config_.validate();
  steps_ = config_.steps();
  step_ = config_.horizon / static_cast<double>(steps_);
  bin_width_ = config_.effective_bin_width();
  delta_.resize(steps_ + 1);
}

void GammaSampler::delta_path(std::uint64_t replica, std::uint64_t copy, std::span<double> out) {
  const StreamKey base = StreamKey(config_.master_seed).child({replica, copy});
  CounterRng rng(base.child(kLevyStream));
  sample_levy_path(config_.walk_limit, config_.horizon, config_.effective_time_step(), rng, path_);
  bin_positions(path_, bin_width_, steps_, bins_);
  const SceneryLevy scenery(config_.scenery, bin_width_, base.child(kSceneryLevyStream));
  const double density = step_ / bin_width_;

  out[0] = 0.0;
  if (steps_ == 0) return;
  const auto [lo_it, hi_it] = std::minmax_element(bins_.begin(), bins_.end());
  const std::int64_t lo = *lo_it;
  const std::int64_t span = *hi_it - lo;
  double cum = 0.0;
  if (span <= 4 * static_cast<std::int64_t>(steps_) + 64) {
    seen_.assign(static_cast<std::size_t>(span) + 1, 0);
    dw_.resize(static_cast<std::size_t>(span) + 1);
    for (std::size_t k = 0; k < steps_; ++k) {
      const auto i = static_cast<std::size_t>(bins_[k] - lo);
      if (!seen_[i]) {
        seen_[i] = 1;
        dw_[i] = scenery.increment(bins_[k]);
      }
      cum += dw_[i];
      out[k + 1] = density * cum;
    }
    return;
  }
  std::vector<std::int64_t> sites(bins_.begin(), bins_.end());
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  dw_.resize(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) dw_[i] = scenery.increment(sites[i]);
  for (std::size_t k = 0; k < steps_; ++k) {
    const auto it = std::lower_bound(sites.begin(), sites.end(), bins_[k]);
    cum += dw_[static_cast<std::size_t>(it - sites.begin())];
    out[k + 1] = density * cum;
  }
}

void GammaSampler::gamma_path(std::uint64_t replica, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  const auto m = static_cast<std::uint64_t>(config_.copies);
  for (std::uint64_t i = 0; i < m; ++i) {
    delta_path(replica, i, delta_);
    for (std::size_t k = 0; k <= steps_; ++k) out[k] += delta_[k];
  }
  const double scale = std::pow(static_cast<double>(m), -1.0 / config_.beta());
  for (auto& v : out) v *= scale;
}

std::vector<double> GammaSampler::gamma_at(std::uint64_t replica, std::span<const double> times) {
  std::vector<std::size_t> idx;
  for (double t : times) idx.push_back(grid_index(t, step_, steps_));
  std::vector<double> path(steps_ + 1);
  gamma_path(replica, path);
  std::vector<double> out;
  for (auto k : idx) out.push_back(path[k]);
  return out;
}

double GammaSampler::local_time_power_integral(std::uint64_t index, double T, double p) {
  CounterRng rng(StreamKey(config_.master_seed).child({kLocalTimeFamily, index}));
  sample_levy_path(config_.walk_limit, T, config_.effective_time_step(), rng, path_);
  bin_positions(path_, bin_width_, path_.steps(), bins_);
  const double density = path_.step / bin_width_;
  KahanSum s;
  for (const auto& [bin, count] : count_visits(bins_))
    s.add(std::pow(density * static_cast<double>(count), p) * bin_width_);
  return s.value();
}

std::vector<double> sample_gamma(const LimitConfig& config, std::uint64_t replica,
                                 std::span<const double> times) {
  GammaSampler sampler(config);
  return sampler.gamma_at(replica, times);
}

// ---------------------------------------------------------------------------

CfOracle gamma_cf(const LimitConfig& config, std::span<const double> theta,
                  std::span<const double> times, std::int64_t mc_reps, unsigned workers) {
  config.validate();
  if (theta.size() != times.size() || theta.empty())
    throw DomainError("gamma_cf: theta and times must be non-empty and of equal length");
  if (mc_reps < 1) throw DomainError("gamma_cf: mc_reps must be >= 1");
  const double T = *std::max_element(times.begin(), times.end());
  const double h_t = config.effective_time_step();
  const double h_x = config.effective_bin_width();
  const double beta = config.beta();
  const double skew = skew_factor(config.scenery);

  struct State {
    LevyPath path;
    std::vector<std::int64_t> bins;
    std::vector<double> weight;
    std::vector<std::pair<std::int64_t, double>> contrib;
  };
  auto integral = [&](State& st, std::size_t r) -> std::complex<double> {
    if (!(T > 0.0)) return {0.0, 0.0};
    CounterRng rng(StreamKey(config.master_seed).child({kCfFamily, static_cast<std::uint64_t>(r)}));
    sample_levy_path(config.walk_limit, T, h_t, rng, st.path);
    const std::size_t n = st.path.steps();
    bin_positions(st.path, h_x, n, st.bins);
    st.weight.assign(n, 0.0);
    for (std::size_t j = 0; j < times.size(); ++j) {
      const std::size_t k = grid_index(times[j], st.path.step, n);
      for (std::size_t l = 0; l < k; ++l) st.weight[l] += theta[j];
    }
    st.contrib.clear();
    for (std::size_t l = 0; l < n; ++l) st.contrib.emplace_back(st.bins[l], st.weight[l]);
    std::sort(st.contrib.begin(), st.contrib.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const double density = st.path.step / h_x;
    KahanSum re;
    KahanSum im;
    for (std::size_t i = 0; i < st.contrib.size();) {
      double f = 0.0;
      std::size_t j = i;
      for (; j < st.contrib.size() && st.contrib[j].first == st.contrib[i].first; ++j)
        f += st.contrib[j].second;
      i = j;
      f *= density;
      if (f == 0.0) continue;
      const double mag = std::pow(std::abs(f), beta) * h_x;
      re.add(mag);
      im.add(-mag * skew * (f > 0.0 ? 1.0 : -1.0));
    }
    return {re.value(), im.value()};
  };
  const auto samples = parallel_map(static_cast<std::size_t>(mc_reps), workers,
                                    [] { return State{}; }, integral);

  const double sb = std::pow(config.scenery.scale, beta);
  auto value_of = [&](std::complex<double> mean_j) { return std::exp(-sb * mean_j); };

  CfOracle out;
  KahanSum mre;
  KahanSum mim;
  for (const auto& j : samples) {
    mre.add(j.real());
    mim.add(j.imag());
  }
  const double n = static_cast<double>(samples.size());
  out.mean_integral = {mre.value() / n, mim.value() / n};
  out.value = value_of(out.mean_integral);

  // Bootstrap over realizations.
  constexpr int kResamples = 200;
  if (samples.size() > 1) {
    CounterRng rng(StreamKey(config.master_seed).child(kBootstrapFamily));
    std::vector<double> re(kResamples);
    std::vector<double> im(kResamples);
    for (int b = 0; b < kResamples; ++b) {
      KahanSum sr;
      KahanSum si;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto pick = static_cast<std::size_t>(rng.uniform() * n);
        sr.add(samples[std::min(pick, samples.size() - 1)].real());
        si.add(samples[std::min(pick, samples.size() - 1)].imag());
      }
      const auto v = value_of({sr.value() / n, si.value() / n});
      re[static_cast<std::size_t>(b)] = v.real();
      im[static_cast<std::size_t>(b)] = v.imag();
    }
    out.std_error_re = std::sqrt(variance(re));
    out.std_error_im = std::sqrt(variance(im));
  }
  return out;
}

// ---------------------------------------------------------------------------

double c_beta_closed_form(double beta) {
  if (!(beta > 0.0 && beta < 2.0)) throw DomainError("C_beta requires beta in (0,2)");
  if (beta == 1.0) return 2.0 / kPi;
  return 1.0 / (std::tgamma(1.0 - beta) * std::cos(0.5 * kPi * beta));
}

double c_beta(double beta) {
  if (!(beta > 0.0 && beta < 2.0)) throw DomainError("C_beta requires beta in (0,2)");
  // [0, pi]: integrate the sine series term by term,
  //   sum_k (-1)^k pi^{2k+2-beta} / ((2k+1)! (2k+2-beta)).
  double head = 0.0;
  double coef = 1.0;  // pi^{2k} / (2k+1)!
  for (int k = 0; k < 60; ++k) {
    const double e = 2.0 * k + 2.0 - beta;
    const double term = coef * std::pow(kPi, 2.0 - beta) / e;
    head += (k % 2 == 0 ? term : -term);
    if (std::abs(term) < 1e-18 * std::abs(head)) break;
    coef *= kPi * kPi / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }

  // Half-periods beyond pi: sum_{j>=1} (-1)^j a_{j-1} with
  //   a_k = int_0^pi ((k+1) pi + y)^{-beta} sin y dy,
  // a completely monotone sequence; Cohen-Rodriguez Villegas-Zagier
  // acceleration.
  static const GaussLegendre<32> gl;
  auto a = [&](int k) {
    double s = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double y = 0.5 * kPi * (gl.x[i] + 1.0);
      s += gl.w[i] * std::pow((k + 1.0) * kPi + y, -beta) * std::sin(y);
    }
    return 0.5 * kPi * s;
  };
  constexpr int kTerms = 40;
  double d = std::pow(3.0 + std::sqrt(8.0), kTerms);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0;
  double c = -d;
  double alt = 0.0;
  for (int k = 0; k < kTerms; ++k) {
    c = b - c;
    alt += c * a(k);
    b *= (static_cast<double>(k) + kTerms) * (static_cast<double>(k) - kTerms) /
         ((k + 0.5) * (k + 1.0));
  }
  alt /= d;  // sum_{k>=0} (-1)^k a_k
  return 1.0 / (head - alt);
}

// ---------------------------------------------------------------------------

TailReport sup_tail_check(const SampleSet& sup_one_sided, const SampleSet& sup_two_sided,
                          const SampleSet& lt_integrals, double beta, double sigma, double nu,
                          std::vector<double> u_grid, std::size_t min_exceedances) {
  if (!(beta > 0.0 && beta < 2.0)) throw DomainError("tail check requires 0 < beta < 2");
  if (sup_one_sided.size() != sup_two_sided.size() || sup_two_sided.size() < 10)
    throw DomainError("tail check needs matching sup samples");
  if (lt_integrals.size() < 2) throw DomainError("tail check needs local-time integrals");
  TailReport rep;
  rep.beta = beta;
  const auto n = sup_two_sided.size();
  const double nd = static_cast<double>(n);

  if (u_grid.empty()) {
    std::vector<double> sorted = sup_two_sided.values;
    std::sort(sorted.begin(), sorted.end());
    for (double p : {0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001}) {
      const auto idx = static_cast<std::size_t>(std::floor((1.0 - p) * nd));
      if (idx < n) u_grid.push_back(sorted[idx]);
    }
  }
  std::sort(u_grid.begin(), u_grid.end());
  for (double u : u_grid) {
    TailPoint pt;
    pt.u = u;
    for (double s : sup_one_sided.values) pt.exceed_one_sided += s >= u;
    for (double s : sup_two_sided.values) pt.exceed_two_sided += s >= u;
    const double ub = std::pow(u, beta);
    const double p1 = static_cast<double>(pt.exceed_one_sided) / nd;
    const double p2 = static_cast<double>(pt.exceed_two_sided) / nd;
    pt.scaled_one_sided = {ub * p1, ub * std::sqrt(p1 * (1.0 - p1) / nd)};
    pt.scaled_two_sided = {ub * p2, ub * std::sqrt(p2 * (1.0 - p2) / nd)};
    rep.points.push_back(pt);
  }
  for (std::size_t i = 0; i < rep.points.size(); ++i)
    if (rep.points[i].exceed_two_sided >= min_exceedances) rep.resolvable = i;

  const double m = mean(lt_integrals.values);
  const double se = std::sqrt(variance(lt_integrals.values) / static_cast<double>(lt_integrals.size()));
  rep.lt_integral = {m, se};
  const double cb = c_beta(beta) * std::pow(sigma, beta);
  rep.constant_two_sided = {cb * m, cb * se};
  rep.constant_one_sided = {cb * 0.5 * (1.0 + nu) * m, cb * 0.5 * (1.0 + nu) * se};

  SampleSet positive{{}, "sup|Gamma|"};
  for (double s : sup_two_sided.values)
    if (s > 0.0) positive.values.push_back(s);
  const auto k_default = default_hill_k(positive.size());
  if (k_default >= 2 && k_default < positive.size())
    rep.hill_default = hill_estimator(positive, k_default);
  for (std::size_t k : {50UL, 100UL, 200UL, 500UL, 1000UL, 2000UL, 5000UL})
    if (k < positive.size()) rep.hill_sweep.emplace_back(k, hill_estimator(positive, k));
  return rep;
}

TailReport sup_tail_check(const LimitConfig& config, std::vector<double> u_grid,
                          std::int64_t replicas, unsigned workers) {
  config.validate();
  if (replicas < 10) throw DomainError("tail check needs at least 10 replicas");
  struct Sup {
    double one = 0.0;
    double two = 0.0;
  };
  auto sups = parallel_map(
      static_cast<std::size_t>(replicas), workers,
      [&] { return std::pair{GammaSampler(config), std::vector<double>(config.steps() + 1)}; },
      [](auto& st, std::size_t r) {
        st.first.gamma_path(r, st.second);
        Sup s;
        for (double v : st.second) {
          s.one = std::max(s.one, v);
          s.two = std::max(s.two, std::abs(v));
        }
        return s;
      });
  auto lts = parallel_map(
      static_cast<std::size_t>(replicas), workers, [&] { return GammaSampler(config); },
      [&](GammaSampler& g, std::size_t i) {
        return g.local_time_power_integral(i, config.horizon, config.beta());
      });
  SampleSet one{{}, "sup Gamma"};
  SampleSet two{{}, "sup |Gamma|"};
  for (const auto& s : sups) {
    one.values.push_back(s.one);
    two.values.push_back(s.two);
  }
  return sup_tail_check(one, two, SampleSet{std::move(lts), "int L^beta"}, config.beta(),
                        config.scenery.scale, config.scenery.skewness, std::move(u_grid));
}

// ---------------------------------------------------------------------------

double holder_epsilon(double beta) {
  if (!(beta > 0.0 && beta < 2.0)) throw DomainError("Holder check requires 0 < beta < 2");
  return beta < 1.0 ? 0.5 : 0.0;
}

double holder_modulus(std::span<const double> times, std::span<const double> values, double alpha,
                      double epsilon) {
  if (times.size() != values.size()) throw DomainError("holder_modulus: size mismatch");
  if (!(alpha > 1.0 && alpha <= 2.0)) throw DomainError("holder_modulus: alpha in (1,2]");
  if (!std::is_sorted(times.begin(), times.end()))
    throw DomainError("holder_modulus: times must be increasing");
  const double cutoff = std::exp(-1.0);
  const double p = 1.0 - 1.0 / alpha;
  const double q = 1.0 / alpha + epsilon;
  auto weight = [&](double lag) { return std::pow(lag, p) * std::pow(-std::log(lag), q); };

  const std::size_t n = times.size();
  double sup = 0.0;
  bool uniform = n > 2;
  const double h = n > 1 ? times[1] - times[0] : 0.0;
  for (std::size_t i = 2; uniform && i < n; ++i)
    uniform = std::abs((times[i] - times[i - 1]) - h) <= 1e-12 * std::max(1.0, std::abs(h));
  if (uniform && h > 0.0) {
    std::vector<double> inv;
    for (std::size_t d = 1; d < n && static_cast<double>(d) * h < cutoff; ++d)
      inv.push_back(1.0 / weight(static_cast<double>(d) * h));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 1; d <= inv.size() && i + d < n; ++d)
        sup = std::max(sup, std::abs(values[i + d] - values[i]) * inv[d - 1]);
    return sup;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double lag = times[j] - times[i];
      if (!(lag > 0.0) || lag >= cutoff) continue;
      sup = std::max(sup, std::abs(values[j] - values[i]) / weight(lag));
    }
  return sup;
}

}  // namespace rwrs
