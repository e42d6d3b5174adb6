// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "rwrs/error.hpp"
#include "rwrs/limit_process.hpp"
#include "rwrs/rwrs.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {
namespace {

constexpr double kBrownianChi = 0.7071067811865476;

LevyPath manual_path(double step, std::vector<double> values) {
  LevyPath p;
  p.step = step;
  p.values = std::move(values);
  return p;
}

TEST(GridSteps, CoversHorizon) {
  EXPECT_EQ(grid_steps(1.0, 0.25), 4U);
  EXPECT_EQ(grid_steps(1.0, 0.3), 4U);
  EXPECT_EQ(grid_steps(2.0, 1.0 / 1024), 2048U);
  EXPECT_THROW((void)grid_steps(0.0, 0.1), DomainError);
  EXPECT_THROW((void)grid_steps(1.0, 2.0), DomainError);
}

TEST(LevyPathTest, StartsAtZeroOnUniformGrid) {
  CounterRng rng(StreamKey(1));
  const auto p = sample_levy_path(make_stable(1.5, 1.0, 0.3), 1.0, 0.3, rng);
  EXPECT_EQ(p.values.front(), 0.0);
  EXPECT_EQ(p.steps(), 4U);
  EXPECT_DOUBLE_EQ(p.step, 0.25);
  EXPECT_DOUBLE_EQ(p.horizon(), 1.0);
}

// Y(T) / T^{1/alpha} has the law of Y(1).
void expect_endpoint_scaling(const StableLaw& law, double T) {
  const int reps = 5000;
  SampleSet scaled{{}, "Y(T) scaled"};
  SampleSet direct{{}, "Y(1)"};
  LevyPath p;
  for (int r = 0; r < reps; ++r) {
    CounterRng a(StreamKey(30).child({static_cast<std::uint64_t>(r), 0}));
    sample_levy_path(law, T, T / 64.0, a, p);
    scaled.values.push_back(p.values.back() * std::pow(T, -1.0 / law.index));
    CounterRng b(StreamKey(30).child({static_cast<std::uint64_t>(r), 1}));
    direct.values.push_back(sample_stable(law, b));
  }
  EXPECT_GT(ks_distance(scaled, direct).p_value, 0.001) << law.describe();
}

TEST(LevyPathTest, EndpointScaling) {
  expect_endpoint_scaling(make_stable(2.0, kBrownianChi), 4.0);
  expect_endpoint_scaling(make_stable(1.5, 0.8, 0.5), 3.0);
}

TEST(GridLocalTimeTest, HandExample) {
  // Left endpoints k < 4 fall in bins 0, 0, 1, 4 at width 1/4; density h/h_x = 2.
  const auto p = manual_path(0.5, {0.0, 0.1, 0.3, 1.2, 0.05});
  const std::vector<double> cps = {0.0, 1.0, 2.0};
  const auto lt = grid_local_time(p, 0.25, cps);
  EXPECT_TRUE(lt.at(0.0).empty());
  const GridLocalTime::Field at1 = {{0, 4.0}};
  EXPECT_EQ(lt.at(1.0), at1);
  const GridLocalTime::Field at2 = {{0, 4.0}, {1, 2.0}, {4, 2.0}};
  EXPECT_EQ(lt.at(2.0), at2);
  EXPECT_DOUBLE_EQ(lt.mass(2), 2.0);
  EXPECT_DOUBLE_EQ(lt.power_integral(2, 2.0), 6.0);
  EXPECT_THROW((void)lt.at(1.5), DomainError);
  EXPECT_THROW((void)grid_local_time(p, 0.25, std::vector<double>{0.75}), DomainError);
  EXPECT_THROW((void)grid_local_time(p, 0.25, std::vector<double>{2.5}), DomainError);
}

TEST(GridLocalTimeTest, MassAndMonotonicity) {
  const std::vector<double> cps = {0.25, 0.5, 1.0};
  for (std::uint64_t r = 0; r < 50; ++r) {
    CounterRng rng(StreamKey(31).child(r));
    const auto p = sample_levy_path(make_stable(1.3, 1.0, 0.2), 1.0, 1.0 / 512, rng);
    const auto lt = grid_local_time(p, 0.03, cps);
    for (std::size_t j = 0; j < cps.size(); ++j) EXPECT_NEAR(lt.mass(j), cps[j], 1e-12);
    for (std::size_t j = 1; j < cps.size(); ++j)
      for (const auto& [bin, l] : lt.fields[j - 1]) {
        const auto& later = lt.fields[j];
        const auto it = std::lower_bound(later.begin(), later.end(), std::pair{bin, 0.0});
        ASSERT_TRUE(it != later.end() && it->first == bin);
        EXPECT_GE(it->second, l);
      }
  }
}

TEST(GridLocalTimeTest, BrownianSquareIntegralConverges) {
  // E int L_1(x)^2 dx = int int (2 pi |t-s|)^{-1/2} ds dt = 8 / (3 sqrt(2 pi)).
  const double exact = 8.0 / (3.0 * std::sqrt(2.0 * std::numbers::pi));
  const std::vector<double> widths = {0.05, 0.02, 0.01};
  std::vector<double> means;
  for (double h_x : widths) {
    LimitConfig c;
    c.walk_limit = make_stable(2.0, kBrownianChi);
    c.time_step = 1e-4;
    c.bin_width = h_x;
    c.master_seed = 32;
    GammaSampler g(c);
    std::vector<double> v;
    for (std::uint64_t i = 0; i < 2000; ++i) v.push_back(g.local_time_power_integral(i, 1.0, 2.0));
    means.push_back(mean(v));
  }
  EXPECT_LT(std::abs(means[2] - means[1]), std::abs(means[1] - means[0]));
  EXPECT_NEAR(means[2], exact, 0.05 * exact);
}

TEST(Delta, ConstantPathSingleBin) {
  const auto p = manual_path(0.25, {0.0, 0.0, 0.0, 0.0, 0.0});
  const std::vector<double> cps = {0.0, 0.5, 1.0};
  const auto lt = grid_local_time(p, 0.1, cps);
  const SceneryLevy w(make_stable(1.5, 1.0, 0.4), 0.1, StreamKey(33));
  EXPECT_EQ(sample_delta(lt, w, 0.0), 0.0);
  EXPECT_NEAR(sample_delta(lt, w, 1.0), 10.0 * w.increment(0), 1e-12 * std::abs(w.increment(0)) * 10);
  EXPECT_NEAR(sample_delta(lt, w, 0.5), 5.0 * w.increment(0), 1e-12 * std::abs(w.increment(0)) * 10);
}

TEST(Delta, LinearInSceneryScale) {
  CounterRng rng(StreamKey(34));
  const auto p = sample_levy_path(make_stable(1.6, 1.0), 1.0, 1.0 / 256, rng);
  const std::vector<double> cps = {1.0};
  const auto lt = grid_local_time(p, 0.05, cps);
  const SceneryLevy w1(make_stable(1.2, 1.0, -0.3), 0.05, StreamKey(35));
  const SceneryLevy w3(make_stable(1.2, 3.0, -0.3), 0.05, StreamKey(35));
  const double d1 = sample_delta(lt, w1, 1.0);
  EXPECT_NEAR(sample_delta(lt, w3, 1.0), 3.0 * d1, 1e-10 * std::max(1.0, std::abs(d1)));
  EXPECT_DOUBLE_EQ(w3.bin_law().scale, 3.0 * std::pow(0.05, 1.0 / 1.2));
}

LimitConfig small_limit() {
  LimitConfig c;
  c.walk_limit = make_stable(1.5, 1.0, 0.2);
  c.scenery = make_stable(1.3, 0.9, 0.5);
  c.horizon = 1.0;
  c.time_step = 1.0 / 256;
  c.copies = 4;
  c.master_seed = 36;
  return c;
}

TEST(Delta, SamplerMatchesFieldConstruction) {
  const LimitConfig c = small_limit();
  GammaSampler g(c);
  std::vector<double> path(g.steps() + 1);
  const std::vector<double> cps = {0.0, 0.25, 0.5, 1.0};
  for (std::uint64_t r = 0; r < 20; ++r) {
    g.delta_path(r, 3, path);
    const StreamKey base = StreamKey(c.master_seed).child({r, 3});
    CounterRng rng(base.child(kLevyStream));
    const auto y = sample_levy_path(c.walk_limit, c.horizon, c.time_step, rng);
    const auto lt = grid_local_time(y, c.effective_bin_width(), cps);
    const SceneryLevy w(c.scenery, c.effective_bin_width(), base.child(kSceneryLevyStream));
    for (double t : cps) {
      const double d = sample_delta(lt, w, t);
      const auto k = static_cast<std::size_t>(std::lround(t * 256));
      EXPECT_NEAR(path[k], d, 1e-9 * std::max(1.0, std::abs(d)));
    }
  }
}

TEST(Delta, GaussianConditionalVariance) {
  // Given L, Delta(1) ~ N(0, 2 sigma^2 int L_1^2).
  const double sigma = 0.8;
  const std::vector<double> cps = {1.0};
  std::vector<double> diff;
  for (std::uint64_t r = 0; r < 10000; ++r) {
    CounterRng rng(StreamKey(37).child(r));
    const auto y = sample_levy_path(make_stable(1.7, 1.0), 1.0, 1.0 / 256, rng);
    const auto lt = grid_local_time(y, 0.05, cps);
    const SceneryLevy w(make_stable(2.0, sigma), 0.05, StreamKey(38).child(r));
    const double d = sample_delta(lt, w, 1.0);
    diff.push_back(d * d - 2.0 * sigma * sigma * lt.power_integral(0, 2.0));
  }
  EXPECT_NEAR(mean(diff), 0.0, 4.0 * std::sqrt(variance(diff) / static_cast<double>(diff.size())));
}

TEST(Gamma, SingleCopyIsDelta) {
  LimitConfig c = small_limit();
  c.copies = 1;
  GammaSampler g(c);
  std::vector<double> gamma(g.steps() + 1);
  std::vector<double> delta(g.steps() + 1);
  g.gamma_path(7, gamma);
  g.delta_path(7, 0, delta);
  EXPECT_EQ(gamma, delta);
  const std::vector<double> times = {0.5, 1.0};
  const auto at = sample_gamma(c, 7, times);
  EXPECT_EQ(at[0], gamma[128]);
  EXPECT_EQ(at[1], gamma[256]);
}

TEST(Gamma, CopiesSumWithNormalization) {
  const LimitConfig c = small_limit();
  GammaSampler g(c);
  std::vector<double> sum(g.steps() + 1, 0.0);
  std::vector<double> d(g.steps() + 1);
  for (std::uint64_t i = 0; i < 4; ++i) {
    g.delta_path(2, i, d);
    for (std::size_t k = 0; k < d.size(); ++k) sum[k] += d[k];
  }
  std::vector<double> gamma(g.steps() + 1);
  g.gamma_path(2, gamma);
  for (std::size_t k = 0; k < d.size(); ++k)
    EXPECT_NEAR(gamma[k], sum[k] * std::pow(4.0, -1.0 / 1.3), 1e-12 * std::max(1.0, std::abs(gamma[k])));
}

TEST(Gamma, GaussianKurtosisFallsWithCopies) {
  // Given the local times, Gamma_m(1) is centered Gaussian with variance
  // proportional to the mean of m independent I = int L_1^2, so its excess
  // kurtosis is 3 Var(I) / (m E[I]^2).
  LimitConfig c;
  c.walk_limit = make_stable(2.0, kBrownianChi);
  c.scenery = make_stable(2.0, 1.0);
  c.time_step = 1.0 / 256;
  c.master_seed = 39;
  const int reps = 10000;
  GammaSampler lt(c);
  std::vector<double> integrals;
  for (std::uint64_t i = 0; i < reps; ++i) integrals.push_back(lt.local_time_power_integral(i, 1.0, 2.0));
  const double k_one = 3.0 * variance(integrals) / (mean(integrals) * mean(integrals));
  auto kurtosis = [&](std::int64_t m) {
    c.copies = m;
    GammaSampler g(c);
    const std::vector<double> t = {1.0};
    std::vector<double> v;
    for (std::uint64_t r = 0; r < reps; ++r) v.push_back(g.gamma_at(r, t)[0]);
    return excess_kurtosis(v);
  };
  const double k1 = kurtosis(1);
  const double k16 = kurtosis(16);
  EXPECT_NEAR(k1, k_one, 0.15);
  EXPECT_NEAR(k16, k_one / 16.0, 0.15);
  EXPECT_GT(k1 - k16, 0.1);
}

TEST(GammaCf, TrivialValues) {
  const LimitConfig c = small_limit();
  const std::vector<double> zero = {0.0, 0.0};
  const std::vector<double> times = {0.5, 1.0};
  const auto at_zero = gamma_cf(c, zero, times, 50);
  EXPECT_EQ(at_zero.value, std::complex<double>(1.0, 0.0));
  const std::vector<double> theta = {0.7, -0.4};
  const auto v = gamma_cf(c, theta, times, 50);
  EXPECT_LE(std::abs(v.value), 1.0);
  LimitConfig sym = c;
  sym.scenery.skewness = 0.0;
  EXPECT_EQ(gamma_cf(sym, theta, times, 50).value.imag(), 0.0);
  EXPECT_THROW((void)gamma_cf(c, theta, std::vector<double>{1.0}, 50), DomainError);
  EXPECT_THROW((void)gamma_cf(c, theta, times, 0), DomainError);
}

TEST(GammaCf, ConjugateSymmetryAndWorkers) {
  const LimitConfig c = small_limit();
  const std::vector<double> times = {0.5, 1.0};
  const std::vector<double> theta = {0.7, -0.4};
  const std::vector<double> neg = {-0.7, 0.4};
  const auto a = gamma_cf(c, theta, times, 200);
  const auto b = gamma_cf(c, neg, times, 200);
  EXPECT_NEAR(a.value.real(), b.value.real(), 1e-14);
  EXPECT_NEAR(a.value.imag(), -b.value.imag(), 1e-14);
  EXPECT_GT(std::abs(a.value.imag()), 0.0);
  const auto par = gamma_cf(c, theta, times, 200, 4);
  EXPECT_EQ(par.value, a.value);
}

TEST(GammaCf, SelfSimilarity) {
  // Gamma(2t) has the law of 2^delta Gamma(t).
  LimitConfig c = small_limit();
  c.horizon = 2.0;
  c.time_step = 1.0 / 512;
  const double theta = 0.6;
  const std::vector<double> th = {theta};
  const std::vector<double> two = {2.0};
  const auto a = gamma_cf(c, th, two, 3000);
  c.master_seed = 40;
  const std::vector<double> scaled = {theta * std::pow(2.0, c.delta())};
  const std::vector<double> one = {1.0};
  const auto b = gamma_cf(c, scaled, one, 3000);
  EXPECT_NEAR(a.value.real(), b.value.real(), 4.0 * std::hypot(a.std_error_re, b.std_error_re));
  EXPECT_NEAR(a.value.imag(), b.value.imag(), 4.0 * std::hypot(a.std_error_im, b.std_error_im));
}

TEST(CBeta, QuadratureMatchesClosedForm) {
  for (double beta : {0.1, 0.5, 0.8, 1.0, 1.3, 1.5, 1.9}) {
    const double closed = c_beta_closed_form(beta);
    EXPECT_NEAR(c_beta(beta), closed, 1e-10 * closed) << beta;
  }
  EXPECT_NEAR(c_beta(1.0), 2.0 / std::numbers::pi, 1e-10);
  EXPECT_NEAR(c_beta(0.5), 0.7978845608028653, 1e-10);
  EXPECT_THROW((void)c_beta(2.0), DomainError);
  EXPECT_THROW((void)c_beta_closed_form(0.0), DomainError);
}

TEST(TailCheck, SyntheticParetoSamples) {
  const double beta = 1.5;
  const std::size_t n = 100000;
  SampleSet one{{}, "one"};
  SampleSet two{{}, "two"};
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = std::pow(static_cast<double>(i) / static_cast<double>(n + 1), -1.0 / beta);
    two.values.push_back(x);
    one.values.push_back(i % 2 ? x : 0.0);
  }
  const SampleSet lt{{2.0, 2.0, 2.0}, "lt"};
  const auto rep = sup_tail_check(one, two, lt, beta, 1.2, 0.0, {});
  ASSERT_FALSE(rep.points.empty());
  const auto& pt = rep.points[rep.resolvable];
  EXPECT_GE(pt.exceed_two_sided, 100U);
  EXPECT_NEAR(static_cast<double>(pt.exceed_one_sided) / static_cast<double>(pt.exceed_two_sided), 0.5, 0.02);
  // Exact Pareto: u^beta P(X >= u) = 1.
  EXPECT_NEAR(pt.scaled_two_sided.value, 1.0, 0.05);
  const double constant = c_beta(beta) * std::pow(1.2, beta) * 2.0;
  EXPECT_NEAR(rep.constant_two_sided.value, constant, 1e-12);
  EXPECT_NEAR(rep.constant_one_sided.value, 0.5 * constant, 1e-12);
  EXPECT_NEAR(rep.hill_default, beta, 0.05 * beta);
  EXPECT_FALSE(rep.hill_sweep.empty());
}

TEST(TailCheck, LocalTimeIntegralScaling) {
  // int L_{2T}^beta dx has the law of 2^{delta beta} int L_T^beta dx.
  LimitConfig c;
  c.walk_limit = make_stable(2.0, kBrownianChi);
  c.scenery = make_stable(1.5, 1.0);
  c.time_step = 1.0 / 1024;
  c.bin_width = 0.02;
  c.master_seed = 41;
  GammaSampler g(c);
  std::vector<double> a;
  std::vector<double> b;
  for (std::uint64_t i = 0; i < 3000; ++i) {
    a.push_back(g.local_time_power_integral(i, 1.0, 1.5));
    b.push_back(g.local_time_power_integral(100000 + i, 2.0, 1.5));
  }
  const double ratio = mean(b) / mean(a);
  const double rel = std::hypot(std::sqrt(variance(a) / 3000.0) / mean(a),
                                std::sqrt(variance(b) / 3000.0) / mean(b));
  EXPECT_NEAR(ratio, std::pow(2.0, c.delta() * 1.5), 4.0 * rel * ratio + 0.02 * ratio);
}

TEST(Holder, Epsilon) {
  EXPECT_EQ(holder_epsilon(1.5), 0.0);
  EXPECT_EQ(holder_epsilon(1.0), 0.0);
  EXPECT_EQ(holder_epsilon(0.8), 0.5);
  EXPECT_THROW((void)holder_epsilon(2.0), DomainError);
}

TEST(Holder, HandExample) {
  const std::vector<double> t = {0.0, 0.1, 0.2};
  const std::vector<double> v = {0.0, 1.0, 1.0};
  const double w1 = std::sqrt(0.1) * std::sqrt(std::log(10.0));
  const double w2 = std::sqrt(0.2) * std::sqrt(std::log(5.0));
  EXPECT_NEAR(holder_modulus(t, v, 2.0, 0.0), std::max(1.0 / w1, 1.0 / w2), 1e-12);
  const std::vector<double> far_t = {0.0, 0.5};
  const std::vector<double> far_v = {0.0, 100.0};
  EXPECT_EQ(holder_modulus(far_t, far_v, 2.0, 0.0), 0.0);
  const std::vector<double> back = {0.2, 0.1};
  EXPECT_THROW((void)holder_modulus(back, far_v, 2.0, 0.0), DomainError);
}

TEST(Holder, UniformGridMatchesPairwise) {
  CounterRng rng(StreamKey(42));
  std::vector<double> t;
  std::vector<double> v;
  double y = 0.0;
  for (int k = 0; k <= 300; ++k) {
    t.push_back(k / 300.0);
    v.push_back(y);
    y += sample_stable(make_stable(1.5, 0.05), rng);
  }
  const double alpha = 1.6;
  const double eps = 0.5;
  double brute = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const double lag = t[j] - t[i];
      if (lag >= std::exp(-1.0)) continue;
      const double w = std::pow(lag, 1.0 - 1.0 / alpha) * std::pow(-std::log(lag), 1.0 / alpha + eps);
      brute = std::max(brute, std::abs(v[j] - v[i]) / w);
    }
  EXPECT_NEAR(holder_modulus(t, v, alpha, eps), brute, 1e-12 * brute);
}

}  // namespace
}  // namespace rwrs
