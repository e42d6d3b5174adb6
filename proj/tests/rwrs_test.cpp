// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "rwrs/error.hpp"
#include "rwrs/rwrs.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {
namespace {

TEST(RwrsValue, HandExample) {
  const auto w = WalkPath::from_positions({0, 1, 0});
  Scenery s(SceneryLaw::exact_stable(make_stable(1.5, 1.0)), 3, 0);
  const double a = s.value(0);
  const double b = s.value(1);
  EXPECT_EQ(rwrs_value(w, s, 0.0), a);
  EXPECT_DOUBLE_EQ(rwrs_value(w, s, 2.0), 2 * a + b);
  EXPECT_DOUBLE_EQ(rwrs_local_time_sum(w, s, 2), 2 * a + b);
  EXPECT_DOUBLE_EQ(rwrs_value(w, s, 0.5), a + 0.5 * b);
  EXPECT_THROW((void)rwrs_value(w, s, 2.5), DomainError);
  EXPECT_THROW((void)rwrs_value(w, s, -0.1), DomainError);
}

TEST(RwrsValue, PathSumEqualsLocalTimeSum) {
  const auto law = SceneryLaw::two_sided_pareto(0.8, 0.6, 0.4);
  for (std::uint64_t r = 0; r < 1000; ++r) {
    const auto walk_law = r % 2 ? WalkIncrementLaw::simple_symmetric() : WalkIncrementLaw::discrete_pareto(1.4);
    const auto w = generate_walk(200, walk_law, StreamKey(8).child(r));
    Scenery s(law, 8, r);
    const auto z = build_rwrs(w, s);
    for (std::int64_t m : {0, 13, 200}) {
      const double lt = rwrs_local_time_sum(w, s, m);
      const double path = z.values()[static_cast<std::size_t>(m)];
      EXPECT_NEAR(path, lt, 1e-9 * std::max(1.0, std::abs(lt)));
    }
  }
}

TEST(DeltaExponent, Values) {
  EXPECT_DOUBLE_EQ(delta_exponent(2, 2), 0.75);
  EXPECT_DOUBLE_EQ(delta_exponent(2, 1), 1.0);
  EXPECT_NEAR(delta_exponent(1.5, 0.8), 1.0 - 2.0 / 3.0 + 1.0 / 1.2, 1e-15);
  EXPECT_THROW((void)delta_exponent(1.0, 1.0), DomainError);
  EXPECT_THROW((void)delta_exponent(2.0, 2.5), DomainError);
  EXPECT_THROW((void)delta_exponent(2.0, 0.0), DomainError);
}

TEST(FeasiblePair, TableCases) {
  const auto top = feasible_pair(2, 2);
  EXPECT_EQ(top.branch, FeasibleBranch::BetaAboveOne);
  EXPECT_DOUBLE_EQ(top.hurst, 0.75);
  EXPECT_DOUBLE_EQ(top.upper, 0.75);
  const auto low = feasible_pair(1.2, 0.5);
  EXPECT_EQ(low.branch, FeasibleBranch::BetaBelowOne);
  EXPECT_NEAR(low.hurst, 1.8333333333333333, 1e-12);
  EXPECT_DOUBLE_EQ(low.lower, 1.5);
  EXPECT_DOUBLE_EQ(low.upper, 2.0);
  EXPECT_EQ(feasible_pair(1.7, 1.0).branch, FeasibleBranch::BetaOne);
}

TEST(FeasiblePair, RandomSweepHasNoViolations) {
  CounterRng rng(StreamKey(99));
  for (int i = 0; i < 10000; ++i) {
    const double alpha = 2.0 - rng.uniform();
    const double beta = 2.0 * rng.uniform();
    EXPECT_NO_THROW((void)feasible_pair(alpha, beta)) << alpha << "," << beta;
  }
}

TEST(RescaledRwrs, Definition) {
  const auto w = generate_walk(64, WalkIncrementLaw::simple_symmetric(), StreamKey(1));
  Scenery s(SceneryLaw::exact_stable(make_stable(1.5, 1.0)), 1, 0);
  const double delta = delta_exponent(2, 1.5);
  EXPECT_DOUBLE_EQ(rescaled_rwrs(w, s, 16.0, 0.0), std::pow(16.0, -delta) * s.value(0));
  EXPECT_DOUBLE_EQ(rescaled_rwrs(w, s, 1.0, 1.0), rwrs_value(w, s, 1.0));
  for (double t : {0.3, 1.0, 3.9}) {
    const double d = rescaled_rwrs(w, s, 16.0, t);
    EXPECT_NEAR(d * std::pow(16.0, delta), rwrs_value(w, s, 16.0 * t), 1e-12 * std::abs(d) * 100);
  }
  EXPECT_THROW((void)rescaled_rwrs(w, s, 16.0, 4.5), DomainError);
}

SchemaConfig small_schema() {
  SchemaConfig c;
  c.alpha = 1.5;
  c.beta = 1.2;
  c.nu = 0.4;
  c.n = 256;
  c.copies = 1;
  c.times = {0.25, 0.5, 1.0, 1.3};
  c.master_seed = 17;
  return c;
}

TEST(Schema, SingleCopyIsRescaledWalk) {
  const SchemaConfig c = small_schema();
  const auto g = sample_schema(c, 5);
  const StreamKey base = StreamKey(c.master_seed).child({5, 0});
  const auto w = generate_walk(c.walk_length(), c.walk_law(), base.child(kWalkStream));
  Scenery s(c.scenery_law(), base.child(kSceneryStream));
  ASSERT_EQ(g.size(), c.times.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double d = rescaled_rwrs(w, s, static_cast<double>(c.n), c.times[j]);
    EXPECT_NEAR(g[j], d, 1e-12 * std::max(1.0, std::abs(d)));
  }
}

TEST(Schema, ZeroSceneryGivesZero) {
  SchemaConfig c = small_schema();
  c.scenery_kind = SceneryKind::Zero;
  c.copies = 8;
  for (double v : sample_schema(c, 0)) EXPECT_EQ(v, 0.0);
}

TEST(Schema, CopiesSumWithNormalization) {
  SchemaConfig c = small_schema();
  c.copies = 5;
  SchemaEvaluator ev(c);
  std::vector<double> sum(c.times.size(), 0.0);
  std::vector<double> d(c.times.size());
  for (std::uint64_t i = 0; i < 5; ++i) {
    ev.rescaled_copy(2, i, d);
    for (std::size_t j = 0; j < d.size(); ++j) sum[j] += d[j];
  }
  const auto g = ev.sample(2);
  for (std::size_t j = 0; j < d.size(); ++j)
    EXPECT_NEAR(g[j], sum[j] * std::pow(5.0, -1.0 / 1.2), 1e-12 * std::max(1.0, std::abs(g[j])));
  EXPECT_EQ(g, sample_schema(c, 2));
}

TEST(Schema, Validation) {
  SchemaConfig c = small_schema();
  c.times = {1.0, 0.5};
  EXPECT_THROW(c.validate(), DomainError);
  c = small_schema();
  c.copies = -1;
  EXPECT_THROW(c.validate(), DomainError);
  c = small_schema();
  c.beta = 1.0;
  EXPECT_THROW(c.validate(), DomainError);  // nu != 0 at beta = 1
  c = small_schema();
  c.copies = 0;
  EXPECT_EQ(c.copy_count(), 16);
}

TEST(KsFunctional, TrivialCases) {
  SchemaConfig c = small_schema();
  const auto w = generate_walk(512, c.walk_law(), StreamKey(3));
  const std::vector<double> zeros = {0.0, 0.0};
  const std::vector<double> times = {0.5, 1.0};
  EXPECT_EQ(ks_functional(w, c, zeros, times), std::complex<double>(0.0, 0.0));
  c.nu = 0.0;
  const std::vector<double> theta = {0.7, -1.1};
  EXPECT_EQ(ks_functional(w, c, theta, times).imag(), 0.0);
}

TEST(KsFunctional, GaussianCaseIsSelfIntersections) {
  SchemaConfig c;
  c.alpha = 2.0;
  c.beta = 2.0;
  c.sigma = 1.3;
  c.n = 1024;
  const auto w = generate_walk(1024, c.walk_law(), StreamKey(6));
  const std::vector<double> theta = {1.0};
  const std::vector<double> times = {1.0};
  const double v = static_cast<double>(local_time_field(w, 1024).sum_squares());
  const double expected = 1.3 * 1.3 * std::pow(1024.0, -1.5) * v;
  EXPECT_NEAR(ks_functional(w, c, theta, times).real(), expected, 1e-12 * expected);
}

}  // namespace
}  // namespace rwrs
