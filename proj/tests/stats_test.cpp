// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "rwrs/error.hpp"
#include "rwrs/stable.hpp"
#include "rwrs/stats.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {
namespace {

SampleSet stable_set(double index, std::size_t n, StreamKey key) {
  CounterRng rng(key);
  SampleSet s{{}, "stable"};
  s.values.resize(n);
  for (auto& v : s.values) v = sample_stable(make_stable(index, 1.0), rng);
  return s;
}

TEST(Hill, ParetoQuantileSequence) {
  const std::size_t n = 1'000'000;
  const double a = 1.7;
  SampleSet s{{}, "pareto quantiles"};
  for (std::size_t i = 1; i <= n; ++i)
    s.values.push_back(std::pow(static_cast<double>(i) / static_cast<double>(n + 1), -1.0 / a));
  EXPECT_NEAR(hill_estimator(s, n / 10), a, 0.02 * a);
}

TEST(Hill, ScaleInvariant) {
  SampleSet s = stable_set(1.2, 10000, StreamKey(4));
  for (auto& v : s.values) v = std::abs(v);
  SampleSet scaled = s;
  for (auto& v : scaled.values) v *= 37.5;
  const double h = hill_estimator(s, 300);
  EXPECT_NEAR(hill_estimator(scaled, 300), h, 1e-12 * h);
}

TEST(Hill, Errors) {
  const SampleSet equal{std::vector<double>(100, 2.0), "constant"};
  EXPECT_THROW((void)hill_estimator(equal, 10), DegenerateSampleError);
  const SampleSet s{{1.0, 2.0, 3.0, 4.0}, "small"};
  EXPECT_THROW((void)hill_estimator(s, 1), DomainError);
  EXPECT_THROW((void)hill_estimator(s, 4), DomainError);
  const SampleSet negative{{1.0, -2.0, 3.0, 4.0}, "negative"};
  EXPECT_THROW((void)hill_estimator(negative, 2), DomainError);
  EXPECT_EQ(default_hill_k(1000), 64U);
}

TEST(Hill, StableTailIndex) {
  SampleSet s = stable_set(1.5, 1'000'000, StreamKey(5));
  for (auto& v : s.values) v = std::abs(v);
  EXPECT_NEAR(hill_estimator(s, 1000), 1.5, 0.1);
}

TEST(LoglogSlope, ExactPowers) {
  std::vector<std::pair<double, double>> sq;
  std::vector<std::pair<double, double>> p15;
  for (double n : {8.0, 16.0, 64.0, 1000.0}) {
    sq.emplace_back(n, n * n);
    p15.emplace_back(n, 4.2 * std::pow(n, 1.5));
  }
  const Estimate e = loglog_slope(sq);
  EXPECT_NEAR(e.value, 2.0, 1e-12);
  EXPECT_NEAR(e.std_error, 0.0, 1e-10);
  EXPECT_NEAR(loglog_slope(p15).value, 1.5, 1e-12);
  const std::vector<std::pair<double, double>> bad = {{1.0, 1.0}, {2.0, 0.0}, {3.0, 2.0}};
  EXPECT_THROW((void)loglog_slope(bad), DomainError);
  const std::vector<std::pair<double, double>> two = {{1.0, 1.0}, {2.0, 2.0}};
  EXPECT_THROW((void)loglog_slope(two), DomainError);
}

TEST(LoglogSlope, SelfIntersectionScaling) {
  std::vector<std::int64_t> cps;
  for (int k = 8; k <= 12; ++k) cps.push_back(std::int64_t{1} << k);
  std::vector<double> sums(cps.size(), 0.0);
  std::vector<std::int64_t> pos;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    CounterRng rng(StreamKey(10).child(static_cast<std::uint64_t>(r)));
    generate_positions(cps.back(), WalkIncrementLaw::simple_symmetric(), rng, pos);
    const auto f = scan_functionals(pos, cps);
    for (std::size_t j = 0; j < cps.size(); ++j) sums[j] += static_cast<double>(f[j].self_intersections);
  }
  std::vector<std::pair<double, double>> pts;
  for (std::size_t j = 0; j < cps.size(); ++j) pts.emplace_back(static_cast<double>(cps[j]), sums[j] / reps);
  const double slope = loglog_slope(pts).value;
  EXPECT_NEAR(slope, 1.5, 0.05);
  for (auto& p : pts) p.second *= 9.0;
  EXPECT_NEAR(loglog_slope(pts).value, slope, 1e-12);
}

TEST(EmpiricalCf, Trivial) {
  const SampleSet zeros{std::vector<double>(50, 0.0), "zeros"};
  const auto c = empirical_cf(zeros, 3.0);
  EXPECT_EQ(c.value, std::complex<double>(1.0, 0.0));
  const SampleSet s = stable_set(0.9, 100, StreamKey(2));
  const auto o = empirical_cf(s, 0.0);
  EXPECT_EQ(o.value, std::complex<double>(1.0, 0.0));
  for (double u : {-2.0, 0.3, 10.0}) EXPECT_LE(std::abs(empirical_cf(s, u).value), 1.0 + 1e-15);
}

TEST(EmpiricalCf, StableAtUnitFrequency) {
  const SampleSet s = stable_set(1.5, 200000, StreamKey(3));
  const auto c = empirical_cf(s, 1.0);
  EXPECT_NEAR(c.value.real(), std::exp(-1.0), 3.0 * c.std_error_re);
  EXPECT_NEAR(c.value.imag(), 0.0, 3.0 * c.std_error_im);
}

TEST(Ks, TrivialCasesAndSymmetry) {
  const SampleSet a = stable_set(1.5, 1000, StreamKey(1));
  EXPECT_EQ(ks_distance(a, a).distance, 0.0);
  const SampleSet lo{{1.0, 2.0, 3.0}, "lo"};
  const SampleSet hi{{4.0, 5.0}, "hi"};
  EXPECT_EQ(ks_distance(lo, hi).distance, 1.0);
  const SampleSet b = stable_set(1.2, 700, StreamKey(2));
  EXPECT_EQ(ks_distance(a, b).distance, ks_distance(b, a).distance);
  const double d = ks_distance(a, b).distance;
  EXPECT_GE(d, 0.0);
  EXPECT_LE(d, 1.0);
}

TEST(Ks, TiesHandled) {
  const SampleSet a{{0.0, 0.0, 1.0, 1.0}, "a"};
  const SampleSet b{{0.0, 1.0, 1.0, 1.0}, "b"};
  EXPECT_DOUBLE_EQ(ks_distance(a, b).distance, 0.25);
}

TEST(Ks, KolmogorovDistribution) {
  EXPECT_NEAR(kolmogorov_survival(1.0), 0.26999967167735456, 1e-12);
  EXPECT_NEAR(kolmogorov_survival(0.5), 0.9639452436648751, 1e-12);
  EXPECT_NEAR(kolmogorov_survival(1.6276236115189504), 0.01, 1e-12);
  const double crit = ks_critical_value(400, 400, 0.01);
  EXPECT_NEAR(crit, 1.6276236115189504 * std::sqrt(2.0 / 400.0), 1e-9);
}

TEST(Ks, NullPValuesAreUniform) {
  int small = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const auto k = static_cast<std::uint64_t>(t);
    const SampleSet a = stable_set(1.5, 10000, StreamKey(60).child({k, 0}));
    const SampleSet b = stable_set(1.5, 10000, StreamKey(60).child({k, 1}));
    small += ks_distance(a, b).p_value < 0.05;
  }
  EXPECT_NEAR(static_cast<double>(small) / trials, 0.05, 0.02);
}

TEST(Moments, Basic) {
  const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(mean(x), 2.5);
  EXPECT_DOUBLE_EQ(variance(x), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(median(x), 2.5);
  EXPECT_DOUBLE_EQ(sample_skewness(x), 0.0);
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.0), "-2");
}

}  // namespace
}  // namespace rwrs
