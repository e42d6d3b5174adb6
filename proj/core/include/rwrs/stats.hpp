// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rwrs {

/// Neumaier-compensated running sum. Deterministic for a fixed add order.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Shortest round-trip decimal form; stable across runs and platforms.
[[nodiscard]] std::string format_double(double x);

struct SampleSet {
  std::vector<double> values;
  std::string label;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

[[nodiscard]] double mean(std::span<const double> x);
/// Unbiased sample variance.
[[nodiscard]] double variance(std::span<const double> x);
[[nodiscard]] double median(std::vector<double> x);
[[nodiscard]] double sample_skewness(std::span<const double> x);
[[nodiscard]] double excess_kurtosis(std::span<const double> x);

/// Hill tail-index estimate from the k largest values:
/// 1 / mean_{i<k} log(X_(i) / X_(k)), order statistics descending.
[[nodiscard]] double hill_estimator(const SampleSet& samples, std::size_t k);
/// ceil(n^0.6).
[[nodiscard]] std::size_t default_hill_k(std::size_t n);

/// Least-squares slope of log(value) against log(n).
[[nodiscard]] Estimate loglog_slope(std::span<const std::pair<double, double>> pairs);

struct CfEstimate {
  std::complex<double> value;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
};

/// mean of exp(i u x) with per-component standard errors.
[[nodiscard]] CfEstimate empirical_cf(const SampleSet& samples, double u);

struct KsResult {
  double distance = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov distance with asymptotic p-value.
[[nodiscard]] KsResult ks_distance(const SampleSet& a, const SampleSet& b);
/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
[[nodiscard]] double kolmogorov_survival(double lambda);
/// Two-sample distance at which the asymptotic p-value equals `level`.
[[nodiscard]] double ks_critical_value(std::size_t n, std::size_t m, double level);

}  // namespace rwrs
