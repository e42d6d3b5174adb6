// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "rwrs/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>

#include "rwrs/error.hpp"

namespace rwrs {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double mean(std::span<const double> x) {
  if (x.empty()) throw DegenerateSampleError("mean of an empty sample");
  KahanSum s;
  for (double v : x) s.add(v);
  return s.value() / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw DegenerateSampleError("variance needs at least two values");
  const double m = mean(x);
  KahanSum s;
  for (double v : x) s.add((v - m) * (v - m));
  return s.value() / static_cast<double>(x.size() - 1);
}

double median(std::vector<double> x) {
  if (x.empty()) throw DegenerateSampleError("median of an empty sample");
  const auto mid = x.size() / 2;
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(mid), x.end());
  const double hi = x[mid];
  if (x.size() % 2 == 1) return hi;
  const double lo = *std::max_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

namespace {
double central_moment_ratio(std::span<const double> x, int order) {
  const double m = mean(x);
  KahanSum m2;
  KahanSum mk;
  for (double v : x) {
    const double d = v - m;
    m2.add(d * d);
    mk.add(std::pow(d, order));
  }
  const double n = static_cast<double>(x.size());
  const double var = m2.value() / n;
  if (!(var > 0.0)) throw DegenerateSampleError("zero-variance sample");
  return mk.value() / n / std::pow(var, 0.5 * order);
}
}  // namespace

double sample_skewness(std::span<const double> x) { return central_moment_ratio(x, 3); }

double excess_kurtosis(std::span<const double> x) { return central_moment_ratio(x, 4) - 3.0; }

double hill_estimator(const SampleSet& samples, std::size_t k) {
  const auto n = samples.size();
  if (k < 2 || k >= n)
    throw DomainError("hill_estimator: k must satisfy 2 <= k < n");
  std::vector<double> x = samples.values;
  for (double v : x)
    if (!(v > 0.0)) throw DomainError("hill_estimator: samples must be positive");
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k), x.end(),
                   std::greater<>());
  const double threshold = x[k];
  const double log_threshold = std::log(threshold);
  KahanSum s;
  for (std::size_t i = 0; i < k; ++i) s.add(std::log(x[i]) - log_threshold);
  const double mean_excess = s.value() / static_cast<double>(k);
  if (!(mean_excess > 0.0))
    throw DegenerateSampleError("hill_estimator: top order statistics are all equal");
  return 1.0 / mean_excess;
}

std::size_t default_hill_k(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 0.6)));
}

Estimate loglog_slope(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 3) throw DomainError("loglog_slope needs at least three pairs");
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& [n, v] : pairs) {
    if (!(n > 0.0) || !(v > 0.0)) throw DomainError("loglog_slope: entries must be positive");
    lx.push_back(std::log(n));
    ly.push_back(std::log(v));
  }
  const double mx = mean(lx);
  const double my = mean(ly);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateSampleError("loglog_slope: all n equal");
  const double slope = sxy / sxx;
  double sse = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - my - slope * (lx[i] - mx);
    sse += r * r;
  }
  const double dof = static_cast<double>(lx.size() - 2);
  return {slope, std::sqrt(sse / dof / sxx)};
}

CfEstimate empirical_cf(const SampleSet& samples, double u) {
  if (samples.values.empty()) throw DegenerateSampleError("empirical_cf of an empty sample");
  const double n = static_cast<double>(samples.size());
  KahanSum c, s, c2, s2;
  for (double x : samples.values) {
    const double cx = std::cos(u * x);
    const double sx = std::sin(u * x);
    c.add(cx);
    s.add(sx);
    c2.add(cx * cx);
    s2.add(sx * sx);
  }
  const double mc = c.value() / n;
  const double ms = s.value() / n;
  CfEstimate out;
  out.value = {mc, ms};
  if (samples.size() > 1) {
    out.std_error_re = std::sqrt(std::max(0.0, (c2.value() / n - mc * mc) / (n - 1.0)));
    out.std_error_im = std::sqrt(std::max(0.0, (s2.value() / n - ms * ms) / (n - 1.0)));
  }
  return out;
}

KsResult ks_distance(const SampleSet& a, const SampleSet& b) {
  if (a.values.empty() || b.values.empty())
    throw DegenerateSampleError("ks_distance needs non-empty samples");
  std::vector<double> x = a.values;
  std::vector<double> y = b.values;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = nx * ny / (nx + ny);
  return {d, kolmogorov_survival(std::sqrt(ne) * d)};
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.0) {
    // Theta-function form converges fast for small lambda.
    constexpr double kPi2 = 9.869604401089358;
    double cdf = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double j = 2.0 * k - 1.0;
      const double term = std::exp(-j * j * kPi2 / (8.0 * lambda * lambda));
      cdf += term;
      if (term < 1e-300) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_critical_value(std::size_t n, std::size_t m, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("ks_critical_value: level in (0,1)");
  double lo = 0.0;
  double hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_survival(mid) > level ? lo : hi) = mid;
  }
  const double nx = static_cast<double>(n);
  const double ny = static_cast<double>(m);
  return 0.5 * (lo + hi) / std::sqrt(nx * ny / (nx + ny));
}

}  // namespace rwrs
