// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "rwrs/stable.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rwrs/error.hpp"

namespace rwrs {

namespace {

constexpr double kPi = std::numbers::pi;

double sgn(double u) { return (u > 0.0) - (u < 0.0); }

// Unit-scale strictly stable variate.
double standard_stable(double index, double skewness, CounterRng& rng) {
  const double v = kPi * (rng.uniform() - 0.5);
  if (index == 2.0) return 2.0 * std::sin(v) * std::sqrt(-std::log(rng.uniform()));
  if (index == 1.0) return std::tan(v);
  const double w = -std::log(rng.uniform());
  const double t = skewness * std::tan(0.5 * kPi * index);
  const double shift = std::atan(t) / index;
  const double factor = std::pow(1.0 + t * t, 0.5 / index);
  const double arg = index * (v + shift);
  return factor * std::sin(arg) / std::pow(std::cos(v), 1.0 / index) *
         std::pow(std::cos(v - arg) / w, (1.0 - index) / index);
}

}  // namespace

void StableLaw::validate() const {
  if (!(index > 0.0 && index <= 2.0))
    throw DomainError("stable index must lie in (0,2], got " + std::to_string(index));
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw DomainError("stable scale must be positive, got " + std::to_string(scale));
  if (!(skewness >= -1.0 && skewness <= 1.0))
    throw DomainError("stable skewness must lie in [-1,1], got " + std::to_string(skewness));
  if (index == 1.0 && skewness != 0.0)
    throw DomainError("index 1 requires skewness 0 (asymmetric Cauchy-type laws unsupported)");
}

std::string StableLaw::describe() const {
  std::ostringstream os;
  os << "stable(index=" << index << ", scale=" << scale << ", skewness=" << skewness << ")";
  return os.str();
}

StableLaw make_stable(double index, double scale, double skewness) {
  StableLaw law{index, scale, skewness};
  law.validate();
  return law;
}

std::complex<double> stable_cf(const StableLaw& law, double u) {
  if (u == 0.0) return {1.0, 0.0};
  const double mag = std::pow(law.scale * std::abs(u), law.index);
  // tan(pi) is not exactly zero in floating point.
  const double skew = law.index == 2.0 ? 0.0 : law.skewness * std::tan(0.5 * kPi * law.index);
  return std::exp(std::complex<double>(-mag, mag * skew * sgn(u)));
}

double sample_stable(const StableLaw& law, CounterRng& rng) {
  return law.scale * standard_stable(law.index, law.skewness, rng);
}

void fill_stable(const StableLaw& law, CounterRng& rng, std::span<double> out) {
  if (law.index != 2.0) {
    for (auto& x : out) x = sample_stable(law, rng);
    return;
  }
  const double s = law.scale * std::numbers::sqrt2;
  std::size_t i = 0;
  for (; i + 1 < out.size(); i += 2) {
    const double r = std::sqrt(-2.0 * std::log(rng.uniform()));
    const double theta = 2.0 * kPi * rng.uniform();
    out[i] = s * r * std::cos(theta);
    out[i + 1] = s * r * std::sin(theta);
  }
  if (i < out.size()) out[i] = sample_stable(law, rng);
}

double zeta_tail(double s, std::int64_t first) {
  if (!(s > 1.0)) throw DomainError("zeta requires s > 1");
  if (first < 1) throw DomainError("zeta tail requires first >= 1");
  // Direct summation up to a cutoff, Euler-Maclaurin beyond it.
  constexpr std::int64_t kCut = 32;
  double head = 0.0;
  std::int64_t k = first;
  for (; k < kCut; ++k) head += std::pow(static_cast<double>(k), -s);
  const double n = static_cast<double>(k);
  // B_{2j} / (2j)!
  constexpr std::array<double, 6> kCoef = {
      1.0 / 12.0,  -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0,
      1.0 / 47900160.0, -691.0 / 1307674368000.0};
  double tail = std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s);
  double rising = s;                    // (s)_{2j-1}
  double power = std::pow(n, -s - 1.0);  // n^{-s-2j+1}
  for (std::size_t j = 0; j < kCoef.size(); ++j) {
    tail += kCoef[j] * rising * power;
    const double m = static_cast<double>(2 * j + 1);
    rising *= (s + m) * (s + m + 1.0);
    power /= n * n;
  }
  return head + tail;
}

double riemann_zeta(double s) { return zeta_tail(s, 1); }

// ---------------------------------------------------------------------------
// Walk increments

WalkIncrementLaw WalkIncrementLaw::simple_symmetric() {
  WalkIncrementLaw law;
  law.kind_ = WalkKind::SimpleSymmetric;
  law.index_ = 2.0;
  law.normalization_ = 0.5;
  return law;
}

WalkIncrementLaw WalkIncrementLaw::discrete_pareto(double index) {
  if (!(index > 1.0 && index < 2.0))
    throw DomainError("discrete Pareto walk index must lie in (1,2), got " +
                      std::to_string(index));
  WalkIncrementLaw law;
  law.kind_ = WalkKind::DiscretePareto;
  law.index_ = index;
  const double a = index + 1.0;
  law.normalization_ = 0.5 / riemann_zeta(a);

  // Column j < kTableSize holds |X| = j + 1, the last column the tail bucket.
  const std::size_t cols = kTableSize + 1;
  std::vector<double> prob(cols);
  for (std::size_t j = 0; j < kTableSize; ++j)
    prob[j] = 2.0 * law.normalization_ * std::pow(static_cast<double>(j + 1), -a);
  prob[kTableSize] = 2.0 * law.normalization_ * zeta_tail(a, kTableSize + 1);

  // Vose's alias method.
  auto table = std::make_shared<AliasTable>();
  table->accept.assign(cols, 1.0);
  table->alias.resize(cols);
  std::vector<double> scaled(cols);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::size_t j = 0; j < cols; ++j) {
    scaled[j] = prob[j] * static_cast<double>(cols);
    table->alias[j] = static_cast<std::uint32_t>(j);
    (scaled[j] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(j));
  }
  while (!small.empty() && !large.empty()) {
    const auto lo = small.back();
    small.pop_back();
    const auto hi = large.back();
    table->accept[lo] = scaled[lo];
    table->alias[lo] = hi;
    scaled[hi] = (scaled[hi] + scaled[lo]) - 1.0;
    if (scaled[hi] < 1.0) {
      large.pop_back();
      small.push_back(hi);
    }
  }
  for (auto j : small) table->accept[j] = 1.0;
  for (auto j : large) table->accept[j] = 1.0;

  // Rejection envelope: ratio k^-a / int_k^{k+1} x^-a dx is maximal at the
  // smallest tail value.
  const double k0 = static_cast<double>(kTableSize + 1);
  table->tail_bound = std::pow(k0, -a) * (a - 1.0) /
                      (std::pow(k0, 1.0 - a) * -std::expm1((1.0 - a) * std::log1p(1.0 / k0)));
  law.table_ = std::move(table);
  return law;
}

double WalkIncrementLaw::mass(std::int64_t k) const {
  if (k == 0) return 0.0;
  const double m = static_cast<double>(k < 0 ? -k : k);
  if (kind_ == WalkKind::SimpleSymmetric) return m == 1.0 ? 0.5 : 0.0;
  return normalization_ * std::pow(m, -index_ - 1.0);
}

double WalkIncrementLaw::tail_mass(std::int64_t k) const {
  if (k < 0) return 1.0;
  if (kind_ == WalkKind::SimpleSymmetric) return k == 0 ? 1.0 : 0.0;
  return 2.0 * normalization_ * zeta_tail(index_ + 1.0, k + 1);
}

StableLaw WalkIncrementLaw::limit_law() const {
  if (kind_ == WalkKind::SimpleSymmetric) return StableLaw{2.0, std::sqrt(0.5), 0.0};
  // P(|X| > x) ~ (2c/alpha) x^-alpha; symmetric limit with
  // chi^alpha = (2c/alpha) Gamma(1-alpha) cos(pi alpha/2).
  const double tail_const = 2.0 * normalization_ / index_;
  const double scale_pow =
      tail_const * std::tgamma(1.0 - index_) * std::cos(0.5 * kPi * index_);
  return StableLaw{index_, std::pow(scale_pow, 1.0 / index_), 0.0};
}

std::string WalkIncrementLaw::describe() const {
  if (kind_ == WalkKind::SimpleSymmetric) return "simple-symmetric";
  std::ostringstream os;
  os << "discrete-pareto(index=" << index_ << ")";
  return os.str();
}

std::int64_t WalkIncrementLaw::sample_tail(CounterRng& rng) const {
  const double a = index_ + 1.0;
  const double k0 = static_cast<double>(kTableSize + 1);
  for (;;) {
    const double x = k0 * std::pow(rng.uniform(), -1.0 / (a - 1.0));
    if (!(x < 0x1.0p62)) continue;
    const double k = std::floor(x);
    const double cell = std::pow(k, 1.0 - a) * -std::expm1((1.0 - a) * std::log1p(1.0 / k)) /
                        (a - 1.0);
    const double ratio = std::pow(k, -a) / cell;
    if (rng.uniform() * table_->tail_bound <= ratio) return static_cast<std::int64_t>(k);
  }
}

std::int64_t WalkIncrementLaw::sample(CounterRng& rng) const {
  const std::uint64_t bits = rng();
  if (kind_ == WalkKind::SimpleSymmetric) return (bits & 1ULL) ? 1 : -1;
  const std::int64_t sign = (bits & 1ULL) ? 1 : -1;
  constexpr std::uint64_t cols = kTableSize + 1;
  const auto col = static_cast<std::size_t>(((bits >> 32) * cols) >> 32);
  const std::size_t j = rng.uniform() < table_->accept[col] ? col : table_->alias[col];
  const std::int64_t magnitude =
      j < static_cast<std::size_t>(kTableSize) ? static_cast<std::int64_t>(j) + 1 : sample_tail(rng);
  return sign * magnitude;
}

// ---------------------------------------------------------------------------
// Scenery values

SceneryLaw SceneryLaw::exact_stable(const StableLaw& law) {
  law.validate();
  SceneryLaw s;
  s.kind_ = SceneryKind::ExactStable;
  s.stable_ = law;
  return s;
}

SceneryLaw SceneryLaw::two_sided_pareto(double index, double a1, double a2) {
  if (!(index > 0.0 && index < 2.0))
    throw DomainError("two-sided Pareto scenery index must lie in (0,2), got " +
                      std::to_string(index));
  if (!(a1 >= 0.0 && a2 >= 0.0 && a1 + a2 > 0.0))
    throw DomainError("Pareto tail constants must be >= 0 with a positive sum");
  if (index == 1.0 && a1 != a2)
    throw DomainError("index 1 Pareto scenery must be symmetric (A1 = A2)");
  SceneryLaw s;
  s.kind_ = SceneryKind::TwoSidedPareto;
  s.a1_ = a1;
  s.a2_ = a2;
  const double total = a1 + a2;
  s.cutoff_ = std::pow(total, 1.0 / index);
  s.positive_prob_ = a1 / total;
  if (index > 1.0)
    s.center_ = s.cutoff_ * index / (index - 1.0) * (2.0 * s.positive_prob_ - 1.0);
  double scale = 0.0;
  if (index == 1.0) {
    scale = total * 0.5 * kPi;
  } else {
    scale = std::pow(total * std::tgamma(1.0 - index) * std::cos(0.5 * kPi * index),
                     1.0 / index);
  }
  s.stable_ = StableLaw{index, scale, (a1 - a2) / total};
  return s;
}

SceneryLaw SceneryLaw::zero(double index) {
  SceneryLaw s;
  s.kind_ = SceneryKind::Zero;
  s.stable_ = make_stable(index, 1.0, 0.0);
  return s;
}

std::string SceneryLaw::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SceneryKind::ExactStable:
      os << "exact-" << stable_.describe();
      break;
    case SceneryKind::TwoSidedPareto:
      os << "two-sided-pareto(index=" << stable_.index << ", a1=" << a1_ << ", a2=" << a2_ << ")";
      break;
    case SceneryKind::Zero:
      os << "zero(index=" << stable_.index << ")";
      break;
  }
  return os.str();
}

double SceneryLaw::sample(CounterRng& rng) const {
  switch (kind_) {
    case SceneryKind::ExactStable:
      return sample_stable(stable_, rng);
    case SceneryKind::TwoSidedPareto: {
      const std::uint64_t bits = rng();
      const double side = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
      const double mag = cutoff_ * std::pow(rng.uniform(), -1.0 / stable_.index);
      return (side < positive_prob_ ? mag : -mag) - center_;
    }
    case SceneryKind::Zero:
      return 0.0;
  }
  return 0.0;
}

}  // namespace rwrs
