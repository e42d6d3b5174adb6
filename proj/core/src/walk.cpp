// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "rwrs/walk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rwrs/error.hpp"

namespace rwrs {

namespace {

std::int64_t checked_time(const WalkPath& path, double s, const char* what) {
  if (!(s >= 0.0) || s > static_cast<double>(path.horizon()))
    throw DomainError(std::string(what) + ": time " + std::to_string(s) +
                      " outside [0, " + std::to_string(path.horizon()) + "]");
  return static_cast<std::int64_t>(std::floor(s));
}

// value(m) + (s - m)(value(m+1) - value(m)); no extrapolation at the horizon.
template <class F>
double interpolate(const WalkPath& path, double s, const char* what, F&& value) {
  const std::int64_t m = checked_time(path, s, what);
  const double lo = static_cast<double>(value(m));
  const double frac = s - static_cast<double>(m);
  if (frac == 0.0) return lo;
  return lo + frac * (static_cast<double>(value(m + 1)) - lo);
}

}  // namespace

WalkPath WalkPath::from_positions(std::vector<std::int64_t> positions) {
  if (positions.empty() || positions.front() != 0)
    throw DomainError("walk path must start at S_0 = 0");
  WalkPath p;
  p.positions_ = std::move(positions);
  return p;
}

void generate_positions(std::int64_t n, const WalkIncrementLaw& law, CounterRng& rng,
                        std::vector<std::int64_t>& out) {
  if (n < 0) throw DomainError("walk length must be non-negative");
  out.resize(static_cast<std::size_t>(n) + 1);
  out[0] = 0;
  std::int64_t pos = 0;
  if (law.kind() == WalkKind::SimpleSymmetric) {
    // 64 steps per generator call; |S_k| <= k cannot overflow.
    std::size_t k = 1;
    while (k <= static_cast<std::size_t>(n)) {
      std::uint64_t bits = rng();
      const std::size_t stop = std::min<std::size_t>(k + 64, static_cast<std::size_t>(n) + 1);
      for (; k < stop; ++k, bits >>= 1) {
        pos += static_cast<std::int64_t>(bits & 1ULL) * 2 - 1;
        out[k] = pos;
      }
    }
    return;
  }
  for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
    if (__builtin_add_overflow(pos, law.sample(rng), &pos))
      throw std::overflow_error("walk position overflowed int64");
    out[k] = pos;
  }
}

WalkPath generate_walk(std::int64_t n, const WalkIncrementLaw& law, StreamKey key) {
  WalkPath p;
  CounterRng rng(key);
  generate_positions(n, law, rng, p.positions_);
  p.law_ = law;
  p.stream_ = key;
  return p;
}

std::vector<LocalTimeField::Entry> count_visits(std::span<const std::int64_t> positions) {
  std::vector<LocalTimeField::Entry> entries;
  if (positions.empty()) return entries;
  const auto [lo_it, hi_it] = std::minmax_element(positions.begin(), positions.end());
  const std::int64_t lo = *lo_it;
  const std::int64_t hi = *hi_it;
  const auto len = static_cast<std::int64_t>(positions.size());
  // hi - lo may overflow only for absurd paths; the sort branch handles them.
  std::int64_t span = 0;
  if (!__builtin_sub_overflow(hi, lo, &span) && span <= 4 * len + 64) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(span) + 1, 0);
    for (auto x : positions) ++counts[static_cast<std::size_t>(x - lo)];
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (counts[i] != 0) entries.emplace_back(lo + static_cast<std::int64_t>(i), counts[i]);
    return entries;
  }
  std::vector<std::int64_t> sorted(positions.begin(), positions.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    entries.emplace_back(sorted[i], static_cast<std::int64_t>(j - i));
    i = j;
  }
  return entries;
}

std::int64_t LocalTimeField::at(std::int64_t x) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                                   [](const Entry& e, std::int64_t v) { return e.first < v; });
  return (it != entries_.end() && it->first == x) ? it->second : 0;
}

std::int64_t LocalTimeField::total() const {
  std::int64_t s = 0;
  for (const auto& e : entries_) s += e.second;
  return s;
}

std::int64_t LocalTimeField::sum_squares() const {
  std::int64_t s = 0;
  for (const auto& e : entries_) s += e.second * e.second;
  return s;
}

std::int64_t LocalTimeField::max_count() const {
  std::int64_t m = 0;
  for (const auto& e : entries_) m = std::max(m, e.second);
  return m;
}

LocalTimeField local_time_field(const WalkPath& path, std::int64_t m) {
  if (m < 0 || m > path.horizon())
    throw DomainError("local_time_field: time outside the walk horizon");
  return LocalTimeField(m, count_visits(path.positions().first(static_cast<std::size_t>(m) + 1)));
}

double local_time(const WalkPath& path, std::int64_t x, double s) {
  checked_time(path, s, "local_time");
  const auto pos = path.positions();
  const auto m = static_cast<std::int64_t>(std::floor(s));
  std::int64_t count = 0;
  for (std::int64_t k = 0; k <= m; ++k) count += pos[static_cast<std::size_t>(k)] == x;
  const double frac = s - static_cast<double>(m);
  if (frac == 0.0) return static_cast<double>(count);
  const std::int64_t next = pos[static_cast<std::size_t>(m) + 1] == x ? 1 : 0;
  return static_cast<double>(count) + frac * static_cast<double>(next);
}

double self_intersections(const WalkPath& path, double s) {
  return interpolate(path, s, "self_intersections",
                     [&](std::int64_t m) { return local_time_field(path, m).sum_squares(); });
}

double range(const WalkPath& path, double s) {
  return interpolate(path, s, "range",
                     [&](std::int64_t m) { return local_time_field(path, m).support_size(); });
}

std::int64_t max_abs(const WalkPath& path, std::int64_t n) {
  if (n < 0 || n > path.horizon()) throw DomainError("max_abs: time outside the walk horizon");
  std::int64_t m = 0;
  for (std::int64_t k = 0; k <= n; ++k) {
    const std::int64_t x = path[k];
    m = std::max(m, x < 0 ? -x : x);
  }
  return m;
}

std::vector<WalkFunctionals> scan_functionals(std::span<const std::int64_t> positions,
                                              std::span<const std::int64_t> checkpoints) {
  std::vector<WalkFunctionals> out;
  if (positions.empty()) return out;
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
    throw DomainError("scan_functionals: checkpoints must be sorted");
  if (!checkpoints.empty() &&
      (checkpoints.front() < 0 ||
       checkpoints.back() >= static_cast<std::int64_t>(positions.size())))
    throw DomainError("scan_functionals: checkpoint outside the path");

  const std::int64_t last = checkpoints.empty() ? 0 : checkpoints.back();
  const auto used = positions.first(static_cast<std::size_t>(last) + 1);
  const auto [lo_it, hi_it] = std::minmax_element(used.begin(), used.end());
  const std::int64_t lo = *lo_it;
  std::int64_t span = 0;
  const bool dense = !__builtin_sub_overflow(*hi_it, lo, &span) &&
                     span <= 4 * static_cast<std::int64_t>(used.size()) + 64;

  std::vector<std::int64_t> dense_counts;
  std::vector<std::int64_t> sorted_sites;
  std::vector<std::int64_t> sparse_counts;
  if (dense) {
    dense_counts.assign(static_cast<std::size_t>(span) + 1, 0);
  } else {
    sorted_sites.assign(used.begin(), used.end());
    std::sort(sorted_sites.begin(), sorted_sites.end());
    sorted_sites.erase(std::unique(sorted_sites.begin(), sorted_sites.end()), sorted_sites.end());
    sparse_counts.assign(sorted_sites.size(), 0);
  }
  auto slot = [&](std::int64_t x) -> std::int64_t& {
    if (dense) return dense_counts[static_cast<std::size_t>(x - lo)];
    const auto it = std::lower_bound(sorted_sites.begin(), sorted_sites.end(), x);
    return sparse_counts[static_cast<std::size_t>(it - sorted_sites.begin())];
  };

  WalkFunctionals f;
  std::size_t next = 0;
  for (std::int64_t k = 0; k <= last && next < checkpoints.size(); ++k) {
    const std::int64_t x = used[static_cast<std::size_t>(k)];
    std::int64_t& c = slot(x);
    f.self_intersections += 2 * c + 1;  // (c+1)^2 - c^2
    f.range += c == 0;
    ++c;
    f.max_local_time = std::max(f.max_local_time, c);
    f.max_abs = std::max(f.max_abs, x < 0 ? -x : x);
    while (next < checkpoints.size() && checkpoints[next] == k) {
      f.time = k;
      out.push_back(f);
      ++next;
    }
  }
  return out;
}

std::string path_csv(const WalkPath& path) {
  std::ostringstream os;
  os << "k,S_k\n";
  for (std::int64_t k = 0; k <= path.horizon(); ++k) os << k << ',' << path[k] << '\n';
  return os.str();
}

std::string local_time_csv(const LocalTimeField& field) {
  std::ostringstream os;
  os << "x,N\n";
  for (const auto& [x, n] : field.entries()) os << x << ',' << n << '\n';
  return os.str();
}

}  // namespace rwrs
