// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

/// Realized walk S_0 = 0, S_1, ..., S_n on Z.
class WalkPath {
 public:
  /// Fixture constructor; positions[0] must be 0.
  [[nodiscard]] static WalkPath from_positions(std::vector<std::int64_t> positions);

  [[nodiscard]] std::int64_t horizon() const noexcept {
    return static_cast<std::int64_t>(positions_.size()) - 1;
  }
  [[nodiscard]] std::span<const std::int64_t> positions() const noexcept { return positions_; }
  [[nodiscard]] std::int64_t operator[](std::int64_t k) const {
    return positions_[static_cast<std::size_t>(k)];
  }
  [[nodiscard]] const std::optional<WalkIncrementLaw>& law() const noexcept { return law_; }
  [[nodiscard]] std::optional<StreamKey> stream() const noexcept { return stream_; }

 private:
  friend WalkPath generate_walk(std::int64_t, const WalkIncrementLaw&, StreamKey);
  WalkPath() = default;

  std::vector<std::int64_t> positions_;
  std::optional<WalkIncrementLaw> law_;
  std::optional<StreamKey> stream_;
};

/// n steps of i.i.d. increments drawn from `law` on the stream `key`.
[[nodiscard]] WalkPath generate_walk(std::int64_t n, const WalkIncrementLaw& law, StreamKey key);

/// Buffer-reusing variant for hot loops: out = S_0..S_n. Throws
/// std::overflow_error if a position leaves the int64 range.
void generate_positions(std::int64_t n, const WalkIncrementLaw& law, CounterRng& rng,
                        std::vector<std::int64_t>& out);

/// Sparse visit counts N_m(x) = #{0 <= k <= m : S_k = x}, sorted by site.
class LocalTimeField {
 public:
  using Entry = std::pair<std::int64_t, std::int64_t>;

  LocalTimeField(std::int64_t horizon, std::vector<Entry> entries)
      : horizon_(horizon), entries_(std::move(entries)) {}

  [[nodiscard]] std::int64_t horizon() const noexcept { return horizon_; }
  [[nodiscard]] std::span<const Entry> entries() const noexcept { return entries_; }
  [[nodiscard]] std::int64_t at(std::int64_t x) const;

  /// sum_x N(x); equals horizon + 1.
  [[nodiscard]] std::int64_t total() const;
  /// sum_x N(x)^2.
  [[nodiscard]] std::int64_t sum_squares() const;
  /// #{x : N(x) != 0}.
  [[nodiscard]] std::int64_t support_size() const noexcept {
    return static_cast<std::int64_t>(entries_.size());
  }
  [[nodiscard]] std::int64_t max_count() const;

 private:
  std::int64_t horizon_;
  std::vector<Entry> entries_;
};

/// Local time field of S_0..S_m, m <= horizon.
[[nodiscard]] LocalTimeField local_time_field(const WalkPath& path, std::int64_t m);

/// Visit counts of an arbitrary position sequence. Uses a dense window when
/// the occupied span is comparable to the length, a sort otherwise.
[[nodiscard]] std::vector<LocalTimeField::Entry> count_visits(std::span<const std::int64_t> positions);

/// N_s(x) with linear interpolation between integer times.
[[nodiscard]] double local_time(const WalkPath& path, std::int64_t x, double s);
/// V_s = sum_{0<=i,j<=s} 1{S_i = S_j}, linearly interpolated.
[[nodiscard]] double self_intersections(const WalkPath& path, double s);
/// R_s = #{S_k : k <= s}, linearly interpolated.
[[nodiscard]] double range(const WalkPath& path, double s);
/// M_n = max_{k<=n} |S_k|.
[[nodiscard]] std::int64_t max_abs(const WalkPath& path, std::int64_t n);

/// Path functionals at one checkpoint time.
struct WalkFunctionals {
  std::int64_t time = 0;
  std::int64_t self_intersections = 0;
  std::int64_t range = 0;
  std::int64_t max_abs = 0;
  std::int64_t max_local_time = 0;
};

/// V, R, M and sup_x N at each (sorted) checkpoint in a single pass.
[[nodiscard]] std::vector<WalkFunctionals> scan_functionals(std::span<const std::int64_t> positions,
                                                            std::span<const std::int64_t> checkpoints);

/// Columnar CSV "k,S_k".
[[nodiscard]] std::string path_csv(const WalkPath& path);
/// Columnar CSV "x,N".
[[nodiscard]] std::string local_time_csv(const LocalTimeField& field);

}  // namespace rwrs
