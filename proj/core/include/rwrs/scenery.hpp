// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

#include "rwrs/rng.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

/// I.i.d. scenery (xi_x) over all of Z, realized lazily.
///
/// xi_x is a pure function of (stream key, x): the site draws from its own
/// counter-based stream, so values do not depend on access order. at()
/// caches realized sites; value() computes without caching.
///
/// Not thread-safe: one Scenery per replica worker.
class Scenery {
 public:
  Scenery(SceneryLaw law, StreamKey key) : law_(std::move(law)), key_(key) {}
  /// Key (master seed, replica index).
  Scenery(SceneryLaw law, std::uint64_t master_seed, std::uint64_t replica)
      : Scenery(std::move(law), StreamKey(master_seed).child(replica)) {}

  [[nodiscard]] const SceneryLaw& law() const noexcept { return law_; }
  [[nodiscard]] StreamKey key() const noexcept { return key_; }

  /// Cached xi_x.
  double at(std::int64_t x);
  /// Uncached xi_x; bit-identical to at(x).
  [[nodiscard]] double value(std::int64_t x) const {
    CounterRng rng(key_.site(x));
    return law_.sample(rng);
  }

  [[nodiscard]] std::size_t cached_sites() const noexcept { return cache_.size(); }
  /// CSV "x,xi" of realized sites in increasing x.
  [[nodiscard]] std::string realized_csv() const;

 private:
  SceneryLaw law_;
  StreamKey key_;
  std::unordered_map<std::int64_t, double> cache_;
};

inline double scenery_at(Scenery& scenery, std::int64_t x) { return scenery.at(x); }

/// sum_{x=0}^{n} xi_x. Does not populate the cache.
[[nodiscard]] double cumulative_scenery(const Scenery& scenery, std::int64_t n);

}  // namespace rwrs
