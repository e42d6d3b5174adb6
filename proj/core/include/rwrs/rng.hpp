// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace rwrs {

/// 64-bit finalizer (splitmix64 / Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Key of an independent random stream, derived by hashing a path of
/// integers (master seed, replica, copy, site, ...) into 64 bits.
class StreamKey {
 public:
  constexpr StreamKey() = default;
  constexpr explicit StreamKey(std::uint64_t master) : value_(mix64(master ^ kSalt)) {}

  /// Child stream; distinct tags give statistically independent keys.
  [[nodiscard]] constexpr StreamKey child(std::uint64_t tag) const noexcept {
    StreamKey k;
    k.value_ = mix64(value_ ^ mix64(tag + kGolden));
    return k;
  }
  [[nodiscard]] constexpr StreamKey child(std::initializer_list<std::uint64_t> tags) const noexcept {
    StreamKey k = *this;
    for (auto t : tags) k = k.child(t);
    return k;
  }
  /// Sign-folded child for lattice sites: ..., -2, -1, 0, 1, 2 -> 3, 1, 0, 2, 4.
  [[nodiscard]] constexpr StreamKey site(std::int64_t x) const noexcept {
    const auto folded = x >= 0 ? static_cast<std::uint64_t>(x) << 1
                               : (static_cast<std::uint64_t>(-(x + 1)) << 1) | 1ULL;
    return child(folded);
  }

  [[nodiscard]] constexpr std::uint64_t value() const noexcept { return value_; }
  friend constexpr bool operator==(StreamKey, StreamKey) = default;

 private:
  static constexpr std::uint64_t kSalt = 0x5851f42d4c957f2dULL;
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t value_ = 0;
};

/// Counter-based generator: the i-th output is mix64(key + i * golden).
/// Satisfies UniformRandomBitGenerator. Cheap to construct, so every
/// replica, copy and scenery site gets its own.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit CounterRng(StreamKey key) noexcept : state_(key.value()) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace rwrs
