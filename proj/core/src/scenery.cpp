// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "rwrs/scenery.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "rwrs/error.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

double Scenery::at(std::int64_t x) {
  const auto [it, inserted] = cache_.try_emplace(x, 0.0);
  if (inserted) it->second = value(x);
  return it->second;
}

std::string Scenery::realized_csv() const {
  std::vector<std::pair<std::int64_t, double>> sites(cache_.begin(), cache_.end());
  std::sort(sites.begin(), sites.end());
  std::string out = "x,xi\n";
  for (const auto& [x, v] : sites) {
    out += std::to_string(x);
    out += ',';
    out += format_double(v);
    out += '\n';
  }
  return out;
}

double cumulative_scenery(const Scenery& scenery, std::int64_t n) {
  if (n < 0) throw DomainError("cumulative_scenery requires n >= 0");
  KahanSum sum;
  for (std::int64_t x = 0; x <= n; ++x) sum.add(scenery.value(x));
  return sum.value();
}

}  // namespace rwrs
