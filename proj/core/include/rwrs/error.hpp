// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rwrs {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Sample too degenerate for an estimator (e.g. all values equal).
class DegenerateSampleError : public std::runtime_error {
 public:
  explicit DegenerateSampleError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Invalid experiment configuration; maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rwrs
