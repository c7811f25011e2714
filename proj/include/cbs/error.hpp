// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cbs {

/// Precondition violation on a single argument (bad n, step out of range, ...).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Budget m too small to give every step at least one measurement.
class InfeasibleBudgetError : public std::invalid_argument {
 public:
  explicit InfeasibleBudgetError(const std::string& what) : std::invalid_argument(what) {}
};

/// Inconsistent sweep configuration.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace cbs
