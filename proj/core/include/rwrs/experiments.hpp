// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwrs/config.hpp"
#include "rwrs/output.hpp"

namespace rwrs {

/// Runs `config.command` on a validated config. Raw CSV columns:
///   walk-scaling    replica,n,V,R,M,max_N
///   schema-cf       replica,t,G
///   limit-selfsim   replica,t,Gamma        (replicas 0..2R-1, two independent sets)
///   tail-check      replica,sup,sup_abs,int_L_beta
///   holder-check    replica,grid_log2,modulus
///   feasible-sweep  index,alpha,beta,H,branch,ok
[[nodiscard]] CommandResult run_command(const ExperimentConfig& config);

[[nodiscard]] CommandResult run_walk_scaling(const ExperimentConfig& config);
[[nodiscard]] CommandResult run_schema_cf(const ExperimentConfig& config);
[[nodiscard]] CommandResult run_limit_selfsim(const ExperimentConfig& config);
[[nodiscard]] CommandResult run_tail_check(const ExperimentConfig& config);
[[nodiscard]] CommandResult run_holder_check(const ExperimentConfig& config);
[[nodiscard]] CommandResult run_feasible_sweep(const ExperimentConfig& config);

/// Gamma_m at grid indices `at` for replicas [first, first + count);
/// row r holds replica first + r.
[[nodiscard]] std::vector<std::vector<double>> gamma_samples(const LimitConfig& config,
                                                             std::uint64_t first, std::size_t count,
                                                             std::span<const std::size_t> at,
                                                             unsigned workers);

}  // namespace rwrs
