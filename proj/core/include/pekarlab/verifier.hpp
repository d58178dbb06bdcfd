// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pekarlab/config.hpp"

namespace pekarlab {

/// One inequality/identity check. For "<=" style checks, pass means
/// measured <= bound + allowance; slack = bound - measured. For eigenvalue
/// lower bounds, measured is the smallest eigenvalue, bound the admissible
/// floor (already including reported truncation/discretization slack).
struct VerdictRow {
  std::string check_id;
  std::string params_json;
  double measured = 0;
  double bound = 0;
  double slack = 0;
  bool pass = false;
};

struct VerifierOptions {
  int samples = 1000;           // random states per sampled inequality
  std::size_t dense_budget = 4096;  // max dim for dense eigen checks
  double t_max = 2.0;           // horizon for energy-conservation rows
  int t_points = 50;
  double ratio_bound = 10.0;    // admissible weighted-norm ratio
  bool include_negative_controls = true;
};

/// Runs every operator-inequality and identity check on the given config.
/// Deterministic for fixed (cfg, options): row order and sampling are pinned
/// by cfg.seed. Oracle-dimension overflow fails the affected row with a
/// reason instead of aborting the table.
std::vector<VerdictRow> run_all(const ModelConfig& cfg, const VerifierOptions& opts = {});

/// CSV with columns exactly: check_id, params_json, measured, bound, slack, pass.
void write_verdicts_csv(std::ostream& os, const std::vector<VerdictRow>& rows);

}  // namespace pekarlab
