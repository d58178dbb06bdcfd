// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pekarlab/config.hpp"

namespace pekarlab {

/// One (alpha, t) measurement row of the deviation experiment.
struct SweepRecord {
  double alpha = 0;
  double t = 0;
  double D = 0;                // squared deviation between the two dynamics
  double M1 = 0;               // a-priori constant of the initial state
  double top_sector_mass = 0;
  double norm_drift = 0;
  double wall_time_ms = 0;
};

enum class InitialKind { PekarProduct, PerturbedProduct };
enum class PhiSource { Optimal, Zero };

struct SweepOptions {
  std::vector<double> alphas = {2, 4, 8};
  double t_max = 1.0;
  int t_points = 11;
  InitialKind initial = InitialKind::PekarProduct;
  PhiSource phi_source = PhiSource::Optimal;
  double psi_width = 0.0;          // Gaussian width; 0 = L/8
  double top_mass_threshold = 1e-6;
  std::size_t hybrid_dim_budget = 2000000;
  /// When false (default) the wall_time_ms column is written as 0 so that
  /// records.csv is byte-identical across runs; timing goes to the summary.
  bool timing_in_csv = false;

  static SweepOptions from_kv(const KeyValueMap& kv);
  std::vector<double> t_grid() const;
};

/// Runs the (alpha, t) sweep; records are ordered by (alpha, t).
std::vector<SweepRecord> run_sweep(const ModelConfig& cfg, const SweepOptions& opts);

/// A record is flagged when its truncation diagnostic exceeds the threshold.
bool record_flagged(const SweepRecord& r, double top_mass_threshold);

struct FitOptions {
  double top_mass_threshold = 1e-6;
  double envelope_prefactor = 2.0;  // the theorem's constant
};

struct FitReport {
  double alpha_scaling_slope = 0;   // log D vs log alpha at the final time
  double growth_C = 0;              // D(t) ~ c (e^{Ct} - 1) at the median alpha
  double growth_c = 0;
  double fit_alpha = 0;             // alpha used for the growth fit
  double rel_rms_residual = 0;      // residual RMS / data RMS
  std::vector<double> residuals;    // per-point, at the fitted alpha
  bool envelope_ok = false;         // D <= pref * M1^2 alpha^-2 (e^{C|t|}-1)
  /// Time at which the fitted envelope crosses the trivial bound 4||Psi||^2;
  /// infinity when it never does within numeric range.
  double envelope_crossover_time = 0;
};

/// Least-squares fits of the sweep records; throws ConfigError when fewer
/// than 3 alphas or 5 times survive the truncation flag.
FitReport fit_report(std::span<const SweepRecord> records, const FitOptions& opts = {});

void write_records_csv(std::ostream& os, std::span<const SweepRecord> records,
                       bool timing_in_csv);
std::string fit_report_json(const FitReport& report);

}  // namespace pekarlab
