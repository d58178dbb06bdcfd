// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pekarlab/froehlich.hpp"

namespace pekarlab {

struct EvolveStats {
  int steps = 0;
  int matvecs = 0;
  double norm_drift = 0;        // | ||out|| - ||in|| |
  double est_local_error = 0;   // max per-step estimate
};

struct EvolveOptions {
  double tol = 1e-10;     // local error per step
  int max_krylov = 40;    // Krylov subspace cap
  /// Called with the normalized state at the start of each accepted step and
  /// the step length; used for truncation-loss accounting.
  std::function<void(const HybridState&, double)> step_probe;
};

/// psi(t) = exp(-i H t) psi via an adaptive Lanczos (Hermitian Krylov)
/// exponential. Happy breakdown is exact; non-Hermitian handles are rejected.
HybridState evolve(const OperatorHandle& H, const HybridState& psi, double t,
                   const EvolveOptions& opts = {}, EvolveStats* stats = nullptr);

HybridState evolve(const OperatorHandle& H, const HybridState& psi, double t,
                   double tol, EvolveStats* stats = nullptr);

struct DeviationPoint {
  double t = 0;
  double D = 0;                // || psi_full(t) - psi_eff(t) ||^2
  double top_sector_mass = 0;  // of the full trajectory
  double norm_drift = 0;       // worst of the two trajectories
};

/// Evolves Psi0 under the transformed H and under H_phi (identity on the
/// phonon factor) on a shared time grid and records the squared deviation.
std::vector<DeviationPoint> deviation(const HDecomposition& dec, const HybridState& Psi0,
                                      std::span<const double> t_grid, double tol);

}  // namespace pekarlab
