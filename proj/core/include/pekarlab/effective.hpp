// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "pekarlab/operators.hpp"

namespace pekarlab {

/// V_phi on the spatial grid plus the additive constant ||phi||^2.
struct EffectivePotential {
  std::vector<double> values;  // real by construction (2 Re of a sum)
  double phi_norm_sq = 0;
};

/// V(x) = sum_j w (e^{-i k_j x} phi_j + e^{i k_j x} conj(phi_j)) v(k_j),
/// evaluated via FFT over the mode grid.
EffectivePotential build_potential(const PhononField& phi);

/// H_phi psi = p^2 psi + V_phi psi + ||phi||^2 psi on the electron factor.
void apply_h_phi_electron(const Model& m, const EffectivePotential& pot,
                          const ElectronState& in, ElectronState& out);

/// Hermitian handle for H_phi acting on the electron factor only.
OperatorHandle assemble_H_phi(const ModelPtr& m, const PhononField& phi);

/// <psi, (p^2 + V_phi + ||phi||^2) psi>; requires ||psi|| = 1.
double pekar_energy(const ElectronState& psi, const PhononField& phi);

/// Unique minimizer of the phi-quadratic: phi_j = -conj(rho_hat(k_j)) v(k_j)
/// with rho_hat(k) = sum_m h^dim e^{-ik.x_m} |psi_m|^2.
PhononField optimal_phi(const ElectronState& psi);

struct PekarOptions {
  double energy_tol = 1e-10;   // stop when accepted decrease falls below
  int max_iters = 10000;
  double grad_tol = 0.0;       // optional early stop on projected gradient
  double init_step = 1.0;
  double divergence_floor = -1e8;  // abort below this energy
};

struct PekarTraceRow {
  int iter;
  double energy;
  double grad_norm;
  double step;
};

struct PekarResult {
  ElectronState psi;
  PhononField phi;
  double energy = 0;
  std::vector<PekarTraceRow> trace;
  bool converged = false;
};

/// Alternating minimization: closed-form phi update + projected-gradient
/// step on psi with backtracking line search. Energy trace is monotone
/// non-increasing over accepted steps.
PekarResult pekar_minimize(const ElectronState& init_psi, const PekarOptions& opts = {});

}  // namespace pekarlab
