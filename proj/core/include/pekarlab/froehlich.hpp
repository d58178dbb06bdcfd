// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pekarlab/effective.hpp"
#include "pekarlab/operators.hpp"

namespace pekarlab {

/// Weyl-transformed Hamiltonian H = H_phi + N + A~ + B + B* with the
/// interaction split at |k| > Lambda. A~ collects the field-shift term
/// a(phi) + a*(phi) and the low-|k| interaction (A minus the number part).
struct HDecomposition {
  OperatorHandle H_phi;
  OperatorHandle N_op;
  OperatorHandle A_tilde;
  OperatorHandle B;        // annihilation half, weight sqrt(w) v(k)/alpha per mode
  OperatorHandle B_star;   // creation half (projected at the top sector)
  OperatorHandle H_total;  // fused single-pass kernel
  double lambda_cut = 0;
  bool b_empty = false;    // Lambda above the grid momentum radius
};

HDecomposition assemble_transformed_H(const ModelPtr& m, const PhononField& phi);

/// Untransformed H^F = p^2 + interaction + N (for the dense conjugation check).
OperatorHandle assemble_untransformed_HF(const ModelPtr& m);

struct ConjugationReport {
  double max_deviation = 0;  // max |entry| of W* H^F W - H
  double weyl_loss = 0;      // max truncation loss over dense W columns
  std::size_t dim = 0;
};

/// Dense verification of the Weyl conjugation identity: assembles W(alpha^2 phi),
/// H^F and H as matrices and compares W* H^F W against H. Small dims only.
ConjugationReport conjugation_check(const ModelPtr& m, const PhononField& phi,
                                    std::size_t dense_budget = 1500);

}  // namespace pekarlab
