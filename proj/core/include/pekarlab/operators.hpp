// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "pekarlab/model.hpp"

namespace pekarlab {

/// A linear map on HybridState. apply_into overwrites `out` (same model,
/// preallocated). Handles are pure: shared read-only state only.
struct OperatorHandle {
  std::string label;
  bool hermitian = false;
  std::function<void(const HybridState&, HybridState&)> apply_into;
  std::function<void(const HybridState&, HybridState&)> adjoint_apply_into;  // optional

  HybridState apply(const HybridState& in) const;
  HybridState adjoint_apply(const HybridState& in) const;
  bool has_adjoint() const { return static_cast<bool>(adjoint_apply_into); }
};

/// Sum of handles (used for decomposition identities in tests).
OperatorHandle operator_sum(std::string label, std::vector<OperatorHandle> parts,
                            bool hermitian);

// --- generalized field operators ------------------------------------------
//
// a(e^{ikx} f) = sum_j sqrt(w) conj(f_j) e^{-i k_j x} a_j,  a_j = alpha^-1 b_j,
// with b_j the unit-commutator ladder operator. `with_phase=false` drops the
// e^{±ikx} electron factor, giving the plain a(f)/a*(f) of the field-shift
// term. f is a PhononField-like weight on modes (k=0 entry ignored).

void apply_annihilation_field(const PhononField& f, const HybridState& in,
                              HybridState& out, bool with_phase = true);

/// Adjoint of apply_annihilation_field; creation out of the top sector is
/// projected away and the dropped mass (squared norm, h-weighted) is returned.
double apply_creation_field(const PhononField& f, const HybridState& in,
                            HybridState& out, bool with_phase = true);

void apply_number(const HybridState& in, HybridState& out);

/// Spectral Laplacian |k|^2 on the electron factor, identity on Fock.
void apply_kinetic(const HybridState& in, HybridState& out);

// Handle factories.
OperatorHandle number_operator(const ModelPtr& m);
OperatorHandle kinetic_operator(const ModelPtr& m);
/// Single momentum component p_axis (Fourier multiplier k_axis).
OperatorHandle momentum_component_operator(const ModelPtr& m, int axis);
/// Non-Hermitian a(e^{ikx}f); adjoint_apply is the (projected) creation.
OperatorHandle annihilation_field_operator(const ModelPtr& m, PhononField f,
                                           bool with_phase = true);
/// Hermitian a(e^{ikx}f) + a*(e^{ikx}f).
OperatorHandle field_sum_operator(const ModelPtr& m, PhononField f,
                                  bool with_phase = true);

/// Result of applying the truncated Weyl operator W(f)^sign.
struct WeylResult {
  HybridState state;
  /// Truncation-loss diagnostic: l2 amplitude of generator overflow past the
  /// top sector, accumulated over the exponential's internal steps.
  double loss = 0;
};

/// exp(sign*(a*(f) - a(f))) via the Krylov exponential (unitary on the
/// truncated space). Throws if the truncation loss exceeds `max_loss`.
WeylResult apply_weyl(const PhononField& f, int sign, const HybridState& in,
                      double tol = 1e-13, double max_loss = 1e-3);

}  // namespace pekarlab
