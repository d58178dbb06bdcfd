// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "pekarlab/config.hpp"

namespace pekarlab {

/// A set of physical quantities in either standard Froehlich units or
/// strong-coupling units. Conversions are explicit scale factors and are
/// never applied implicitly by the simulation.
struct UnitDescriptor {
  double alpha = 1.0;
  double length = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double time = 0.0;

  std::string to_key_values() const;
  static UnitDescriptor from_key_values(const std::string& text);
};

struct UnitConversion {
  UnitDescriptor params;
  /// Mode amplitude rescale factor alpha^(1/2) (or its inverse) applied to
  /// ladder amplitudes alongside the coordinate change.
  double mode_amplitude_scale = 1.0;
};

/// Standard -> strong coupling: x~ = alpha x, p~ = p/alpha, E~ = E/alpha^2,
/// t~ = alpha^2 t; momentum covers both p and k (they scale identically).
UnitConversion to_strong(const UnitDescriptor& standard);

/// Exact inverse of to_strong.
UnitConversion from_strong(const UnitDescriptor& strong);

}  // namespace pekarlab
