// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>

#include "pekarlab/model.hpp"

namespace pekarlab {

using Rng = std::mt19937_64;

cplx gaussian_cplx(Rng& rng);

/// Normalized state with iid complex-Gaussian coefficients.
HybridState random_hybrid(const ModelPtr& m, Rng& rng);
/// Same, restricted to sectors with total occupation <= nlimit.
HybridState random_hybrid_below(const ModelPtr& m, Rng& rng, int nlimit);
ElectronState random_electron(const ModelPtr& m, Rng& rng);
/// Random field on the active modes (k=0 stays zero), scaled to ||f|| = norm.
PhononField random_field(const ModelPtr& m, Rng& rng, double norm = 1.0);

/// Normalized Gaussian wave packet centered in the box.
ElectronState gaussian_packet(const ModelPtr& m, double width);

}  // namespace pekarlab
