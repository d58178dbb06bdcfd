// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "pekarlab/operators.hpp"

namespace pekarlab {

/// Dense matrix of an operator in the coefficient basis (column o*Nx+m is
/// the image of that unit coefficient). The spatial quadrature weight is
/// uniform, so operator Hermiticity w.r.t. the h-weighted inner product is
/// Hermiticity of this matrix, and the spectra coincide.
Eigen::MatrixXcd to_dense(const OperatorHandle& op, const ModelPtr& m);

HybridState from_vector(const ModelPtr& m, const Eigen::VectorXcd& v);
Eigen::VectorXcd to_vector(const HybridState& s);

/// exp(-i t A) v for Hermitian A via full eigendecomposition.
Eigen::VectorXcd expm_hermitian_apply(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& v,
                                      double t);

/// exp(G) for anti-Hermitian G (eigendecomposition of iG).
Eigen::MatrixXcd expm_antihermitian(const Eigen::MatrixXcd& G);

double min_eigenvalue_hermitian(const Eigen::MatrixXcd& A);

}  // namespace pekarlab
