// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>

namespace pekarlab {

/// Thin wrapper around FFTW plans for the M^dim electron grid.
/// Transforms are unnormalized (forward then backward multiplies by Nx);
/// plans are created unaligned so they can execute on any buffer, and
/// executing them concurrently on distinct buffers is safe.
class FftEngine {
 public:
  FftEngine(int dim, int M);
  ~FftEngine();
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  std::size_t nx() const { return nx_; }

  void forward(std::complex<double>* data) const;   // sign -1, in place
  void backward(std::complex<double>* data) const;  // sign +1, in place

 private:
  std::size_t nx_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

}  // namespace pekarlab
