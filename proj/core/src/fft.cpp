// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "pekarlab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

namespace pekarlab {

namespace {
// FFTW plan creation is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftEngine::FftEngine(int dim, int M) {
  nx_ = 1;
  for (int d = 0; d < dim; ++d) nx_ *= static_cast<std::size_t>(M);
  std::vector<int> n(static_cast<std::size_t>(dim), M);
  std::vector<std::complex<double>> scratch(nx_);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard lock(planner_mutex());
  // FFTW_UNALIGNED so the plans run on any caller buffer.
  plan_fwd_ = fftw_plan_dft(dim, n.data(), p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_bwd_ = fftw_plan_dft(dim, n.data(), p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

FftEngine::~FftEngine() {
  std::lock_guard lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void FftEngine::forward(std::complex<double>* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), p, p);
}

void FftEngine::backward(std::complex<double>* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), p, p);
}

}  // namespace pekarlab
