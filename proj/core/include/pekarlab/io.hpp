// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pekarlab {

/// Versioned binary tensor container: magic "PKLB1", little-endian,
/// precision byte (0 = complex64, 1 = complex128), dims, raw payload.
enum class Precision : std::uint8_t { Complex64 = 0, Complex128 = 1 };

struct Tensor {
  std::vector<std::uint64_t> dims;
  std::vector<std::complex<double>> data;  // row-major
  Precision stored_precision = Precision::Complex128;
};

void save_tensor(const std::filesystem::path& path, const Tensor& t,
                 Precision precision = Precision::Complex128);
Tensor load_tensor(const std::filesystem::path& path);

/// Fixed shortest-roundtrip text form for doubles used by every CSV writer,
/// so identical runs produce byte-identical files.
std::string format_double(double x);

}  // namespace pekarlab
