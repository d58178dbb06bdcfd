// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pekarlab/config.hpp"
#include "pekarlab/fft.hpp"

namespace pekarlab {

using cplx = std::complex<double>;

/// Momentum grid k = (2*pi/L)*n with per-axis integer index in [-M/2, M/2).
/// Modes are stored in FFT bin order, so mode index j doubles as the FFT bin
/// of the electron transform. Negation is modular: the Nyquist mode -M/2 is
/// its own partner.
struct ModeGrid {
  int dim = 1;
  int M = 0;
  double L = 0;
  double weight = 0;                    // quadrature weight (2*pi/L)^dim, uniform
  std::size_t n_modes = 0;              // M^dim
  std::size_t zero_index = 0;           // always 0 in FFT order
  std::vector<std::array<double, 3>> kpoints;  // unused axes are 0
  std::vector<double> knorm;            // |k_j|
  std::vector<double> ksq;              // |k_j|^2
  std::vector<std::size_t> neg_index;   // modular negation partner
  std::vector<std::size_t> active;      // all modes except k=0, ascending bin

  double momentum_radius() const;       // max |k| over the grid
  std::size_t n_active() const { return active.size(); }
};

ModeGrid build_mode_grid(int dim, int M, double L);

/// Enumeration of occupation vectors n over K active modes with sum <= nmax,
/// ordered by total occupation, then lexicographically. Ladder transition
/// tables are precomputed per (mode, ordinal).
class FockBasis {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  FockBasis() = default;
  FockBasis(int K, int nmax);

  int K() const { return K_; }
  int nmax() const { return nmax_; }
  std::size_t size() const { return totals_.size(); }

  std::span<const std::uint8_t> occupation(std::size_t ordinal) const;
  std::size_t ordinal_of(std::span<const std::uint8_t> occ) const;  // npos if absent
  int total(std::size_t ordinal) const { return totals_[ordinal]; }

  // Ordinal of occ - e_j / occ + e_j; npos when absent (empty mode / truncation).
  std::size_t lower(int j, std::size_t ordinal) const { return lower_[idx(j, ordinal)]; }
  std::size_t raise(int j, std::size_t ordinal) const { return raise_[idx(j, ordinal)]; }
  int occ_of_mode(int j, std::size_t ordinal) const { return occs_[ordinal * K_ + j]; }

  // First ordinal with total occupation == n (and one-past-last via n+1).
  std::size_t sector_begin(int n) const { return sector_begin_[n]; }
  std::size_t sector_end(int n) const { return sector_begin_[n + 1]; }

  /// Number of occupation vectors with sum <= nmax over K modes, computed
  /// without enumeration (binomial C(K + nmax, nmax)); saturates at SIZE_MAX.
  static std::size_t dimension(int K, int nmax);

 private:
  std::size_t idx(int j, std::size_t o) const { return static_cast<std::size_t>(j) * size() + o; }

  int K_ = 0;
  int nmax_ = 0;
  std::vector<std::uint8_t> occs_;       // size K * size(), row-major by ordinal
  std::vector<int> totals_;
  std::vector<std::size_t> sector_begin_;
  std::vector<std::size_t> lower_;       // K * size()
  std::vector<std::size_t> raise_;       // K * size()
};

class Model;
using ModelPtr = std::shared_ptr<const Model>;

/// Complex phonon amplitude per mode; the k=0 entry is pinned to zero.
struct PhononField {
  ModelPtr model;
  std::vector<cplx> amps;  // size n_modes, FFT bin order

  double norm_sq() const;  // sum_j w |phi_j|^2
  static PhononField zero(ModelPtr m);
};

/// Complex wavefunction on the spatial grid x = (L/M)*m, row-major over axes.
struct ElectronState {
  ModelPtr model;
  std::vector<cplx> psi;   // size M^dim

  double norm() const;
  double norm_sq() const;
  void normalize();
};

/// Coefficient tensor over (Fock ordinal, spatial point), Fock-major:
/// coeffs[o * Nx + m]. The electron inner product carries the h^dim weight.
struct HybridState {
  ModelPtr model;
  std::vector<cplx> coeffs;

  double norm() const;
  double norm_sq() const;
  /// Mass (norm^2 contribution) of the sector with total occupation == nmax.
  double top_sector_mass() const;
  /// Per-sector masses, index = total occupation.
  std::vector<double> sector_masses() const;
};

cplx inner(const HybridState& a, const HybridState& b);
cplx inner(const ElectronState& a, const ElectronState& b);

/// H^1 norm (||psi||^2 + ||p psi||^2)^(1/2) with the spectral gradient.
double h1_norm(const ElectronState& psi);

/// M1 = ||(p^2+N+1)^(1/2) Psi||, M2 = ||(p^2+1)^(1/2) N Psi||.
struct AprioriConstants {
  double M1 = 0;
  double M2 = 0;
  /// Admissibility screen used by the harness: M2 <= M1 / alpha^2.
  bool admissible(double alpha) const { return M2 <= M1 / (alpha * alpha) + 1e-14; }
};

struct BuildOptions {
  bool hybrid = true;                      // enumerate Fock basis + phase tables
  std::size_t hybrid_dim_budget = 2000000; // max Nx * NF
};

/// Immutable bundle of config, grids, basis, FFT plans and phase tables.
/// Shared read-only across threads.
class Model : public std::enable_shared_from_this<Model> {
 public:
  static ModelPtr build(const ModelConfig& cfg, const BuildOptions& opts = {});

  const ModelConfig& config() const { return cfg_; }
  const ModeGrid& grid() const { return grid_; }
  const FockBasis& basis() const;        // throws if built electron-only
  bool has_hybrid() const { return has_hybrid_; }
  const FftEngine& fft() const { return *fft_; }

  double lambda_cut() const { return lambda_; }  // resolved (auto -> value)
  double alpha() const { return cfg_.alpha; }
  std::size_t nx() const { return grid_.n_modes; }  // spatial points == modes
  std::size_t fock_dim() const;
  std::size_t hybrid_dim() const;
  double cell_volume() const { return cell_vol_; }  // h^dim

  /// v(k_j) per mode (coupling form factor; 0 at k=0 and for Zero coupling).
  double coupling_v(std::size_t mode) const { return coupling_v_[mode]; }
  /// e^{-i k_j . x_m} for active-mode rank ja (row) and grid point m.
  std::span<const cplx> phase_minus(std::size_t active_rank) const;

  // Convenience constructors for states bound to this model.
  HybridState make_hybrid() const;
  ElectronState make_electron() const;
  PhononField make_field() const;
  /// psi (x) vacuum, with psi broadcast into the vacuum sector.
  HybridState product_with_vacuum(const ElectronState& psi) const;
  /// Electron factor of the given Fock sector column.
  ElectronState electron_column(const HybridState& s, std::size_t ordinal) const;

 private:
  Model() = default;

  ModelConfig cfg_;
  ModeGrid grid_;
  FockBasis basis_;
  bool has_hybrid_ = false;
  double lambda_ = 0;
  double cell_vol_ = 0;
  std::vector<double> coupling_v_;
  std::vector<cplx> phase_minus_;  // n_active * Nx
  std::unique_ptr<FftEngine> fft_;
};

/// Builds grids and basis per config; rejects over-budget hybrid dimensions.
ModelPtr build_model(const ModelConfig& cfg, const BuildOptions& opts = {});

AprioriConstants apriori_constants(const HybridState& Psi);

/// || (wp*p^2 + wn*N + c)^(1/2) Psi ||, evaluated in the electron Fourier
/// representation; N carries the alpha^-2 spectral scaling.
double weighted_norm(const HybridState& Psi, double wp, double wn, double c);

}  // namespace pekarlab
