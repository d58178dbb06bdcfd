// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "pekarlab/effective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pekarlab {

EffectivePotential build_potential(const PhononField& phi) {
  const Model& m = *phi.model;
  const std::size_t nx = m.nx();
  // V(x_m) = 2 Re sum_j w v_j phi_j e^{-i k_j . x_m}; the sum is a plain
  // forward DFT of g_j = w v_j phi_j over the mode bins.
  std::vector<cplx> g(nx);
  for (std::size_t j = 0; j < nx; ++j) g[j] = m.grid().weight * m.coupling_v(j) * phi.amps[j];
  m.fft().forward(g.data());
  EffectivePotential pot;
  pot.values.resize(nx);
  for (std::size_t mm = 0; mm < nx; ++mm) pot.values[mm] = 2.0 * g[mm].real();
  pot.phi_norm_sq = phi.norm_sq();
  return pot;
}

void apply_h_phi_electron(const Model& m, const EffectivePotential& pot,
                          const ElectronState& in, ElectronState& out) {
  const std::size_t nx = m.nx();
  const double inv_nx = 1.0 / static_cast<double>(nx);
  out.psi = in.psi;
  m.fft().forward(out.psi.data());
  for (std::size_t q = 0; q < nx; ++q) out.psi[q] *= m.grid().ksq[q] * inv_nx;
  m.fft().backward(out.psi.data());
  for (std::size_t mm = 0; mm < nx; ++mm)
    out.psi[mm] += (pot.values[mm] + pot.phi_norm_sq) * in.psi[mm];
}

OperatorHandle assemble_H_phi(const ModelPtr& m, const PhononField& phi) {
  auto pot = std::make_shared<EffectivePotential>(build_potential(phi));
  OperatorHandle h;
  h.label = "H_phi";
  h.hermitian = true;
  h.apply_into = [pot](const HybridState& in, HybridState& out) {
    const Model& mod = *in.model;
    const std::size_t nx = mod.nx();
    const double inv_nx = 1.0 / static_cast<double>(nx);
    out.coeffs = in.coeffs;
    for (std::size_t o = 0; o < mod.fock_dim(); ++o) {
      cplx* block = out.coeffs.data() + o * nx;
      const cplx* src = in.coeffs.data() + o * nx;
      mod.fft().forward(block);
      for (std::size_t q = 0; q < nx; ++q) block[q] *= mod.grid().ksq[q] * inv_nx;
      mod.fft().backward(block);
      for (std::size_t mm = 0; mm < nx; ++mm)
        block[mm] += (pot->values[mm] + pot->phi_norm_sq) * src[mm];
    }
  };
  h.adjoint_apply_into = h.apply_into;
  return h;
}

double pekar_energy(const ElectronState& psi, const PhononField& phi) {
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("pekar_energy: psi must be normalized");
  const Model& m = *psi.model;
  EffectivePotential pot = build_potential(phi);
  ElectronState hpsi = m.make_electron();
  apply_h_phi_electron(m, pot, psi, hpsi);
  return inner(psi, hpsi).real();
}

PhononField optimal_phi(const ElectronState& psi) {
  const Model& m = *psi.model;
  const std::size_t nx = m.nx();
  // rho_hat(k_j) = sum_m h^dim e^{-i k_j x_m} |psi_m|^2; the minimizer of the
  // phi-quadratic ||phi||^2 + int V_phi |psi|^2 is phi_j = -v_j conj(rho_hat_j).
  std::vector<cplx> rho(nx);
  const double h = m.cell_volume();
  for (std::size_t mm = 0; mm < nx; ++mm) rho[mm] = h * std::norm(psi.psi[mm]);
  m.fft().forward(rho.data());
  PhononField phi = m.make_field();
  for (std::size_t j = 0; j < nx; ++j) phi.amps[j] = -m.coupling_v(j) * std::conj(rho[j]);
  phi.amps[m.grid().zero_index] = 0;
  return phi;
}

PekarResult pekar_minimize(const ElectronState& init_psi, const PekarOptions& opts) {
  const Model& m = *init_psi.model;
  if (std::abs(init_psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("pekar_minimize: init_psi must be normalized");

  PekarResult res;
  res.psi = init_psi;
  res.phi = optimal_phi(res.psi);
  res.energy = pekar_energy(res.psi, res.phi);

  ElectronState hpsi = m.make_electron();
  double step = opts.init_step;
  double last_step = 0;

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    EffectivePotential pot = build_potential(res.phi);
    apply_h_phi_electron(m, pot, res.psi, hpsi);
    const double lambda = inner(res.psi, hpsi).real();
    ElectronState grad = m.make_electron();
    for (std::size_t i = 0; i < grad.psi.size(); ++i)
      grad.psi[i] = hpsi.psi[i] - lambda * res.psi.psi[i];
    const double gnorm = grad.norm();
    res.trace.push_back({iter, res.energy, gnorm, last_step});
    if (opts.grad_tol > 0 && gnorm < opts.grad_tol) {
      res.converged = true;
      break;
    }

    // Backtracking projected-gradient step at fixed phi, then the closed-form
    // phi update; both moves are non-increasing in the pair energy.
    bool accepted = false;
    double s = step;
    while (s > 1e-16) {
      ElectronState cand = m.make_electron();
      for (std::size_t i = 0; i < cand.psi.size(); ++i)
        cand.psi[i] = res.psi.psi[i] - s * grad.psi[i];
      const double n = cand.norm();
      if (n > 0) {
        for (auto& v : cand.psi) v /= n;
        PhononField cand_phi = optimal_phi(cand);
        const double cand_e = pekar_energy(cand, cand_phi);
        if (cand_e <= res.energy - 1e-4 * s * gnorm * gnorm) {
          res.psi = cand;
          res.phi = std::move(cand_phi);
          const double decrease = res.energy - cand_e;
          res.energy = cand_e;
          last_step = s;
          step = s * 2.0;
          accepted = true;
          if (res.energy < opts.divergence_floor) {
            throw std::runtime_error(
                "pekar_minimize: energy " + std::to_string(res.energy) +
                " fell below the divergence floor; the grid is too coarse for "
                "the self-focusing term");
          }
          if (decrease < opts.energy_tol) res.converged = true;
          break;
        }
      }
      s *= 0.5;
    }
    if (!accepted || res.converged) {
      res.converged = true;
      break;
    }
  }
  // Final state row.
  {
    EffectivePotential pot = build_potential(res.phi);
    apply_h_phi_electron(m, pot, res.psi, hpsi);
    const double lambda = inner(res.psi, hpsi).real();
    double g2 = 0;
    for (std::size_t i = 0; i < hpsi.psi.size(); ++i)
      g2 += std::norm(hpsi.psi[i] - lambda * res.psi.psi[i]);
    res.trace.push_back({static_cast<int>(res.trace.size()), res.energy,
                         std::sqrt(g2 * m.cell_volume()), last_step});
  }
  return res;
}

}  // namespace pekarlab
