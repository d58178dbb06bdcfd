// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "pekarlab/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "pekarlab/propagator.hpp"

namespace pekarlab {

HybridState OperatorHandle::apply(const HybridState& in) const {
  HybridState out = in.model->make_hybrid();
  apply_into(in, out);
  return out;
}

HybridState OperatorHandle::adjoint_apply(const HybridState& in) const {
  if (!adjoint_apply_into) throw std::logic_error(label + ": no adjoint");
  HybridState out = in.model->make_hybrid();
  adjoint_apply_into(in, out);
  return out;
}

OperatorHandle operator_sum(std::string label, std::vector<OperatorHandle> parts,
                            bool hermitian) {
  OperatorHandle h;
  h.label = std::move(label);
  h.hermitian = hermitian;
  h.apply_into = [parts](const HybridState& in, HybridState& out) {
    HybridState tmp = in.model->make_hybrid();
    std::fill(out.coeffs.begin(), out.coeffs.end(), cplx{0, 0});
    for (const auto& p : parts) {
      p.apply_into(in, tmp);
      for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += tmp.coeffs[i];
    }
  };
  return h;
}

void apply_annihilation_field(const PhononField& f, const HybridState& in,
                              HybridState& out, bool with_phase) {
  const Model& m = *in.model;
  const auto& basis = m.basis();
  const auto& grid = m.grid();
  const std::size_t nx = m.nx();
  const int K = basis.K();
  const double pref = std::sqrt(grid.weight) / m.alpha();

  std::fill(out.coeffs.begin(), out.coeffs.end(), cplx{0, 0});
  for (int ja = 0; ja < K; ++ja) {
    const cplx coef = pref * std::conj(f.amps[grid.active[static_cast<std::size_t>(ja)]]);
    if (coef == cplx{0, 0}) continue;
    const cplx* phase = with_phase ? m.phase_minus(static_cast<std::size_t>(ja)).data() : nullptr;
    for (std::size_t o = 0; o < basis.size(); ++o) {
      const std::size_t lo = basis.lower(ja, o);
      if (lo == FockBasis::npos) continue;
      const cplx c = coef * std::sqrt(static_cast<double>(basis.occ_of_mode(ja, o)));
      const cplx* src = in.coeffs.data() + o * nx;
      cplx* dst = out.coeffs.data() + lo * nx;
      if (phase) {
        for (std::size_t mm = 0; mm < nx; ++mm) dst[mm] += c * phase[mm] * src[mm];
      } else {
        for (std::size_t mm = 0; mm < nx; ++mm) dst[mm] += c * src[mm];
      }
    }
  }
}

double apply_creation_field(const PhononField& f, const HybridState& in,
                            HybridState& out, bool with_phase) {
  const Model& m = *in.model;
  const auto& basis = m.basis();
  const auto& grid = m.grid();
  const std::size_t nx = m.nx();
  const int K = basis.K();
  const double pref = std::sqrt(grid.weight) / m.alpha();

  std::fill(out.coeffs.begin(), out.coeffs.end(), cplx{0, 0});
  double overflow = 0;
  for (int ja = 0; ja < K; ++ja) {
    const cplx coef = pref * f.amps[grid.active[static_cast<std::size_t>(ja)]];
    if (coef == cplx{0, 0}) continue;
    const cplx* phase = with_phase ? m.phase_minus(static_cast<std::size_t>(ja)).data() : nullptr;
    for (std::size_t o = 0; o < basis.size(); ++o) {
      const std::size_t ro = basis.raise(ja, o);
      const double nj1 = basis.occ_of_mode(ja, o) + 1.0;
      if (ro == FockBasis::npos) {
        // Creation past the top sector: project away, account the mass.
        double s = 0;
        const cplx* src = in.coeffs.data() + o * nx;
        for (std::size_t mm = 0; mm < nx; ++mm) s += std::norm(src[mm]);
        overflow += std::norm(coef) * nj1 * s;
        continue;
      }
      const cplx c = coef * std::sqrt(nj1);
      const cplx* src = in.coeffs.data() + o * nx;
      cplx* dst = out.coeffs.data() + ro * nx;
      if (phase) {
        // e^{+ik.x} is the conjugate of the stored e^{-ik.x} table.
        for (std::size_t mm = 0; mm < nx; ++mm) dst[mm] += c * std::conj(phase[mm]) * src[mm];
      } else {
        for (std::size_t mm = 0; mm < nx; ++mm) dst[mm] += c * src[mm];
      }
    }
  }
  return overflow * m.cell_volume();
}

void apply_number(const HybridState& in, HybridState& out) {
  const Model& m = *in.model;
  const auto& basis = m.basis();
  const std::size_t nx = m.nx();
  const double inv_a2 = 1.0 / (m.alpha() * m.alpha());
  for (std::size_t o = 0; o < basis.size(); ++o) {
    const double val = inv_a2 * basis.total(o);
    const cplx* src = in.coeffs.data() + o * nx;
    cplx* dst = out.coeffs.data() + o * nx;
    for (std::size_t mm = 0; mm < nx; ++mm) dst[mm] = val * src[mm];
  }
}

void apply_kinetic(const HybridState& in, HybridState& out) {
  const Model& m = *in.model;
  const std::size_t nx = m.nx();
  const std::size_t nf = m.fock_dim();
  const double inv_nx = 1.0 / static_cast<double>(nx);
  out.coeffs = in.coeffs;
  for (std::size_t o = 0; o < nf; ++o) {
    cplx* block = out.coeffs.data() + o * nx;
    m.fft().forward(block);
    for (std::size_t q = 0; q < nx; ++q) block[q] *= m.grid().ksq[q] * inv_nx;
    m.fft().backward(block);
  }
}

OperatorHandle number_operator(const ModelPtr& m) {
  OperatorHandle h;
  h.label = "N";
  h.hermitian = true;
  h.apply_into = [](const HybridState& in, HybridState& out) { apply_number(in, out); };
  h.adjoint_apply_into = h.apply_into;
  (void)m;
  return h;
}

OperatorHandle kinetic_operator(const ModelPtr& m) {
  OperatorHandle h;
  h.label = "p^2";
  h.hermitian = true;
  h.apply_into = [](const HybridState& in, HybridState& out) { apply_kinetic(in, out); };
  h.adjoint_apply_into = h.apply_into;
  (void)m;
  return h;
}

OperatorHandle momentum_component_operator(const ModelPtr& m, int axis) {
  OperatorHandle h;
  h.label = "p_" + std::to_string(axis);
  h.hermitian = true;
  h.apply_into = [axis](const HybridState& in, HybridState& out) {
    const Model& mod = *in.model;
    const std::size_t nx = mod.nx();
    const double inv_nx = 1.0 / static_cast<double>(nx);
    out.coeffs = in.coeffs;
    for (std::size_t o = 0; o < mod.fock_dim(); ++o) {
      cplx* block = out.coeffs.data() + o * nx;
      mod.fft().forward(block);
      for (std::size_t q = 0; q < nx; ++q)
        block[q] *= mod.grid().kpoints[q][static_cast<std::size_t>(axis)] * inv_nx;
      mod.fft().backward(block);
    }
  };
  h.adjoint_apply_into = h.apply_into;
  (void)m;
  return h;
}

OperatorHandle annihilation_field_operator(const ModelPtr& m, PhononField f, bool with_phase) {
  OperatorHandle h;
  h.label = "a(e^{ikx}f)";
  h.hermitian = false;
  auto field = std::make_shared<PhononField>(std::move(f));
  h.apply_into = [field, with_phase](const HybridState& in, HybridState& out) {
    apply_annihilation_field(*field, in, out, with_phase);
  };
  h.adjoint_apply_into = [field, with_phase](const HybridState& in, HybridState& out) {
    apply_creation_field(*field, in, out, with_phase);
  };
  (void)m;
  return h;
}

OperatorHandle field_sum_operator(const ModelPtr& m, PhononField f, bool with_phase) {
  OperatorHandle h;
  h.label = "a(e^{ikx}f) + a*(e^{ikx}f)";
  h.hermitian = true;
  auto field = std::make_shared<PhononField>(std::move(f));
  h.apply_into = [field, with_phase](const HybridState& in, HybridState& out) {
    HybridState tmp = in.model->make_hybrid();
    apply_annihilation_field(*field, in, out, with_phase);
    apply_creation_field(*field, in, tmp, with_phase);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += tmp.coeffs[i];
  };
  h.adjoint_apply_into = h.apply_into;
  (void)m;
  return h;
}

WeylResult apply_weyl(const PhononField& f, int sign, const HybridState& in, double tol,
                      double max_loss) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("apply_weyl: sign must be +1 or -1");
  const ModelPtr model = in.model;
  auto field = std::make_shared<PhononField>(f);

  // i(a*(f) - a(f)) is Hermitian, so exp(sign (a* - a)) = exp(-i H sign) with
  // H that generator; the Krylov exponential then applies unchanged.
  OperatorHandle gen;
  gen.label = "i(a*(f) - a(f))";
  gen.hermitian = true;
  gen.apply_into = [field](const HybridState& in_, HybridState& out_) {
    HybridState tmp = in_.model->make_hybrid();
    apply_creation_field(*field, in_, out_, /*with_phase=*/false);
    apply_annihilation_field(*field, in_, tmp, /*with_phase=*/false);
    for (std::size_t i = 0; i < out_.coeffs.size(); ++i) {
      out_.coeffs[i] = cplx{0, 1} * (out_.coeffs[i] - tmp.coeffs[i]);
    }
  };

  // Truncation loss: first-order accumulation of the generator overflow,
  // integral of ||(1-P) a*(f) Psi(s)|| along the internal steps.
  WeylResult result{in, 0.0};
  double loss = 0;
  EvolveOptions opts;
  opts.tol = tol;
  HybridState probe_out = model->make_hybrid();
  opts.step_probe = [&](const HybridState& state, double step) {
    const double drop = apply_creation_field(*field, state, probe_out, false);
    loss += std::abs(step) * std::sqrt(drop);
  };
  result.state = evolve(gen, in, static_cast<double>(sign), opts);
  result.loss = loss;
  if (loss > max_loss) {
    throw std::runtime_error("apply_weyl: truncation loss " + std::to_string(loss) +
                             " exceeds the admissible " + std::to_string(max_loss));
  }
  return result;
}

}  // namespace pekarlab
