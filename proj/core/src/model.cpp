// Copyright 2026 The Pekarlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "pekarlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace pekarlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool compatible(const ModelPtr& a, const ModelPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  const auto& ca = a->config();
  const auto& cb = b->config();
  return ca.dim == cb.dim && ca.M == cb.M && ca.L == cb.L && ca.nmax == cb.nmax &&
         ca.alpha == cb.alpha;
}

void require_compatible(const ModelPtr& a, const ModelPtr& b, const char* what) {
  if (!compatible(a, b)) throw std::invalid_argument(std::string(what) + ": mismatched metadata");
}
}  // namespace

double ModeGrid::momentum_radius() const {
  double r = 0;
  for (double k : knorm) r = std::max(r, k);
  return r;
}

ModeGrid build_mode_grid(int dim, int M, double L) {
  ModeGrid g;
  g.dim = dim;
  g.M = M;
  g.L = L;
  const double dk = kTwoPi / L;
  g.weight = std::pow(dk, dim);
  g.n_modes = 1;
  for (int d = 0; d < dim; ++d) g.n_modes *= static_cast<std::size_t>(M);
  g.kpoints.resize(g.n_modes);
  g.knorm.resize(g.n_modes);
  g.ksq.resize(g.n_modes);
  g.neg_index.resize(g.n_modes);
  g.zero_index = 0;

  // FFT bin order: per-axis bin a represents integer frequency a (a <= M/2-1)
  // or a - M (a >= M/2). Flat index is row-major over axes.
  for (std::size_t j = 0; j < g.n_modes; ++j) {
    std::size_t rem = j;
    std::size_t negflat = 0;
    std::size_t stride = g.n_modes;
    double ksq = 0;
    std::array<double, 3> kp{0, 0, 0};
    for (int d = 0; d < dim; ++d) {
      stride /= static_cast<std::size_t>(M);
      const int a = static_cast<int>(rem / stride);
      rem %= stride;
      const int n = (a <= M / 2 - 1) ? a : a - M;
      const int aneg = (M - a) % M;  // modular negation; Nyquist is self-paired
      kp[d] = dk * n;
      ksq += kp[d] * kp[d];
      negflat += static_cast<std::size_t>(aneg) * stride;
    }
    g.kpoints[j] = kp;
    g.ksq[j] = ksq;
    g.knorm[j] = std::sqrt(ksq);
    g.neg_index[j] = negflat;
  }
  g.active.reserve(g.n_modes - 1);
  for (std::size_t j = 1; j < g.n_modes; ++j) g.active.push_back(j);
  return g;
}

// --- FockBasis --------------------------------------------------------------

std::size_t FockBasis::dimension(int K, int nmax) {
  // C(K + nmax, nmax), saturating.
  std::size_t result = 1;
  for (int i = 1; i <= nmax; ++i) {
    const double est = static_cast<double>(result) * (K + i) / i;
    if (est > 1e18) return std::numeric_limits<std::size_t>::max();
    result = result * static_cast<std::size_t>(K + i) / static_cast<std::size_t>(i);
  }
  return result;
}

FockBasis::FockBasis(int K, int nmax) : K_(K), nmax_(nmax) {
  if (K <= 0) throw std::invalid_argument("FockBasis: K must be positive");
  if (nmax < 0) throw std::invalid_argument("FockBasis: nmax must be >= 0");

  std::vector<std::uint8_t> occ(static_cast<std::size_t>(K), 0);
  sector_begin_.assign(static_cast<std::size_t>(nmax) + 2, 0);

  // Ordered by total occupation, then lexicographically in (n_1,...,n_K).
  auto emit = [&] {
    occs_.insert(occs_.end(), occ.begin(), occ.end());
    totals_.push_back(
        static_cast<int>(std::accumulate(occ.begin(), occ.end(), std::size_t{0})));
  };
  for (int s = 0; s <= nmax; ++s) {
    sector_begin_[static_cast<std::size_t>(s)] = totals_.size();
    // Recursively fill positions in lexicographic order.
    auto gen = [&](auto&& self, int pos, int remaining) -> void {
      if (pos == K - 1) {
        occ[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(remaining);
        emit();
        occ[static_cast<std::size_t>(pos)] = 0;
        return;
      }
      for (int v = 0; v <= remaining; ++v) {
        occ[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(v);
        self(self, pos + 1, remaining - v);
      }
      occ[static_cast<std::size_t>(pos)] = 0;
    };
    gen(gen, 0, s);
  }
  sector_begin_[static_cast<std::size_t>(nmax) + 1] = totals_.size();

  std::map<std::vector<std::uint8_t>, std::size_t> index;
  for (std::size_t o = 0; o < totals_.size(); ++o) {
    std::vector<std::uint8_t> key(occs_.begin() + static_cast<std::ptrdiff_t>(o * K_),
                                  occs_.begin() + static_cast<std::ptrdiff_t>((o + 1) * K_));
    index.emplace(std::move(key), o);
  }

  const std::size_t nf = totals_.size();
  lower_.assign(static_cast<std::size_t>(K_) * nf, npos);
  raise_.assign(static_cast<std::size_t>(K_) * nf, npos);
  std::vector<std::uint8_t> key(static_cast<std::size_t>(K_));
  for (std::size_t o = 0; o < nf; ++o) {
    for (int j = 0; j < K_; ++j) {
      std::copy(occs_.begin() + static_cast<std::ptrdiff_t>(o * K_),
                occs_.begin() + static_cast<std::ptrdiff_t>((o + 1) * K_), key.begin());
      if (key[static_cast<std::size_t>(j)] > 0) {
        --key[static_cast<std::size_t>(j)];
        lower_[idx(j, o)] = index.at(key);
        ++key[static_cast<std::size_t>(j)];
      }
      if (totals_[o] < nmax_) {
        ++key[static_cast<std::size_t>(j)];
        raise_[idx(j, o)] = index.at(key);
      }
    }
  }
}

std::span<const std::uint8_t> FockBasis::occupation(std::size_t ordinal) const {
  return {occs_.data() + ordinal * static_cast<std::size_t>(K_),
          static_cast<std::size_t>(K_)};
}

std::size_t FockBasis::ordinal_of(std::span<const std::uint8_t> occ) const {
  if (occ.size() != static_cast<std::size_t>(K_)) return npos;
  // Linear scan within the total-occupation sector; basis sizes are small.
  int total = 0;
  for (auto v : occ) total += v;
  if (total > nmax_) return npos;
  for (std::size_t o = sector_begin(total); o < sector_end(total); ++o) {
    if (std::equal(occ.begin(), occ.end(), occupation(o).begin())) return o;
  }
  return npos;
}

// --- states ------------------------------------------------------------------

double PhononField::norm_sq() const {
  double s = 0;
  for (const auto& a : amps) s += std::norm(a);
  return s * model->grid().weight;
}

PhononField PhononField::zero(ModelPtr m) {
  PhononField f;
  f.amps.assign(m->grid().n_modes, cplx{0, 0});
  f.model = std::move(m);
  return f;
}

double ElectronState::norm_sq() const {
  double s = 0;
  for (const auto& v : psi) s += std::norm(v);
  return s * model->cell_volume();
}

double ElectronState::norm() const { return std::sqrt(norm_sq()); }

void ElectronState::normalize() {
  const double n = norm();
  if (n == 0) throw std::invalid_argument("cannot normalize the zero state");
  for (auto& v : psi) v /= n;
}

double HybridState::norm_sq() const {
  double s = 0;
  for (const auto& v : coeffs) s += std::norm(v);
  return s * model->cell_volume();
}

double HybridState::norm() const { return std::sqrt(norm_sq()); }

double HybridState::top_sector_mass() const {
  const auto& basis = model->basis();
  const std::size_t nx = model->nx();
  const std::size_t begin = basis.sector_begin(basis.nmax());
  const std::size_t end = basis.sector_end(basis.nmax());
  double s = 0;
  for (std::size_t i = begin * nx; i < end * nx; ++i) s += std::norm(coeffs[i]);
  return s * model->cell_volume();
}

std::vector<double> HybridState::sector_masses() const {
  const auto& basis = model->basis();
  const std::size_t nx = model->nx();
  std::vector<double> masses(static_cast<std::size_t>(basis.nmax()) + 1, 0.0);
  for (std::size_t o = 0; o < basis.size(); ++o) {
    double s = 0;
    for (std::size_t m = 0; m < nx; ++m) s += std::norm(coeffs[o * nx + m]);
    masses[static_cast<std::size_t>(basis.total(o))] += s;
  }
  for (auto& v : masses) v *= model->cell_volume();
  return masses;
}

cplx inner(const HybridState& a, const HybridState& b) {
  require_compatible(a.model, b.model, "inner");
  if (a.coeffs.size() != b.coeffs.size()) throw std::invalid_argument("inner: size mismatch");
  cplx s{0, 0};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) s += std::conj(a.coeffs[i]) * b.coeffs[i];
  return s * a.model->cell_volume();
}

cplx inner(const ElectronState& a, const ElectronState& b) {
  require_compatible(a.model, b.model, "inner");
  cplx s{0, 0};
  for (std::size_t i = 0; i < a.psi.size(); ++i) s += std::conj(a.psi[i]) * b.psi[i];
  return s * a.model->cell_volume();
}

double h1_norm(const ElectronState& psi) {
  const Model& m = *psi.model;
  std::vector<cplx> buf = psi.psi;
  m.fft().forward(buf.data());
  const double nx = static_cast<double>(m.nx());
  const double scale = std::pow(m.config().L, m.config().dim) / (nx * nx);
  double s = 0;
  for (std::size_t q = 0; q < m.nx(); ++q) s += (1.0 + m.grid().ksq[q]) * std::norm(buf[q]);
  return std::sqrt(scale * s);
}

// --- Model -------------------------------------------------------------------

ModelPtr Model::build(const ModelConfig& cfg, const BuildOptions& opts) {
  cfg.validate();
  auto model = std::shared_ptr<Model>(new Model());
  model->cfg_ = cfg;
  model->grid_ = build_mode_grid(cfg.dim, cfg.M, cfg.L);
  model->cell_vol_ = std::pow(cfg.L / cfg.M, cfg.dim);
  model->lambda_ =
      cfg.lambda_cut > 0 ? cfg.lambda_cut : 0.5 * model->grid_.momentum_radius();
  model->fft_ = std::make_unique<FftEngine>(cfg.dim, cfg.M);

  model->coupling_v_.assign(model->grid_.n_modes, 0.0);
  if (cfg.coupling_form == CouplingForm::InverseK) {
    for (std::size_t j : model->grid_.active)
      model->coupling_v_[j] = 1.0 / model->grid_.knorm[j];
  }

  if (opts.hybrid) {
    const int K = static_cast<int>(model->grid_.n_active());
    const std::size_t nf = FockBasis::dimension(K, cfg.nmax);
    const std::size_t nx = model->grid_.n_modes;
    if (nf == std::numeric_limits<std::size_t>::max() ||
        nf > opts.hybrid_dim_budget / std::max<std::size_t>(nx, 1)) {
      const std::size_t dim =
          nf == std::numeric_limits<std::size_t>::max() ? nf : nf * nx;
      throw BudgetError("hybrid dimension exceeds the configured budget", dim);
    }
    model->basis_ = FockBasis(K, cfg.nmax);
    model->has_hybrid_ = true;

    // Phase table e^{-i k_j . x_m} per active mode.
    model->phase_minus_.resize(static_cast<std::size_t>(K) * nx);
    const double h = cfg.L / cfg.M;
    for (int ja = 0; ja < K; ++ja) {
      const auto& kp = model->grid_.kpoints[model->grid_.active[static_cast<std::size_t>(ja)]];
      cplx* row = model->phase_minus_.data() + static_cast<std::size_t>(ja) * nx;
      for (std::size_t mm = 0; mm < nx; ++mm) {
        std::size_t rem = mm;
        std::size_t stride = nx;
        double dot = 0;
        for (int d = 0; d < cfg.dim; ++d) {
          stride /= static_cast<std::size_t>(cfg.M);
          const auto md = static_cast<double>(rem / stride);
          rem %= stride;
          dot += kp[d] * h * md;
        }
        row[mm] = std::polar(1.0, -dot);
      }
    }
  }
  return model;
}

const FockBasis& Model::basis() const {
  if (!has_hybrid_) throw std::logic_error("model was built without the hybrid space");
  return basis_;
}

std::size_t Model::fock_dim() const { return basis().size(); }

std::size_t Model::hybrid_dim() const { return fock_dim() * nx(); }

std::span<const cplx> Model::phase_minus(std::size_t active_rank) const {
  return {phase_minus_.data() + active_rank * nx(), nx()};
}

HybridState Model::make_hybrid() const {
  HybridState s;
  s.model = shared_from_this();
  s.coeffs.assign(hybrid_dim(), cplx{0, 0});
  return s;
}

ElectronState Model::make_electron() const {
  ElectronState s;
  s.model = shared_from_this();
  s.psi.assign(nx(), cplx{0, 0});
  return s;
}

PhononField Model::make_field() const { return PhononField::zero(shared_from_this()); }

HybridState Model::product_with_vacuum(const ElectronState& psi) const {
  HybridState s = make_hybrid();
  std::copy(psi.psi.begin(), psi.psi.end(), s.coeffs.begin());  // vacuum is ordinal 0
  return s;
}

ElectronState Model::electron_column(const HybridState& s, std::size_t ordinal) const {
  ElectronState e = make_electron();
  std::copy(s.coeffs.begin() + static_cast<std::ptrdiff_t>(ordinal * nx()),
            s.coeffs.begin() + static_cast<std::ptrdiff_t>((ordinal + 1) * nx()),
            e.psi.begin());
  return e;
}

ModelPtr build_model(const ModelConfig& cfg, const BuildOptions& opts) {
  return Model::build(cfg, opts);
}

double weighted_norm(const HybridState& Psi, double wp, double wn, double c) {
  const Model& m = *Psi.model;
  const auto& basis = m.basis();
  const std::size_t nx = m.nx();
  const double inv_a2 = 1.0 / (m.alpha() * m.alpha());
  const double nxd = static_cast<double>(nx);
  const double scale = std::pow(m.config().L, m.config().dim) / (nxd * nxd);
  std::vector<cplx> buf(nx);
  double s = 0;
  for (std::size_t o = 0; o < basis.size(); ++o) {
    std::copy(Psi.coeffs.begin() + static_cast<std::ptrdiff_t>(o * nx),
              Psi.coeffs.begin() + static_cast<std::ptrdiff_t>((o + 1) * nx), buf.begin());
    m.fft().forward(buf.data());
    const double nval = wn * inv_a2 * basis.total(o) + c;
    for (std::size_t q = 0; q < nx; ++q)
      s += (wp * m.grid().ksq[q] + nval) * std::norm(buf[q]);
  }
  return std::sqrt(scale * s);
}

AprioriConstants apriori_constants(const HybridState& Psi) {
  const Model& m = *Psi.model;
  const auto& basis = m.basis();
  const std::size_t nx = m.nx();
  const double inv_a2 = 1.0 / (m.alpha() * m.alpha());
  const double nxd = static_cast<double>(nx);
  const double scale = std::pow(m.config().L, m.config().dim) / (nxd * nxd);
  std::vector<cplx> buf(nx);
  double s1 = 0, s2 = 0;
  for (std::size_t o = 0; o < basis.size(); ++o) {
    std::copy(Psi.coeffs.begin() + static_cast<std::ptrdiff_t>(o * nx),
              Psi.coeffs.begin() + static_cast<std::ptrdiff_t>((o + 1) * nx), buf.begin());
    m.fft().forward(buf.data());
    const double nval = inv_a2 * basis.total(o);
    for (std::size_t q = 0; q < nx; ++q) {
      const double p2 = m.grid().ksq[q];
      const double w = std::norm(buf[q]);
      s1 += (p2 + nval + 1.0) * w;
      s2 += (p2 + 1.0) * nval * nval * w;
    }
  }
  AprioriConstants out;
  out.M1 = std::sqrt(scale * s1);
  out.M2 = std::sqrt(scale * s2);
  return out;
}

}  // namespace pekarlab
