// Copyright 2026 The sepball Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sepball/dynamics.hpp"

#include <cmath>
#include <functional>

#include "sepball/error.hpp"

namespace sepball {

namespace {

bool proportional_to_identity(const ComplexMatrix& a) {
  const std::size_t d = a.rows();
  const Complex mean = a.trace() / static_cast<double>(d);
  const ComplexMatrix rest = a - mean * ComplexMatrix::Identity(d, d);
  return max_abs_entry(rest) <= 1e-12 * (1.0 + max_abs_entry(a));
}

double pt_negativity(const ComplexMatrix& rho, const DimSignature& sig, const Subset& cut) {
  const RealVector ev = hermitian_eigenvalues(partial_transpose(rho, sig, cut));
  double neg = 0.0;
  for (double v : ev) neg += std::max(0.0, -v);
  return neg;
}

// Smallest t in (lo, hi] (to `resolution`) where `outside` flips to true,
// given outside(lo) is false and outside(hi) is true.
double refine_crossing(double lo, double hi, double resolution,
                       const std::function<bool(double)>& outside) {
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (outside(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

HamiltonianSpec::HamiltonianSpec(DimSignature sig, std::vector<HamiltonianTerm> terms)
    : sig_(std::move(sig)), terms_(std::move(terms)) {
  const std::size_t d = sig_.total();
  full_ = ComplexMatrix::Zero(d, d);
  for (std::size_t p = 0; p < terms_.size(); ++p) {
    const HamiltonianTerm& term = terms_[p];
    if (term.factors.size() != sig_.parties()) {
      fail(ErrorCode::DimensionMismatch,
           "Hamiltonian term " + std::to_string(p) + " needs one factor per subsystem");
    }
    if (!std::isfinite(term.coeff)) fail(ErrorCode::InvalidArgument, "Hamiltonian coefficient is not finite");
    for (std::size_t k = 0; k < term.factors.size(); ++k) {
      const ComplexMatrix& f = term.factors[k];
      if (f.rows() != f.cols() || static_cast<std::size_t>(f.rows()) != sig_[k]) {
        fail(ErrorCode::DimensionMismatch, "Hamiltonian factor size does not match dims");
      }
      require_finite(f, "Hamiltonian factor");
      require_hermitian(f, "Hamiltonian factor");
    }
    full_ += term.coeff * kron_all(term.factors);
  }
  full_ = 0.5 * (full_ + full_.adjoint());
}

HamiltonianSpec HamiltonianSpec::zero(const DimSignature& sig) { return HamiltonianSpec(sig, {}); }

bool HamiltonianSpec::has_local_terms() const {
  for (const HamiltonianTerm& term : terms_) {
    std::size_t nontrivial = 0;
    for (const ComplexMatrix& f : term.factors) {
      if (!proportional_to_identity(f)) ++nontrivial;
    }
    if (term.coeff != 0.0 && nontrivial <= 1) return true;
  }
  return false;
}

HamiltonianSpec HamiltonianSpec::scaled(double factor) const {
  std::vector<HamiltonianTerm> terms = terms_;
  for (HamiltonianTerm& t : terms) t.coeff *= factor;
  return HamiltonianSpec(sig_, std::move(terms));
}

HamiltonianSpec random_hamiltonian(const DimSignature& sig, std::size_t terms, Rng& rng,
                                   bool traceless_factors) {
  if (terms == 0) fail(ErrorCode::InvalidArgument, "need at least one Hamiltonian term");
  std::vector<HamiltonianTerm> list;
  for (std::size_t p = 0; p < terms; ++p) {
    HamiltonianTerm term;
    for (std::size_t d : sig.dims()) {
      ComplexMatrix f = random_hermitian(d, rng);
      if (traceless_factors) f.diagonal().array() -= f.trace() / static_cast<double>(d);
      term.factors.push_back(std::move(f));
    }
    list.push_back(std::move(term));
  }
  HamiltonianSpec raw(sig, list);
  const double norm = frobenius_norm(raw.matrix());
  if (norm == 0.0) fail(ErrorCode::Internal, "random Hamiltonian vanished");
  return raw.scaled(1.0 / norm);
}

Propagator::Propagator(const HamiltonianSpec& h) : spectrum_(hermitian_eig(h.matrix())) {}

ComplexMatrix Propagator::unitary(double t) const {
  Eigen::VectorXcd phases(spectrum_.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -t * spectrum_.values(i)));
  }
  return spectrum_.vectors * phases.asDiagonal() * spectrum_.vectors.adjoint();
}

ComplexMatrix Propagator::evolve(const ComplexMatrix& rho0, double t) const {
  const ComplexMatrix u = unitary(t);
  ComplexMatrix out = u * rho0 * u.adjoint();
  return 0.5 * (out + out.adjoint());
}

DensityMatrix evolve(const DensityMatrix& rho0, const HamiltonianSpec& h, double t) {
  if (!(rho0.sig() == h.sig())) fail(ErrorCode::DimensionMismatch, "state and Hamiltonian dims differ");
  return DensityMatrix::from_matrix(Propagator(h).evolve(rho0.matrix(), t), rho0.sig());
}

ComplexMatrix first_order_state(const DensityMatrix& rho0, const HamiltonianSpec& h, double t) {
  if (!(rho0.sig() == h.sig())) fail(ErrorCode::DimensionMismatch, "state and Hamiltonian dims differ");
  return rho0.matrix() + Complex(0.0, t) * commutator(rho0.matrix(), h.matrix());
}

Timeline timeline(const ProductState& rho0, const HamiltonianSpec& h, double t_max,
                  std::size_t steps, const Subset& bipartition) {
  if (!(rho0.sig() == h.sig())) fail(ErrorCode::DimensionMismatch, "state and Hamiltonian dims differ");
  if (steps < 2) fail(ErrorCode::InvalidArgument, "timeline needs at least 2 grid points");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) fail(ErrorCode::InvalidArgument, "t_max must be positive");
  const DimSignature& sig = rho0.sig();
  const Subset cut = normalize_proper_subset(bipartition, sig.parties());

  const Propagator prop(h);
  const ComplexMatrix& start = rho0.matrix();
  const bool full_rank = rho0.min_eigenvalue() > kRankTol;

  Timeline tl;
  tl.local_terms = h.has_local_terms();
  tl.ball_radius = full_rank ? ball_radius(rho0) : 0.0;
  if (!full_rank) tl.ball_exit_time = 0.0;

  auto distance_at = [&](double t) { return frobenius_norm(prop.evolve(start, t) - start); };
  auto negativity_at = [&](double t) { return pt_negativity(prop.evolve(start, t), sig, cut); };
  const double resolution = kBisectionRelTol * t_max;

  for (std::size_t i = 0; i < steps; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
    const ComplexMatrix rho_t = prop.evolve(start, t);
    tl.times.push_back(t);
    tl.distances.push_back(i == 0 ? 0.0 : frobenius_norm(rho_t - start));
    tl.negativities.push_back(pt_negativity(rho_t, sig, cut));

    if (i == 0) continue;
    const double prev_t = tl.times[i - 1];
    if (!tl.ball_exit_time && tl.distances[i] > tl.ball_radius) {
      tl.ball_exit_time = refine_crossing(prev_t, t, resolution,
                                          [&](double s) { return distance_at(s) > tl.ball_radius; });
    }
    if (!tl.onset_time && tl.negativities[i] > kOnsetTol) {
      tl.onset_time = refine_crossing(prev_t, t, resolution,
                                      [&](double s) { return negativity_at(s) > kOnsetTol; });
    }
  }
  return tl;
}

EntanglingTimeBound entangling_time_bound(const ProductState& rho0, const HamiltonianSpec& h) {
  if (!(rho0.sig() == h.sig())) fail(ErrorCode::DimensionMismatch, "state and Hamiltonian dims differ");
  const double lmin = rho0.min_eigenvalue();
  const double lmax = rho0.max_eigenvalue();
  const double h_norm = frobenius_norm(h.matrix());
  EntanglingTimeBound out;
  if (lmin <= kRankTol) return out;  // both bounds 0

  const double comm = frobenius_norm(commutator(rho0.matrix(), h.matrix()));
  const double comm_floor = 1e-13 * frobenius_norm(rho0.matrix()) * h_norm;
  out.t_commutator = (comm <= comm_floor || h_norm == 0.0) ? kInfinity : lmin / comm;

  const double gap = lmax - lmin;
  out.t_spectral = (gap <= 1e-13 || h_norm == 0.0) ? kInfinity : lmin / (gap * h_norm);
  return out;
}

UncertaintyProduct uncertainty_product(const ProductState& rho0, const HamiltonianSpec& h,
                                       std::optional<double> measured_onset) {
  const double lmin = rho0.min_eigenvalue();
  const double gap = rho0.max_eigenvalue() - lmin;
  UncertaintyProduct out;
  if (lmin <= kRankTol) {
    out.bound = 0.0;
  } else {
    out.bound = gap <= 1e-13 ? kInfinity : lmin / gap;
  }
  if (measured_onset) {
    out.product = *measured_onset * frobenius_norm(h.matrix());
    out.exceeds = out.bound == 0.0 || *out.product > out.bound;
  }
  return out;
}

}  // namespace sepball
