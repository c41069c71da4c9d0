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

#include "sepball/states.hpp"

#include <cmath>
#include <sstream>

#include "sepball/error.hpp"

namespace sepball {

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix mat, DimSignature sig) {
  require_square(mat, "density matrix");
  if (static_cast<std::size_t>(mat.rows()) != sig.total()) {
    std::ostringstream msg;
    msg << "density matrix of size " << mat.rows() << " does not match dims total " << sig.total();
    fail(ErrorCode::DimensionMismatch, msg.str());
  }
  require_finite(mat, "density matrix");
  require_hermitian(mat, "density matrix");
  const Complex tr = mat.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density matrix trace is " << tr.real() << " (expected 1)";
    fail(ErrorCode::TraceNotOne, msg.str());
  }
  const double lowest = hermitian_eigenvalues(mat)(0);
  if (lowest < -kPsdTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density matrix is not positive semi-definite (most negative eigenvalue " << lowest
        << ")";
    fail(ErrorCode::NotPsd, msg.str());
  }
  return DensityMatrix(std::move(mat), std::move(sig));
}

double DensityMatrix::purity() const { return trace_product(mat_, mat_); }

ProductState::ProductState(std::vector<DensityMatrix> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) fail(ErrorCode::InvalidArgument, "product state needs at least one factor");
  std::vector<std::size_t> dims;
  std::vector<ComplexMatrix> mats;
  for (const DensityMatrix& f : factors_) {
    if (f.sig().parties() != 1) {
      fail(ErrorCode::DimensionMismatch, "product factors must be single-subsystem states");
    }
    dims.push_back(f.dim());
    mats.push_back(f.matrix());
    const RealVector ev = hermitian_eigenvalues(f.matrix());
    factor_min_.push_back(std::max(0.0, ev(0)));
    factor_max_.push_back(ev(ev.size() - 1));
  }
  sig_ = DimSignature(std::move(dims));
  full_ = kron_all(mats);
}

double ProductState::min_eigenvalue() const noexcept {
  double v = 1.0;
  for (double x : factor_min_) v *= x;
  return v;
}

double ProductState::max_eigenvalue() const noexcept {
  double v = 1.0;
  for (double x : factor_max_) v *= x;
  return v;
}

DensityMatrix ProductState::state() const { return DensityMatrix::from_matrix(full_, sig_); }

void SeparableDecomposition::validate() const {
  if (components.empty()) fail(ErrorCode::InvalidArgument, "decomposition has no components");
  if (weights.size() != components.size()) {
    fail(ErrorCode::InvalidArgument, "decomposition weight and component counts differ");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      fail(ErrorCode::InvalidArgument, "decomposition weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kTraceTol) {
    fail(ErrorCode::InvalidArgument, "decomposition weights must sum to 1");
  }
  for (const ProductState& c : components) {
    if (!(c.sig() == components.front().sig())) {
      fail(ErrorCode::DimensionMismatch, "decomposition components have different signatures");
    }
  }
}

ComplexMatrix SeparableDecomposition::reconstruction() const {
  validate();
  ComplexMatrix out = ComplexMatrix::Zero(components.front().matrix().rows(),
                                          components.front().matrix().cols());
  for (std::size_t i = 0; i < components.size(); ++i) out += weights[i] * components[i].matrix();
  return out;
}

const DimSignature& SeparableDecomposition::sig() const {
  if (components.empty()) fail(ErrorCode::InvalidArgument, "decomposition has no components");
  return components.front().sig();
}

RngSeed derive_seed(RngSeed base, std::uint64_t index) {
  // splitmix64 finalizer over the combined words
  std::uint64_t z = base.value + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return RngSeed{z ^ (z >> 31)};
}

DensityMatrix density_from_matrix(ComplexMatrix mat, DimSignature sig) {
  return DensityMatrix::from_matrix(std::move(mat), std::move(sig));
}

ProductState product_state(std::vector<DensityMatrix> factors) {
  return ProductState(std::move(factors));
}

ProductState maximally_mixed(const DimSignature& sig) {
  std::vector<DensityMatrix> factors;
  for (std::size_t d : sig.dims()) {
    factors.push_back(DensityMatrix::from_matrix(
        ComplexMatrix::Identity(d, d) / static_cast<double>(d), DimSignature({d})));
  }
  return ProductState(std::move(factors));
}

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_traceless_direction(std::size_t dim, Rng& rng) {
  if (dim < 2) fail(ErrorCode::InvalidArgument, "traceless directions need dim >= 2");
  ComplexMatrix h = random_hermitian(dim, rng);
  const Complex shift = h.trace() / static_cast<double>(dim);
  h.diagonal().array() -= shift;
  return h / frobenius_norm(h);
}

DensityMatrix random_density_ginibre(std::size_t dim, Rng& rng) {
  if (dim == 0) fail(ErrorCode::InvalidArgument, "dimension must be positive");
  const ComplexMatrix g = random_ginibre(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(std::move(rho), DimSignature({dim}));
}

ProductState random_product_state(const DimSignature& sig, Rng& rng, double min_eig_floor) {
  std::size_t largest = 0;
  for (std::size_t d : sig.dims()) largest = std::max(largest, d);
  if (!(min_eig_floor >= 0.0) || min_eig_floor >= 1.0 / static_cast<double>(largest)) {
    fail(ErrorCode::InvalidArgument, "min_eig_floor must lie in [0, 1/max(dims))");
  }
  std::vector<DensityMatrix> factors;
  for (std::size_t d : sig.dims()) {
    bool accepted = false;
    for (int attempt = 0; attempt < kFloorResampleCap; ++attempt) {
      DensityMatrix f = random_density_ginibre(d, rng);
      if (min_eig_floor == 0.0 || hermitian_eigenvalues(f.matrix())(0) >= min_eig_floor) {
        factors.push_back(std::move(f));
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      std::ostringstream msg;
      msg << "no factor with lambda_min >= " << min_eig_floor << " after " << kFloorResampleCap
          << " draws";
      fail(ErrorCode::FloorUnreachable, msg.str());
    }
  }
  return ProductState(std::move(factors));
}

DensityMatrix random_in_ball(const ProductState& center, double radius, Rng& rng) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    fail(ErrorCode::InvalidArgument, "ball radius must be finite and nonnegative");
  }
  const std::size_t d = center.sig().total();
  if (d < 2 || radius == 0.0) return center.state();
  const ComplexMatrix dir = random_traceless_direction(d, rng);
  const double r = radius * rng.uniform();
  return DensityMatrix::from_matrix(center.matrix() + r * dir, center.sig());
}

DensityMatrix local_filter(const DensityMatrix& rho, const std::vector<ComplexMatrix>& xs) {
  const DimSignature& sig = rho.sig();
  if (xs.size() != sig.parties()) {
    fail(ErrorCode::DimensionMismatch, "need one filter per subsystem");
  }
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k].rows() != xs[k].cols() || static_cast<std::size_t>(xs[k].rows()) != sig[k]) {
      fail(ErrorCode::DimensionMismatch, "filter " + std::to_string(k) + " has the wrong size");
    }
    require_finite(xs[k], "filter");
    const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(xs[k]).singularValues();
    if (sv(sv.size() - 1) <= 1e-12 * sv(0)) {
      fail(ErrorCode::SingularFactor, "filter " + std::to_string(k) + " is not invertible");
    }
  }
  const ComplexMatrix x = kron_all(xs);
  ComplexMatrix out = x * rho.matrix() * x.adjoint();
  out = 0.5 * (out + out.adjoint());
  out /= out.trace().real();
  return DensityMatrix::from_matrix(std::move(out), sig);
}

ComplexMatrix bell_projector() {
  ComplexMatrix p = ComplexMatrix::Zero(4, 4);
  p(0, 0) = p(0, 3) = p(3, 0) = p(3, 3) = 0.5;
  return p;
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::InvalidP, "Werner parameter must lie in [0, 1]");
  const ComplexMatrix mat = p * bell_projector() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix::from_matrix(mat, DimSignature({2, 2}));
}

}  // namespace sepball
