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

#include "sepball/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "sepball/error.hpp"

namespace sepball {

namespace {

// Mixed-radix digits of every composite index, factor 0 most significant.
std::vector<std::vector<std::size_t>> index_digits(const DimSignature& sig) {
  const std::size_t d = sig.total();
  const std::size_t m = sig.parties();
  std::vector<std::vector<std::size_t>> digits(d, std::vector<std::size_t>(m));
  for (std::size_t idx = 0; idx < d; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = m; k-- > 0;) {
      digits[idx][k] = rest % sig[k];
      rest /= sig[k];
    }
  }
  return digits;
}

void require_matches(const ComplexMatrix& rho, const DimSignature& sig) {
  require_square(rho, "operator");
  if (static_cast<std::size_t>(rho.rows()) != sig.total()) {
    std::ostringstream msg;
    msg << "operator dimension " << rho.rows() << " does not match signature total "
        << sig.total();
    fail(ErrorCode::DimensionMismatch, msg.str());
  }
}

std::vector<bool> subset_mask(const Subset& subset, std::size_t parties) {
  std::vector<bool> mask(parties, false);
  for (std::size_t k : subset) mask[k] = true;
  return mask;
}

}  // namespace

DimSignature::DimSignature(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) fail(ErrorCode::InvalidArgument, "signature needs at least one subsystem");
  total_ = 1;
  for (std::size_t d : dims_) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "subsystem dimension must be positive");
    total_ *= d;
  }
}

std::size_t DimSignature::total_of(std::span<const std::size_t> factors) const {
  std::size_t t = 1;
  for (std::size_t k : factors) t *= dims_.at(k);
  return t;
}

double max_abs_entry(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) return false;
  const double dev = max_abs_entry(h - h.adjoint());
  return dev <= kHermitianRelTol * (1.0 + max_abs_entry(h));
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    fail(ErrorCode::DimensionMismatch, std::string(what) + " must be square");
  }
}

void require_hermitian(const ComplexMatrix& h, const char* what) {
  require_square(h, what);
  if (!is_hermitian(h)) {
    std::ostringstream msg;
    msg << what << " is not Hermitian (max |h - h^dagger| = " << max_abs_entry(h - h.adjoint())
        << ")";
    fail(ErrorCode::NotHermitian, msg.str());
  }
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.allFinite()) fail(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::Identity(1, 1);
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

Spectrum hermitian_eig(const ComplexMatrix& h) {
  require_hermitian(h, "matrix");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) fail(ErrorCode::Internal, "eigensolver did not converge");
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  require_hermitian(h, "matrix");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorCode::Internal, "eigensolver did not converge");
  return solver.eigenvalues();
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double schatten_norm(const ComplexMatrix& a, double p) {
  if (std::isnan(p) || p < 1.0) fail(ErrorCode::InvalidP, "Schatten norm needs p >= 1");
  const RealVector mags = hermitian_eigenvalues(a).cwiseAbs();
  if (mags.size() == 0) return 0.0;
  const double top = mags.maxCoeff();
  if (std::isinf(p)) return top;
  if (p == 1.0) return mags.sum();
  if (p == 2.0) return mags.norm();
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : mags) acc += std::pow(v / top, p);
  return top * std::pow(acc, 1.0 / p);
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    fail(ErrorCode::DimensionMismatch, "trace_product shape mismatch");
  }
  return (a.array() * b.transpose().array()).sum().real();
}

Subset normalize_proper_subset(const Subset& subset, std::size_t parties) {
  Subset s = subset;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) fail(ErrorCode::InvalidSubset, "subset must be nonempty");
  if (s.back() >= parties) {
    fail(ErrorCode::InvalidSubset, "subset index " + std::to_string(s.back()) + " out of range");
  }
  if (s.size() == parties) fail(ErrorCode::InvalidSubset, "subset must be a proper subset");
  return s;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const DimSignature& sig,
                                const Subset& subset) {
  require_matches(rho, sig);
  const Subset s = normalize_proper_subset(subset, sig.parties());
  const std::vector<bool> mask = subset_mask(s, sig.parties());
  const auto digits = index_digits(sig);
  const std::size_t d = sig.total();
  const std::size_t m = sig.parties();

  ComplexMatrix out(d, d);
  std::vector<std::size_t> rd(m), cd(m);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      std::size_t nr = 0, nc = 0;
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t a = mask[k] ? digits[c][k] : digits[r][k];
        const std::size_t b = mask[k] ? digits[r][k] : digits[c][k];
        nr = nr * sig[k] + a;
        nc = nc * sig[k] + b;
      }
      out(nr, nc) = rho(r, c);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const DimSignature& sig,
                            const Subset& keep) {
  require_matches(rho, sig);
  const Subset s = normalize_proper_subset(keep, sig.parties());
  const std::vector<bool> mask = subset_mask(s, sig.parties());
  const auto digits = index_digits(sig);
  const std::size_t d = sig.total();
  const std::size_t m = sig.parties();
  const std::size_t kept = sig.total_of(s);

  ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      bool diagonal_in_traced = true;
      std::size_t kr = 0, kc = 0;
      for (std::size_t k = 0; k < m; ++k) {
        if (mask[k]) {
          kr = kr * sig[k] + digits[r][k];
          kc = kc * sig[k] + digits[c][k];
        } else if (digits[r][k] != digits[c][k]) {
          diagonal_in_traced = false;
          break;
        }
      }
      if (diagonal_in_traced) out(kr, kc) += rho(r, c);
    }
  }
  return out;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  const Spectrum spec = hermitian_eig(h);
  Eigen::VectorXcd phases(spec.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -t * spec.values(i)));
  }
  return spec.vectors * phases.asDiagonal() * spec.vectors.adjoint();
}

ComplexMatrix matrix_log_psd(const ComplexMatrix& a, double tol) {
  const Spectrum spec = hermitian_eig(a);
  RealVector logs(spec.values.size());
  for (Eigen::Index i = 0; i < logs.size(); ++i) {
    const double v = spec.values(i);
    if (v < -tol) {
      std::ostringstream msg;
      msg << "matrix has negative eigenvalue " << v;
      fail(ErrorCode::NotPsd, msg.str());
    }
    logs(i) = v <= tol ? 0.0 : std::log(v);
  }
  return spec.vectors * logs.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "commutator operand");
  require_square(b, "commutator operand");
  if (a.rows() != b.rows()) fail(ErrorCode::DimensionMismatch, "commutator operands differ in size");
  return a * b - b * a;
}

}  // namespace sepball
