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

#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sepball {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Ordered subsystem indices (0-based).
using Subset = std::vector<std::size_t>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Per-subsystem dimensions of a multipartite Hilbert space.
///
/// Factor 0 is the most significant digit of a composite index, matching the
/// ordering of kron(a, b).
class DimSignature {
 public:
  DimSignature() = default;
  explicit DimSignature(std::vector<std::size_t> dims);

  std::size_t parties() const noexcept { return dims_.size(); }
  std::size_t total() const noexcept { return total_; }
  std::size_t operator[](std::size_t k) const { return dims_.at(k); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  /// Product of the dimensions of the listed factors.
  std::size_t total_of(std::span<const std::size_t> factors) const;

  bool operator==(const DimSignature& other) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 0;
};

struct Spectrum {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns follow `values`

  double min() const { return values(0); }
  double max() const { return values(values.size() - 1); }
};

// Hermiticity is judged on max|h - h^dagger| <= kHermitianRelTol * (1 + max|h|).
inline constexpr double kHermitianRelTol = 1e-10;

double max_abs_entry(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& h);
void require_square(const ComplexMatrix& a, const char* what);
void require_hermitian(const ComplexMatrix& h, const char* what);
void require_finite(const ComplexMatrix& a, const char* what);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

Spectrum hermitian_eig(const ComplexMatrix& h);
RealVector hermitian_eigenvalues(const ComplexMatrix& h);

double frobenius_norm(const ComplexMatrix& a);

/// Schatten p-norm of a Hermitian matrix, p in [1, inf]. Pass kInfinity for
/// the operator norm.
double schatten_norm(const ComplexMatrix& a, double p);

/// Real part of Tr[a b]; exact for Hermitian a, b.
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const DimSignature& sig,
                                const Subset& subset);
ComplexMatrix partial_trace(const ComplexMatrix& rho, const DimSignature& sig,
                            const Subset& keep);

/// exp(-i t h) through the spectral decomposition of h.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

/// Spectral logarithm of a PSD matrix. Eigenvalues in [-tol, tol] are mapped to
/// zero (the support convention); anything below -tol is an error.
ComplexMatrix matrix_log_psd(const ComplexMatrix& a, double tol = 1e-10);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sorted, deduplicated copy of `subset`, validated against `parties`.
/// Requires a nonempty proper subset.
Subset normalize_proper_subset(const Subset& subset, std::size_t parties);

}  // namespace sepball
