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

#include <cstdint>
#include <random>
#include <vector>

#include "sepball/linalg.hpp"

namespace sepball {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

/// Validated density matrix: Hermitian, unit trace, PSD up to roundoff.
class DensityMatrix {
 public:
  /// Throws NotHermitian, TraceNotOne or NotPsd (the message carries the most
  /// negative eigenvalue).
  static DensityMatrix from_matrix(ComplexMatrix mat, DimSignature sig);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  const DimSignature& sig() const noexcept { return sig_; }
  std::size_t dim() const noexcept { return sig_.total(); }

  double purity() const;

 private:
  DensityMatrix(ComplexMatrix mat, DimSignature sig) : mat_(std::move(mat)), sig_(std::move(sig)) {}

  ComplexMatrix mat_;
  DimSignature sig_;
};

/// rho_1 (x) ... (x) rho_m with the full matrix and per-factor extremal
/// eigenvalues cached at construction.
class ProductState {
 public:
  explicit ProductState(std::vector<DensityMatrix> factors);

  const std::vector<DensityMatrix>& factors() const noexcept { return factors_; }
  const ComplexMatrix& matrix() const noexcept { return full_; }
  const DimSignature& sig() const noexcept { return sig_; }
  std::size_t parties() const noexcept { return factors_.size(); }

  const std::vector<double>& factor_min_eigenvalues() const noexcept { return factor_min_; }
  const std::vector<double>& factor_max_eigenvalues() const noexcept { return factor_max_; }

  /// Product of the factor minima; equals lambda_min of the full matrix.
  double min_eigenvalue() const noexcept;
  double max_eigenvalue() const noexcept;

  DensityMatrix state() const;

 private:
  std::vector<DensityMatrix> factors_;
  ComplexMatrix full_;
  DimSignature sig_;
  std::vector<double> factor_min_;
  std::vector<double> factor_max_;
};

struct SeparableDecomposition {
  std::vector<double> weights;
  std::vector<ProductState> components;

  /// Checks weights >= 0 summing to 1, matching counts and signatures.
  void validate() const;
  ComplexMatrix reconstruction() const;
  const DimSignature& sig() const;
};

struct RngSeed {
  std::uint64_t value = 0;
};

/// Deterministic sample stream. Not shareable across threads.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Seed for trial `index` of a sweep started from `base`. Independent of the
/// order in which trials are run.
RngSeed derive_seed(RngSeed base, std::uint64_t index);

DensityMatrix density_from_matrix(ComplexMatrix mat, DimSignature sig);
ProductState product_state(std::vector<DensityMatrix> factors);
ProductState maximally_mixed(const DimSignature& sig);

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);
/// Uniform direction on the unit sphere of traceless Hermitian matrices.
ComplexMatrix random_traceless_direction(std::size_t dim, Rng& rng);

DensityMatrix random_density_ginibre(std::size_t dim, Rng& rng);

inline constexpr int kFloorResampleCap = 10000;
ProductState random_product_state(const DimSignature& sig, Rng& rng, double min_eig_floor = 0.0);

/// center + r * direction with r ~ U[0, radius]. Throws NotPsd when the draw
/// leaves the state space.
DensityMatrix random_in_ball(const ProductState& center, double radius, Rng& rng);

DensityMatrix local_filter(const DensityMatrix& rho, const std::vector<ComplexMatrix>& xs);

ComplexMatrix bell_projector();
DensityMatrix werner_state(double p);

}  // namespace sepball
