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

#include <optional>
#include <string>
#include <vector>

#include "sepball/criteria.hpp"
#include "sepball/states.hpp"

namespace sepball {

struct ApproximationResult {
  ProductState product;
  double distance = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Best distance so far, starting with the initial distance; the last entry
  /// equals `distance`.
  std::vector<double> objective_trace;
};

inline constexpr std::size_t kDefaultMaxIter = 500;
inline constexpr double kDefaultApproxTol = 1e-9;

/// Tr_{not k}[rho] for every k.
ProductState reduced_product(const DensityMatrix& rho);

/// Alternating exact factor updates for min ||rho - rho_1 (x) ... (x) rho_m||_F
/// over product states. Each update solves its factor subproblem exactly (the
/// objective is isotropic in one factor) and projects onto density matrices.
ApproximationResult closest_product(const DensityMatrix& rho, const ProductState& init,
                                    std::size_t max_iter = kDefaultMaxIter,
                                    double tol = kDefaultApproxTol);

/// Frobenius projection of a Hermitian matrix onto unit-trace PSD matrices.
ComplexMatrix project_to_density(const ComplexMatrix& h);

/// Minimizer of ||alpha rho - prod||_F, Tr[rho prod] / Tr[rho^2].
double optimal_scaling_alpha(const DensityMatrix& rho, const ProductState& prod);

enum class CandidateStrategy { Reduced, Closest, Both };

struct CandidateResult {
  std::string name;  // "reduced" or "closest"
  std::optional<ProductState> product;
  double distance = 0.0;
  std::vector<Certificate> certificates;
  std::string note;  // set when the candidate was skipped
};

struct AutoCertifyResult {
  std::vector<CandidateResult> candidates;
  std::vector<NegativityReport> negativity;

  bool certified() const;
};

AutoCertifyResult auto_certify(const DensityMatrix& rho, CandidateStrategy strategy,
                               std::size_t max_iter = kDefaultMaxIter,
                               double tol = kDefaultApproxTol);

}  // namespace sepball
