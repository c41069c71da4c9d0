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
#include <vector>

#include "sepball/criteria.hpp"
#include "sepball/states.hpp"

namespace sepball {

struct HamiltonianTerm {
  double coeff = 1.0;
  std::vector<ComplexMatrix> factors;  // one Hermitian factor per subsystem
};

/// H = sum_p coeff_p * (A_p1 (x) ... (x) A_pm).
class HamiltonianSpec {
 public:
  HamiltonianSpec(DimSignature sig, std::vector<HamiltonianTerm> terms);

  static HamiltonianSpec zero(const DimSignature& sig);

  const DimSignature& sig() const noexcept { return sig_; }
  const std::vector<HamiltonianTerm>& terms() const noexcept { return terms_; }
  const ComplexMatrix& matrix() const noexcept { return full_; }

  /// True when some term acts nontrivially on at most one subsystem.
  bool has_local_terms() const;

  HamiltonianSpec scaled(double factor) const;

 private:
  DimSignature sig_;
  std::vector<HamiltonianTerm> terms_;
  ComplexMatrix full_;
};

/// Random H with `terms` product terms of Gaussian Hermitian factors,
/// normalized to ||H||_F = 1. With `traceless_factors` every factor has its
/// trace removed, so H has no local part.
HamiltonianSpec random_hamiltonian(const DimSignature& sig, std::size_t terms, Rng& rng,
                                   bool traceless_factors = false);

/// Caches the spectral decomposition of H for repeated evolution.
class Propagator {
 public:
  explicit Propagator(const HamiltonianSpec& h);

  ComplexMatrix unitary(double t) const;
  ComplexMatrix evolve(const ComplexMatrix& rho0, double t) const;

 private:
  Spectrum spectrum_;
};

DensityMatrix evolve(const DensityMatrix& rho0, const HamiltonianSpec& h, double t);

/// rho0 + i t [rho0, H]; Hermitian, unit trace, not necessarily PSD.
ComplexMatrix first_order_state(const DensityMatrix& rho0, const HamiltonianSpec& h, double t);

inline constexpr double kOnsetTol = 1e-9;
inline constexpr double kBisectionRelTol = 1e-9;

struct Timeline {
  std::vector<double> times;
  std::vector<double> distances;
  std::vector<double> negativities;
  double ball_radius = 0.0;
  std::optional<double> ball_exit_time;
  std::optional<double> onset_time;
  bool local_terms = false;
};

/// Uniform grid of `steps` points on [0, t_max]. Crossings are located at the
/// first grid sign change and refined by bisection to 1e-9 * t_max; a crossing
/// that reverses inside one grid cell is missed.
Timeline timeline(const ProductState& rho0, const HamiltonianSpec& h, double t_max,
                  std::size_t steps, const Subset& bipartition);

struct EntanglingTimeBound {
  double t_commutator = 0.0;
  double t_spectral = 0.0;
};

EntanglingTimeBound entangling_time_bound(const ProductState& rho0, const HamiltonianSpec& h);

struct UncertaintyProduct {
  std::optional<double> product;  // measured_onset * ||H||_F, empty without onset
  double bound = 0.0;             // lambda_min / (lambda_max - lambda_min)
  bool exceeds = false;
};

UncertaintyProduct uncertainty_product(const ProductState& rho0, const HamiltonianSpec& h,
                                       std::optional<double> measured_onset);

}  // namespace sepball
