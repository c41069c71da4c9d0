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
#include <utility>
#include <vector>

#include "sepball/linalg.hpp"
#include "sepball/states.hpp"

namespace sepball {

// lambda_min at or below this is treated as singular.
inline constexpr double kRankTol = 1e-10;
// Minimum partial-transpose eigenvalue accepted as PPT.
inline constexpr double kPptTol = 1e-10;

enum class Criterion {
  BallFrobenius,
  BallSchatten,
  Trace,
  Pinsker,
  Decomposition,
  GurvitsIdentity,
};

enum class Verdict { CertifiedSeparable, Inconclusive };

const char* criterion_name(Criterion c) noexcept;
const char* verdict_name(Verdict v) noexcept;
std::optional<Criterion> parse_criterion(const std::string& name);
std::optional<Verdict> parse_verdict(const std::string& name);

/// Outcome of one sufficient criterion. `margin = threshold - achieved` and the
/// state is certified exactly when the margin is nonnegative (closed balls).
struct Certificate {
  Criterion criterion = Criterion::BallFrobenius;
  Verdict verdict = Verdict::Inconclusive;
  double threshold = 0.0;
  double achieved = 0.0;
  double margin = 0.0;
  std::vector<std::pair<std::string, double>> details;

  bool certified() const noexcept { return verdict == Verdict::CertifiedSeparable; }
  std::optional<double> detail(const std::string& key) const;
};

Certificate make_certificate(Criterion c, double threshold, double achieved,
                             std::vector<std::pair<std::string, double>> details = {});

struct NegativityReport {
  Subset bipartition;
  double min_pt_eigenvalue = 0.0;
  double negativity = 0.0;
  bool is_ppt = true;
};

/// 2^{1 - m/2}, the identity-ball radius for m parties.
double party_factor(std::size_t parties);

double ball_radius(const ProductState& prod);
double schatten_ball_radius(const ProductState& prod, double p);

Certificate certify_ball(const DensityMatrix& rho, const ProductState& prod, double p = 2.0);
Certificate certify_trace(const DensityMatrix& rho, const ProductState& prod);

/// Quantum relative entropy D(rho || sigma); +inf when supp(rho) is not
/// inside supp(sigma).
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);
Certificate certify_pinsker(const DensityMatrix& rho, const ProductState& prod);

double decomposition_radius(const SeparableDecomposition& decomp);
Certificate certify_decomposition(const DensityMatrix& rho, const SeparableDecomposition& decomp);

/// ||d rho - I||_F <= 2^{1-m/2}.
Certificate certify_identity_ball(const DensityMatrix& rho);

NegativityReport negativity(const DensityMatrix& rho, const Subset& bipartition);

/// Cuts worth checking for a signature: {0} when bipartite, every single
/// party otherwise, none for m = 1.
std::vector<Subset> default_cuts(const DimSignature& sig);

/// Ball (p = 2), trace and Pinsker certificates, in that order.
std::vector<Certificate> certify_all(const DensityMatrix& rho, const ProductState& prod);

struct TightnessWitness {
  ComplexMatrix matrix;
  double min_eigenvalue = 0.0;
};

/// A_1 (x) A_2 - a |x><x| with |x> the lambda_min eigenvector.
TightnessWitness hermitian_tightness_witness(const ProductState& prod, double a);

}  // namespace sepball
