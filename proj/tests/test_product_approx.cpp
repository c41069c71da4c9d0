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

#include <cmath>

#include "doctest.h"
#include "sepball/error.hpp"
#include "sepball/product_approx.hpp"
#include "test_util.hpp"

using namespace sepball;

namespace {

const DimSignature kQubits({2, 2});

DensityMatrix bell_state() { return density_from_matrix(bell_projector(), kQubits); }

}  // namespace

TEST_CASE("reduced_product") {
  Rng rng(RngSeed{1});
  for (const auto& dims : std::vector<std::vector<std::size_t>>{{2, 2}, {2, 3}, {2, 2, 2}}) {
    const ProductState p = random_product_state(DimSignature(dims), rng);
    const ProductState r = reduced_product(p.state());
    CHECK(frobenius_norm(r.matrix() - p.matrix()) < 1e-10);
    for (std::size_t k = 0; k < p.parties(); ++k)
      CHECK((r.factors()[k].matrix() - p.factors()[k].matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }
  const ProductState half = maximally_mixed(kQubits);
  CHECK(reduced_product(bell_state()).matrix().isApprox(half.matrix()));
  for (double p : {0.0, 0.3, 0.7, 1.0}) CHECK(reduced_product(werner_state(p)).matrix().isApprox(half.matrix()));

  const DensityMatrix single = random_density_ginibre(3, rng);
  CHECK(reduced_product(single).matrix() == single.matrix());
}

TEST_CASE("project_to_density lands in the state space") {
  Rng rng(RngSeed{4});
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix h = random_hermitian(3, rng);
    const ComplexMatrix p = project_to_density(h);
    CHECK_NOTHROW(density_from_matrix(p, DimSignature({3})));
  }
  // States are fixed points.
  const DensityMatrix rho = random_density_ginibre(3, rng);
  CHECK((project_to_density(rho.matrix()) - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("closest_product on product inputs") {
  Rng rng(RngSeed{7});
  for (int trial = 0; trial < 20; ++trial) {
    const ProductState p = random_product_state(kQubits, rng);
    const ApproximationResult fixed = closest_product(p.state(), p);
    CHECK(fixed.distance < 1e-8);
    CHECK(fixed.converged);
    CHECK(fixed.iterations <= 2);

    const ProductState init = random_product_state(kQubits, rng);
    const ApproximationResult res = closest_product(p.state(), init);
    CHECK(res.distance < 1e-6);
    for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
      CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-15);
    CHECK(res.objective_trace.back() == res.distance);
  }
}

TEST_CASE("closest_product never worsens the start") {
  Rng rng(RngSeed{8});
  const DensityMatrix bell = bell_state();
  const ProductState red = reduced_product(bell);
  const ApproximationResult res = closest_product(bell, red);
  CHECK(res.distance <= frobenius_norm(bell.matrix() - red.matrix()) + 1e-15);
  // The Bell state is at least sqrt(1 - 1/2) away from any product: |<Phi+|a,b>|^2 <= 1/2.
  CHECK(res.distance >= std::sqrt(0.5) - 1e-9);

  for (int trial = 0; trial < 100; ++trial) {
    const DimSignature sig(trial % 2 ? std::vector<std::size_t>{2, 3} : std::vector<std::size_t>{2, 2, 2});
    const DensityMatrix rho = density_from_matrix(random_density_ginibre(sig.total(), rng).matrix(), sig);
    const ProductState init = reduced_product(rho);
    const ApproximationResult r = closest_product(rho, init, 200, 1e-10);
    const double start = frobenius_norm(rho.matrix() - init.matrix());
    CHECK(r.distance <= start + 1e-12);
    CHECK(r.objective_trace.front() == start);
    CHECK(std::abs(r.distance - frobenius_norm(rho.matrix() - r.product.matrix())) < 1e-10);
  }
  CHECK_THROWS_AS(closest_product(bell, maximally_mixed(DimSignature({2, 3}))), Error);
}

TEST_CASE("optimal scaling alpha") {
  const ProductState mm = maximally_mixed(kQubits);
  CHECK(optimal_scaling_alpha(mm.state(), mm) == doctest::Approx(1.0));
  Rng rng(RngSeed{2});
  const ProductState p = random_product_state(kQubits, rng);
  CHECK(optimal_scaling_alpha(p.state(), p) == doctest::Approx(1.0));
  CHECK(optimal_scaling_alpha(mm.state(), p) == doctest::Approx(1.0));

  for (int trial = 0; trial < 100; ++trial) {
    const ProductState q = random_product_state(kQubits, rng);
    const DensityMatrix rho = density_from_matrix(random_density_ginibre(4, rng).matrix(), kQubits);
    const double alpha = optimal_scaling_alpha(rho, q);
    const double best = frobenius_norm(alpha * rho.matrix() - q.matrix());
    for (int k = 0; k <= 300; ++k) {
      const double a = 3.0 * k / 300.0;
      CHECK(best <= frobenius_norm(a * rho.matrix() - q.matrix()) + 1e-10);
    }
  }
}

TEST_CASE("auto_certify") {
  Rng rng(RngSeed{3});
  const ProductState p = random_product_state(kQubits, rng);
  const AutoCertifyResult own = auto_certify(p.state(), CandidateStrategy::Reduced);
  REQUIRE(own.candidates.size() == 1);
  CHECK(own.candidates[0].certificates.at(0).criterion == Criterion::BallFrobenius);
  CHECK(own.candidates[0].certificates.at(0).certified());
  CHECK(own.certified());

  const AutoCertifyResult w = auto_certify(werner_state(0.30), CandidateStrategy::Reduced);
  CHECK(w.candidates[0].product->matrix().isApprox(maximally_mixed(kQubits).matrix()));
  CHECK_FALSE(w.candidates[0].certificates[0].certified());
  CHECK(w.candidates[0].certificates[1].criterion == Criterion::Trace);
  CHECK(w.candidates[0].certificates[1].certified());

  const AutoCertifyResult bell = auto_certify(bell_state(), CandidateStrategy::Both);
  CHECK(bell.candidates.size() == 2);
  CHECK_FALSE(bell.certified());
  REQUIRE(bell.negativity.size() == 1);
  CHECK(bell.negativity[0].negativity == doctest::Approx(0.5));

  // A pure product state reduces to a rank-deficient candidate, which is skipped.
  const DensityMatrix pure = density_from_matrix(testutil::diag({1.0, 0.0, 0.0, 0.0}), kQubits);
  const AutoCertifyResult skipped = auto_certify(pure, CandidateStrategy::Reduced);
  CHECK(skipped.candidates[0].certificates.empty());
  CHECK_FALSE(skipped.candidates[0].note.empty());
  CHECK_FALSE(skipped.certified());
}

TEST_CASE("auto_certify is sound against negativity") {
  Rng rng(RngSeed{10});
  for (int trial = 0; trial < 300; ++trial) {
    const ProductState p = random_product_state(kQubits, rng);
    ComplexMatrix psi = random_ginibre(4, 1, rng);
    psi /= psi.norm();
    const double s = 0.3 * rng.uniform();
    const DensityMatrix rho =
        density_from_matrix((1 - s) * p.matrix() + s * (psi * psi.adjoint()), kQubits);
    const AutoCertifyResult r = auto_certify(rho, CandidateStrategy::Both, 100, 1e-9);
    if (r.certified()) CHECK(r.negativity[0].negativity <= 1e-9);
  }
}
