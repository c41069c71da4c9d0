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
#include "oracles.hpp"
#include "sepball/criteria.hpp"
#include "sepball/error.hpp"
#include "sepball/states.hpp"
#include "test_util.hpp"

using namespace sepball;
using testutil::diag;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

const DimSignature kQubits({2, 2});

ProductState rank_deficient_pair() {
  return ProductState({testutil::qubit(1.0), testutil::qubit(0.5)});
}

}  // namespace

TEST_CASE("ball radius values") {
  CHECK(std::abs(ball_radius(maximally_mixed(kQubits)) - 0.25) < 1e-15);
  CHECK(ball_radius(testutil::diag_product()) == doctest::Approx(0.12).epsilon(1e-14));
  CHECK(ball_radius(maximally_mixed(DimSignature({2, 2, 2}))) ==
        doctest::Approx(std::pow(2.0, -0.5) / 8.0).epsilon(1e-14));
  CHECK(ball_radius(maximally_mixed(DimSignature({2, 2, 2}))) == doctest::Approx(0.088388).epsilon(1e-5));
  CHECK(code_of([] { ball_radius(rank_deficient_pair()); }) == ErrorCode::RankDeficient);
}

TEST_CASE("Schatten radii") {
  Rng rng(RngSeed{3});
  for (int trial = 0; trial < 20; ++trial) {
    const ProductState p = random_product_state(kQubits, rng);
    CHECK(schatten_ball_radius(p, 2.0) == ball_radius(p));
    CHECK(schatten_ball_radius(p, 1.0) == ball_radius(p));
    CHECK(schatten_ball_radius(p, 1.5) == ball_radius(p));
    CHECK(schatten_ball_radius(p, 4.0) == doctest::Approx(std::pow(4.0, -0.25) * ball_radius(p)));
  }
  CHECK(schatten_ball_radius(maximally_mixed(kQubits), kInfinity) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(code_of([] { schatten_ball_radius(maximally_mixed(kQubits), 0.9); }) == ErrorCode::InvalidP);
}

TEST_CASE("certify_ball on fixtures") {
  const ProductState mm = maximally_mixed(kQubits);
  const Certificate same = certify_ball(mm.state(), mm);
  CHECK(same.certified());
  CHECK(same.achieved == 0.0);
  CHECK(same.criterion == Criterion::BallFrobenius);

  const Certificate w25 = certify_ball(werner_state(0.25), mm);
  CHECK(w25.achieved == doctest::Approx(oracle::werner::distance_to_mixed(0.25)).epsilon(1e-13));
  CHECK(w25.achieved == doctest::Approx(0.21651).epsilon(1e-5));
  CHECK(w25.certified());

  const Certificate w30 = certify_ball(werner_state(0.30), mm);
  CHECK(w30.achieved == doctest::Approx(0.25981).epsilon(1e-5));
  CHECK_FALSE(w30.certified());
  CHECK(w30.margin < 0);
  CHECK(negativity(werner_state(0.30), {0}).is_ppt);

  const Certificate inf = certify_ball(werner_state(0.1), mm, kInfinity);
  CHECK(inf.criterion == Criterion::BallSchatten);
  CHECK(inf.threshold == doctest::Approx(0.125));
  CHECK(inf.achieved == doctest::Approx(0.1 * 0.75));

  CHECK(code_of([&] { certify_ball(maximally_mixed(DimSignature({2, 3})).state(), mm); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { certify_ball(mm.state(), rank_deficient_pair()); }) == ErrorCode::RankDeficient);
}

TEST_CASE("ball margin is affine along a direction and the ball is closed") {
  Rng rng(RngSeed{41});
  const ProductState p = random_product_state(kQubits, rng, 0.1);
  const ComplexMatrix dir = random_traceless_direction(4, rng);
  const double beta = ball_radius(p);
  std::vector<double> margins;
  for (int k = 0; k <= 4; ++k) {
    const double r = 0.25 * k * beta;
    margins.push_back(certify_ball(density_from_matrix(p.matrix() + r * dir, kQubits), p).margin);
  }
  for (int k = 1; k < 4; ++k) CHECK(margins[k - 1] - margins[k] == doctest::Approx(margins[k] - margins[k + 1]));
  CHECK(margins.back() == doctest::Approx(0.0).epsilon(1e-15));

  // Margin exactly 0 certifies.
  const Certificate edge = make_certificate(Criterion::BallFrobenius, 0.5, 0.5);
  CHECK(edge.certified());
  CHECK_FALSE(make_certificate(Criterion::BallFrobenius, 0.5, 0.5 + 1e-16).certified());
}

TEST_CASE("certify_trace") {
  const ProductState mm = maximally_mixed(kQubits);
  const Certificate self = certify_trace(mm.state(), mm);
  CHECK(self.certified());
  CHECK(self.detail("alpha").value() == doctest::Approx(1.0));

  Rng rng(RngSeed{9});
  const ProductState p = random_product_state(kQubits, rng);
  CHECK(certify_trace(p.state(), p).certified());
  CHECK(certify_trace(p.state(), p).detail("alpha").value() == doctest::Approx(1.0));

  // Against I/4 the decision is Tr[rho^2] <= 1/3.
  CHECK(certify_trace(werner_state(1.0 / 3.0 - 1e-9), mm).certified());
  CHECK(std::abs(certify_trace(werner_state(1.0 / 3.0), mm).margin) < 1e-15);
  CHECK_FALSE(certify_trace(werner_state(1.0 / 3.0 + 1e-9), mm).certified());
  const Certificate w = certify_trace(werner_state(0.32), mm);
  CHECK(w.detail("gamma").value() == doctest::Approx(0.25 - 0.0625));
  CHECK(w.detail("purity").value() == doctest::Approx(oracle::werner::purity(0.32)));
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = random_density_ginibre(4, rng);
    const DensityMatrix state = density_from_matrix(rho.matrix(), kQubits);
    const Certificate c = certify_trace(state, mm);
    CHECK(c.certified() == (state.purity() <= 1.0 / 3.0));
  }
}

TEST_CASE("certify_pinsker") {
  const ProductState mm = maximally_mixed(kQubits);
  const Certificate self = certify_pinsker(mm.state(), mm);
  CHECK(self.certified());
  CHECK(self.achieved == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(self.threshold == doctest::Approx(1.0 / 32.0).epsilon(1e-15));

  // Pinsker: D(rho||sigma) >= 0.5 ||rho - sigma||_1^2.
  Rng rng(RngSeed{12});
  for (int trial = 0; trial < 1000; ++trial) {
    const ProductState p = random_product_state(kQubits, rng);
    const DensityMatrix rho = density_from_matrix(random_density_ginibre(4, rng).matrix(), kQubits);
    const double d = relative_entropy(rho.matrix(), p.matrix());
    const double t1 = schatten_norm(rho.matrix() - p.matrix(), 1.0);
    CHECK(d >= 0.5 * t1 * t1 - 1e-12);
  }
  CHECK(relative_entropy(bell_projector(), diag({1.0, 0.0, 0.0, 0.0})) == kInfinity);
  CHECK(relative_entropy(diag({1.0, 0.0}), diag({0.5, 0.5})) == doctest::Approx(std::log(2.0)));
  CHECK(code_of([&] { certify_pinsker(mm.state(), rank_deficient_pair()); }) == ErrorCode::RankDeficient);
}

TEST_CASE("decomposition radius") {
  const ProductState mm = maximally_mixed(kQubits);
  CHECK(decomposition_radius({{1.0}, {mm}}) == ball_radius(mm));
  const SeparableDecomposition two{{0.5, 0.5}, {mm, rank_deficient_pair()}};
  CHECK(decomposition_radius(two) == doctest::Approx(0.125).epsilon(1e-15));
  const SeparableDecomposition swapped{{0.5, 0.5}, {rank_deficient_pair(), mm}};
  CHECK(decomposition_radius(swapped) == decomposition_radius(two));
  CHECK(code_of([] { decomposition_radius({{1.0}, {rank_deficient_pair()}}); }) == ErrorCode::NoFullRankComponent);

  const DensityMatrix recon = density_from_matrix(two.reconstruction(), kQubits);
  CHECK(certify_decomposition(recon, two).certified());

  // A point at distance exactly phi is certified (closed ball).
  Rng rng(RngSeed{19});
  const SeparableDecomposition single{{1.0}, {mm}};
  const ComplexMatrix dir = random_traceless_direction(4, rng);
  const DensityMatrix edge = density_from_matrix(mm.matrix() + 0.25 * dir, kQubits);
  const Certificate c = certify_decomposition(edge, single);
  CHECK(c.margin == doctest::Approx(0.0).epsilon(1e-15));

  for (int trial = 0; trial < 1000; ++trial) {
    const ProductState a = random_product_state(kQubits, rng), b = random_product_state(kQubits, rng);
    const double w = rng.uniform();
    const SeparableDecomposition dec{{w, 1.0 - w}, {a, b}};
    const double phi = decomposition_radius(dec);
    const ComplexMatrix step = random_traceless_direction(4, rng);
    const DensityMatrix rho = density_from_matrix(dec.reconstruction() + phi * rng.uniform() * step, kQubits);
    CHECK(certify_decomposition(rho, dec).certified());
    CHECK(negativity(rho, {0}).negativity <= 1e-9);
  }
}

TEST_CASE("identity ball") {
  CHECK(certify_identity_ball(maximally_mixed(kQubits).state()).certified());
  CHECK(certify_identity_ball(werner_state(0.25)).certified());   // ||4W - I||_F = 4 * 0.2165 <= 1
  CHECK_FALSE(certify_identity_ball(werner_state(0.3)).certified());
  const Certificate c = certify_identity_ball(werner_state(0.2));
  CHECK(c.achieved == doctest::Approx(4.0 * oracle::werner::distance_to_mixed(0.2)));
  CHECK(c.threshold == doctest::Approx(1.0));
}

TEST_CASE("negativity") {
  Rng rng(RngSeed{2});
  for (int trial = 0; trial < 50; ++trial) {
    const ProductState p = random_product_state(DimSignature({2, 3}), rng);
    const NegativityReport r = negativity(p.state(), {1});
    CHECK(r.negativity <= 1e-14);
    CHECK(r.is_ppt);
  }
  const NegativityReport bell = negativity(density_from_matrix(bell_projector(), kQubits), {1});
  CHECK(bell.negativity == doctest::Approx(0.5));
  CHECK(bell.min_pt_eigenvalue == doctest::Approx(-0.5));
  CHECK_FALSE(bell.is_ppt);
  CHECK(negativity(werner_state(0.6), {0}).negativity == doctest::Approx((3 * 0.6 - 1) / 4));
  CHECK(code_of([] { negativity(werner_state(0.5), {0, 1}); }) == ErrorCode::InvalidSubset);

  // Matches the index-loop oracle on a three-party state.
  const DimSignature tri({2, 2, 2});
  const DensityMatrix rho = density_from_matrix(random_density_ginibre(8, rng).matrix(), tri);
  const NegativityReport r = negativity(rho, {1});
  CHECK(r.negativity ==
        doctest::Approx(oracle::negativity(testutil::to_oracle(rho.matrix()), {2, 2, 2}, {false, true, false})));
}

TEST_CASE("default cuts") {
  CHECK(default_cuts(DimSignature({2})).empty());
  CHECK(default_cuts(DimSignature({2, 3})) == std::vector<Subset>{{0}});
  CHECK(default_cuts(DimSignature({2, 2, 2})).size() == 3);
}

TEST_CASE("certify_all on Werner states") {
  const ProductState mm = maximally_mixed(kQubits);
  for (const Certificate& c : certify_all(mm.state(), mm)) CHECK(c.certified());

  const std::vector<Certificate> w32 = certify_all(werner_state(0.32), mm);
  REQUIRE(w32.size() == 3);
  CHECK_FALSE(w32[0].certified());
  CHECK(w32[1].certified());

  for (const Certificate& c : certify_all(werner_state(0.40), mm)) CHECK_FALSE(c.certified());
  CHECK(negativity(werner_state(0.40), {0}).negativity == doctest::Approx(0.05));
}

TEST_CASE("soundness and nesting on random pairs") {
  Rng rng(RngSeed{101});
  for (const auto& dims : std::vector<std::vector<std::size_t>>{{2, 2}, {2, 3}}) {
    const DimSignature sig(dims);
    for (int trial = 0; trial < 500; ++trial) {
      const ProductState p = random_product_state(sig, rng);
      const double beta = ball_radius(p);
      const ComplexMatrix dir = random_traceless_direction(sig.total(), rng);
      double r = 3.0 * beta * rng.uniform();
      std::optional<DensityMatrix> rho;
      while (!rho) {
        try {
          rho = density_from_matrix(p.matrix() + r * dir, sig);
        } catch (const Error&) {
          r *= 0.5;
        }
      }
      bool any = false;
      for (const Certificate& c : certify_all(*rho, p)) any = any || c.certified();
      if (any) CHECK(negativity(*rho, {0}).is_ppt);
      if (certify_ball(*rho, p).certified()) CHECK(certify_trace(*rho, p).certified());
    }
  }
}

TEST_CASE("trace criterion contains the closed ball even for tiny radii") {
  Rng rng(RngSeed{102});
  for (int trial = 0; trial < 20000; ++trial) {
    // Nearly pure factors give beta down to ~1e-8, where the naive ratio loses the decision.
    const double a = 1e-3 * rng.uniform(), b = 1e-3 * rng.uniform();
    const ProductState p({testutil::qubit(1e-4 + a), testutil::qubit(1 - 1e-4 - b)});
    const double beta = ball_radius(p);
    const ComplexMatrix rho = p.matrix() + beta * random_traceless_direction(4, rng);
    if (frobenius_norm(rho - p.matrix()) > beta) continue;
    CHECK(certify_trace(density_from_matrix(rho, kQubits), p).certified());
  }
}

TEST_CASE("Hermitian tightness witness") {
  Rng rng(RngSeed{5});
  for (int trial = 0; trial < 20; ++trial) {
    const ProductState p = random_product_state(DimSignature({2, 3}), rng);
    const double lmin = p.min_eigenvalue();
    CHECK(hermitian_tightness_witness(p, 0.0).min_eigenvalue == doctest::Approx(lmin).epsilon(1e-12));
    CHECK(std::abs(hermitian_tightness_witness(p, lmin).min_eigenvalue) < 1e-12);
    CHECK(hermitian_tightness_witness(p, 1.01 * lmin).min_eigenvalue < 0.0);
  }
  CHECK(code_of([] { hermitian_tightness_witness(maximally_mixed(DimSignature({2, 2, 2})), 0.1); }) ==
        ErrorCode::NotBipartite);
  CHECK(code_of([] { hermitian_tightness_witness(rank_deficient_pair(), 0.1); }) == ErrorCode::RankDeficient);
}

TEST_CASE("names round-trip") {
  for (Criterion c : {Criterion::BallFrobenius, Criterion::BallSchatten, Criterion::Trace, Criterion::Pinsker,
                      Criterion::Decomposition, Criterion::GurvitsIdentity}) {
    CHECK(parse_criterion(criterion_name(c)) == c);
  }
  CHECK(parse_verdict("certified-separable") == Verdict::CertifiedSeparable);
  CHECK(parse_verdict("inconclusive") == Verdict::Inconclusive);
  CHECK_FALSE(parse_criterion("bogus").has_value());
}
