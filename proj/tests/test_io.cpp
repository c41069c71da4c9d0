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
#include <cstring>
#include <sstream>

#include "doctest.h"
#include "sepball/commands.hpp"
#include "sepball/error.hpp"
#include "sepball/io.hpp"
#include "test_util.hpp"

using namespace sepball;
using io::Json;

namespace {

const DimSignature kQubits({2, 2});

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void check_certificates_equal(const Certificate& a, const Certificate& b) {
  CHECK(a.criterion == b.criterion);
  CHECK(a.verdict == b.verdict);
  CHECK(same_bits(a.threshold, b.threshold));
  CHECK(same_bits(a.achieved, b.achieved));
  CHECK(same_bits(a.margin, b.margin));
  REQUIRE(a.details.size() == b.details.size());
  for (std::size_t i = 0; i < a.details.size(); ++i) {
    CHECK(a.details[i].first == b.details[i].first);
    CHECK(same_bits(a.details[i].second, b.details[i].second));
  }
}

// A report of a randomly chosen command on random inputs.
Json random_report(Rng& rng, int index) {
  const DimSignature sig(index % 3 == 2 ? std::vector<std::size_t>{2, 3} : std::vector<std::size_t>{2, 2});
  const ProductState prod = random_product_state(sig, rng);
  switch (index % 4) {
    case 0: {
      ComplexMatrix psi = random_ginibre(sig.total(), 1, rng);
      psi /= psi.norm();
      const double s = rng.uniform();
      const DensityMatrix rho = density_from_matrix((1 - s) * prod.matrix() + s * psi * psi.adjoint(), sig);
      CertifyOptions opts;
      opts.identity = true;
      if (index % 8 == 0) opts.auto_product = CandidateStrategy::Both;
      const SeparableDecomposition dec{{1.0}, {prod}};
      return run_certify(rho, index % 8 == 0 ? std::nullopt : std::optional<ProductState>(prod), dec, opts)
          .report;
    }
    case 1: return run_radius(prod, index % 5 == 0 ? kInfinity : 1.0 + 3.0 * rng.uniform()).report;
    case 2: return run_dynamics(prod, random_hamiltonian(sig, 2, rng), 2.0, 20, {0}).report;
    default: {
      SweepOptions opts;
      opts.trials = 5;
      opts.seed = RngSeed{rng.next_u64()};
      opts.mode = index % 2 ? SweepMode::Dynamics : SweepMode::Criteria;
      opts.steps = 10;
      return run_sweep(sig, opts).report;
    }
  }
}

}  // namespace

TEST_CASE("format_double keeps 17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(kInfinity) == "inf");
  CHECK(io::format_double(-kInfinity) == "-inf");
  CHECK(io::format_double(std::nan("")) == "nan");
  Rng rng(RngSeed{1});
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(rng.normal(), static_cast<int>(rng.uniform() * 200) - 100);
    CHECK(same_bits(std::stod(io::format_double(v)), v));
  }
}

TEST_CASE("non-finite numbers use string tokens") {
  CHECK(io::number_to_json(kInfinity) == Json("inf"));
  CHECK(io::number_from_json(Json("inf")) == kInfinity);
  CHECK(std::isnan(io::number_from_json(Json("nan"))));
  CHECK(io::number_from_json(Json(2.5)) == 2.5);
  CHECK(code_of([] { io::number_from_json(Json("two")); }) == ErrorCode::Parse);
}

TEST_CASE("matrix files round-trip exactly") {
  Rng rng(RngSeed{2});
  for (int i = 0; i < 20; ++i) {
    const DimSignature sig(i % 2 ? std::vector<std::size_t>{2, 3} : std::vector<std::size_t>{2, 2});
    const DensityMatrix rho = density_from_matrix(random_density_ginibre(sig.total(), rng).matrix(), sig);
    const std::string text = io::dump_json(io::state_to_json(rho));
    const DensityMatrix back = io::state_from_json(io::parse_json(text));
    CHECK(back.matrix() == rho.matrix());
    CHECK(back.sig() == rho.sig());
    CHECK(io::dump_json(io::state_to_json(back)) == text);
  }
}

TEST_CASE("matrix file validation") {
  CHECK(code_of([] { io::state_from_json(io::parse_json(R"({"matrix": [[[1, 0]]]})")); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::state_from_json(io::parse_json(R"({"dims": [1], "matrix": [[[1, 0]]]})")); }) ==
        ErrorCode::Parse);
  CHECK(code_of([] {
          io::state_from_json(io::parse_json(R"({"dims": [2], "matrix": [[[1, 0], [0, 0]], [[0, 0]]]})"));
        }) == ErrorCode::Parse);
  CHECK(code_of([] {
          io::state_from_json(io::parse_json(R"({"dims": [2], "matrix": [[[1, 0], [0, 0]], [[0, 0], ["x", 0]]]})"));
        }) == ErrorCode::Parse);
  CHECK(code_of([] {
          io::state_from_json(io::parse_json(R"({"dims": [2, 2], "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]})"));
        }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] {
          io::state_from_json(io::parse_json(R"({"dims": [2], "matrix": [[[0.6, 0], [0, 0]], [[0, 0], [0.6, 0]]]})"));
        }) == ErrorCode::TraceNotOne);
  CHECK(code_of([] { io::parse_json("{not json"); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::read_json_file("/nonexistent/file.json"); }) == ErrorCode::Io);
}

TEST_CASE("product files: factor lists and exact product matrices") {
  const ProductState p = testutil::diag_product();
  const Json doc = io::product_to_json(p);
  CHECK(io::product_from_json(io::parse_json(io::dump_json(doc))).matrix() == p.matrix());

  const Json as_matrix = io::state_to_json(p.state());
  CHECK((io::product_from_json(as_matrix).matrix() - p.matrix()).cwiseAbs().maxCoeff() < 1e-15);
  const Json entangled = io::state_to_json(werner_state(0.5));
  CHECK(code_of([&] { io::product_from_json(entangled); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("decomposition and Hamiltonian files round-trip") {
  Rng rng(RngSeed{3});
  const SeparableDecomposition dec{{0.3, 0.7},
                                   {random_product_state(kQubits, rng), random_product_state(kQubits, rng)}};
  const SeparableDecomposition back = io::decomposition_from_json(io::parse_json(io::dump_json(io::decomposition_to_json(dec))));
  CHECK(back.weights == dec.weights);
  CHECK(back.reconstruction() == dec.reconstruction());

  const HamiltonianSpec h = random_hamiltonian(DimSignature({2, 3}), 3, rng);
  const std::string text = io::dump_json(io::hamiltonian_to_json(h));
  const HamiltonianSpec h2 = io::hamiltonian_from_json(io::parse_json(text));
  CHECK(h2.matrix() == h.matrix());
  CHECK(io::dump_json(io::hamiltonian_to_json(h2)) == text);
  CHECK(is_hermitian(h2.matrix()));
  CHECK(frobenius_norm(h2.matrix()) == doctest::Approx(1.0).epsilon(1e-10));

  // "coeff" is optional.
  const Json bare = io::parse_json(
      R"({"dims": [2, 2], "terms": [{"factors": [[[[0, 0], [1, 0]], [[1, 0], [0, 0]]], [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]]}]})");
  CHECK(io::hamiltonian_from_json(bare).terms()[0].coeff == 1.0);
}

TEST_CASE("hamiltonian_gen is byte-reproducible") {
  const std::string a = io::dump_json(hamiltonian_gen(kQubits, 1, RngSeed{9}));
  const std::string b = io::dump_json(hamiltonian_gen(kQubits, 1, RngSeed{9}));
  CHECK(a == b);
  CHECK(a != io::dump_json(hamiltonian_gen(kQubits, 1, RngSeed{10})));
  const HamiltonianSpec h = io::hamiltonian_from_json(io::parse_json(a));
  CHECK(h.terms().size() == 1);
  CHECK(frobenius_norm(h.matrix()) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("certificate JSON validation") {
  Json doc = io::certificate_to_json(make_certificate(Criterion::Trace, 0.2, 0.1, {{"gamma", 0.1}}));
  CHECK_NOTHROW(io::certificate_from_json(doc));
  doc["verdict"] = "inconclusive";
  CHECK(code_of([&] { io::certificate_from_json(doc); }) == ErrorCode::Parse);
  doc["verdict"] = 3;
  CHECK(code_of([&] { io::certificate_from_json(doc); }) == ErrorCode::Parse);
  doc["verdict"] = "certified-separable";
  doc["criterion"] = "magic";
  CHECK(code_of([&] { io::certificate_from_json(doc); }) == ErrorCode::Parse);
}

TEST_CASE("reports round-trip losslessly (fuzzed over 100 reports)") {
  Rng rng(RngSeed{2024});
  for (int i = 0; i < 100; ++i) {
    const Json report = random_report(rng, i);
    const std::string text = io::dump_json(report);
    const Json parsed = io::parse_json(text);
    CHECK_NOTHROW(io::validate_report(parsed));
    CHECK(io::dump_json(parsed) == text);
    if (report.contains("certificates")) {
      REQUIRE(parsed.at("certificates").size() == report.at("certificates").size());
      for (std::size_t k = 0; k < report.at("certificates").size(); ++k) {
        check_certificates_equal(io::certificate_from_json(report.at("certificates")[k]),
                                 io::certificate_from_json(parsed.at("certificates")[k]));
      }
    }
  }
}

TEST_CASE("timeline CSV round-trips") {
  Rng rng(RngSeed{4});
  const ProductState p = random_product_state(kQubits, rng);
  const Timeline tl = timeline(p, random_hamiltonian(kQubits, 2, rng), 3.0, 25, {0});
  const std::string csv = io::timeline_csv(tl);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "time,distance,negativity");
  std::size_t row = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string t, d, n;
    std::getline(fields, t, ',');
    std::getline(fields, d, ',');
    std::getline(fields, n, ',');
    CHECK(same_bits(std::stod(t), tl.times[row]));
    CHECK(same_bits(std::stod(d), tl.distances[row]));
    CHECK(same_bits(std::stod(n), tl.negativities[row]));
    ++row;
  }
  CHECK(row == tl.times.size());
}

TEST_CASE("report validation rejects foreign documents") {
  CHECK(code_of([] { io::validate_report(io::parse_json("[]")); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::validate_report(io::parse_json(R"({"tool": "other", "version": "1", "command": "x"})")); }) ==
        ErrorCode::Parse);
  Json ok = report_envelope("radius");
  CHECK_NOTHROW(io::validate_report(ok));
  ok["negativity"] = Json::array({Json::object({{"bipartition", "zero"}})});
  CHECK(code_of([&] { io::validate_report(ok); }) == ErrorCode::Parse);
}
