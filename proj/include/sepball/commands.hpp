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
#include <optional>
#include <string>
#include <vector>

#include "sepball/io.hpp"
#include "sepball/product_approx.hpp"

namespace sepball {

/// A finished command: JSON report, optional CSV body and the process exit
/// status the CLI should use (0 certified / ok, 1 inconclusive or violations).
struct CommandOutput {
  io::Json report;
  std::string csv;
  int exit_code = 0;
};

struct CertifyOptions {
  bool ball = true;
  bool trace = true;
  bool pinsker = true;
  bool decomposition = true;  // only used when a decomposition is supplied
  bool identity = false;
  double p = 2.0;
  std::optional<CandidateStrategy> auto_product;
  std::size_t max_iter = kDefaultMaxIter;
  double tol = kDefaultApproxTol;
};

CommandOutput run_certify(const DensityMatrix& rho, const std::optional<ProductState>& product,
                          const std::optional<SeparableDecomposition>& decomposition,
                          const CertifyOptions& options);

CommandOutput run_radius(const ProductState& prod, double p);

CommandOutput run_dynamics(const ProductState& rho0, const HamiltonianSpec& h, double t_max,
                           std::size_t steps, const Subset& bipartition);

enum class SweepMode { Criteria, Dynamics };

struct SweepOptions {
  SweepMode mode = SweepMode::Criteria;
  std::size_t trials = 1000;
  RngSeed seed;
  std::size_t threads = 1;
  double t_max = 10.0;
  std::size_t steps = 200;
};

/// Seeded Monte-Carlo validation. Trial i draws from derive_seed(seed, i), so
/// output bytes do not depend on the thread count.
CommandOutput run_sweep(const DimSignature& sig, const SweepOptions& options);

io::Json hamiltonian_gen(const DimSignature& sig, std::size_t terms, RngSeed seed,
                         bool traceless = false);

/// Common report envelope: tool, version, command.
io::Json report_envelope(const std::string& command);

}  // namespace sepball
