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

#include "sepball/sepball.h"

#include <exception>
#include <new>
#include <optional>
#include <string>

#include "sepball/commands.hpp"
#include "sepball/error.hpp"
#include "sepball/io.hpp"
#include "sepball/product_approx.hpp"

struct sb_state {
  sepball::DensityMatrix value;
};

struct sb_product {
  sepball::ProductState value;
};

struct sb_decomposition {
  sepball::SeparableDecomposition value;
};

struct sb_hamiltonian {
  sepball::HamiltonianSpec value;
};

struct sb_report {
  std::string json;
  std::string csv;
  int exit_code = 0;
};

namespace {

thread_local std::string last_error;

sb_status to_status(sepball::ErrorCode code) { return static_cast<sb_status>(static_cast<int>(code)); }

// Runs `body`, translating exceptions into status codes and recording the
// message for sb_last_error().
template <typename Body>
sb_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return SB_OK;
  } catch (const sepball::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SB_ERR_INTERNAL;
  }
}

void require(bool cond, const char* message) {
  if (!cond) sepball::fail(sepball::ErrorCode::InvalidArgument, message);
}

sepball::DimSignature make_sig(const size_t* dims, size_t parties) {
  require(dims != nullptr && parties > 0, "dims must be a nonempty array");
  return sepball::DimSignature(std::vector<std::size_t>(dims, dims + parties));
}

sepball::Subset make_subset(const size_t* subset, size_t len) {
  require(subset != nullptr || len == 0, "subset pointer is null");
  return sepball::Subset(subset, subset + len);
}

sb_report* make_report(sepball::CommandOutput out) {
  return new sb_report{sepball::io::dump_json(out.report), std::move(out.csv), out.exit_code};
}

}  // namespace

extern "C" {

const char* sb_version(void) { return sepball::io::kToolVersion; }

const char* sb_status_name(sb_status status) {
  if (status == SB_OK) return "OK";
  return sepball::error_code_name(static_cast<sepball::ErrorCode>(status));
}

const char* sb_last_error(void) { return last_error.c_str(); }

sb_status sb_state_create(const size_t* dims, size_t parties, const double* entries, sb_state** out) {
  return guarded([&] {
    require(out != nullptr && entries != nullptr, "null argument");
    sepball::DimSignature sig = make_sig(dims, parties);
    const std::size_t d = sig.total();
    sepball::ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t at = 2 * (i * d + j);
        m(i, j) = sepball::Complex(entries[at], entries[at + 1]);
      }
    }
    *out = new sb_state{sepball::DensityMatrix::from_matrix(std::move(m), std::move(sig))};
  });
}

sb_status sb_state_load(const char* path, sb_state** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new sb_state{sepball::io::state_from_json(sepball::io::read_json_file(path))};
  });
}

sb_status sb_state_from_json(const char* json, sb_state** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new sb_state{sepball::io::state_from_json(sepball::io::parse_json(json))};
  });
}

sb_status sb_state_werner(double p, sb_state** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new sb_state{sepball::werner_state(p)};
  });
}

void sb_state_free(sb_state* state) { delete state; }

size_t sb_state_dim(const sb_state* state) { return state ? state->value.dim() : 0; }

sb_status sb_state_negativity(const sb_state* state, const size_t* subset, size_t subset_len,
                              double* negativity, double* min_pt_eigenvalue) {
  return guarded([&] {
    require(state != nullptr, "null state");
    const sepball::NegativityReport rep =
        sepball::negativity(state->value, make_subset(subset, subset_len));
    if (negativity) *negativity = rep.negativity;
    if (min_pt_eigenvalue) *min_pt_eigenvalue = rep.min_pt_eigenvalue;
  });
}

sb_status sb_product_load(const char* path, sb_product** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new sb_product{sepball::io::product_from_json(sepball::io::read_json_file(path))};
  });
}

sb_status sb_product_maximally_mixed(const size_t* dims, size_t parties, sb_product** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new sb_product{sepball::maximally_mixed(make_sig(dims, parties))};
  });
}

sb_status sb_product_reduced(const sb_state* state, sb_product** out) {
  return guarded([&] {
    require(state != nullptr && out != nullptr, "null argument");
    *out = new sb_product{sepball::reduced_product(state->value)};
  });
}

sb_status sb_product_closest(const sb_state* state, size_t max_iter, double tol, sb_product** out,
                             double* distance) {
  return guarded([&] {
    require(state != nullptr && out != nullptr, "null argument");
    sepball::ApproximationResult res = sepball::closest_product(
        state->value, sepball::reduced_product(state->value), max_iter, tol);
    if (distance) *distance = res.distance;
    *out = new sb_product{std::move(res.product)};
  });
}

void sb_product_free(sb_product* product) { delete product; }

double sb_product_min_eigenvalue(const sb_product* product) {
  return product ? product->value.min_eigenvalue() : 0.0;
}

sb_status sb_product_ball_radius(const sb_product* product, double p, double* radius) {
  return guarded([&] {
    require(product != nullptr && radius != nullptr, "null argument");
    *radius = sepball::schatten_ball_radius(product->value, p);
  });
}

sb_status sb_decomposition_load(const char* path, sb_decomposition** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new sb_decomposition{
        sepball::io::decomposition_from_json(sepball::io::read_json_file(path))};
  });
}

void sb_decomposition_free(sb_decomposition* decomposition) { delete decomposition; }

sb_status sb_hamiltonian_load(const char* path, sb_hamiltonian** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new sb_hamiltonian{sepball::io::hamiltonian_from_json(sepball::io::read_json_file(path))};
  });
}

sb_status sb_hamiltonian_random(const size_t* dims, size_t parties, size_t terms, uint64_t seed,
                                int traceless, sb_hamiltonian** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const sepball::io::Json doc =
        sepball::hamiltonian_gen(make_sig(dims, parties), terms, sepball::RngSeed{seed}, traceless != 0);
    *out = new sb_hamiltonian{sepball::io::hamiltonian_from_json(doc)};
  });
}

sb_status sb_hamiltonian_save(const sb_hamiltonian* hamiltonian, const char* path) {
  return guarded([&] {
    require(hamiltonian != nullptr && path != nullptr, "null argument");
    sepball::io::write_text_file(
        path, sepball::io::dump_json(sepball::io::hamiltonian_to_json(hamiltonian->value)));
  });
}

void sb_hamiltonian_free(sb_hamiltonian* hamiltonian) { delete hamiltonian; }

void sb_certify_options_init(sb_certify_options* options) {
  if (!options) return;
  options->criteria = SB_CRITERIA_DEFAULT;
  options->p = 2.0;
  options->auto_product = SB_AUTO_NONE;
  options->max_iter = sepball::kDefaultMaxIter;
  options->tol = sepball::kDefaultApproxTol;
}

sb_status sb_certify(const sb_state* state, const sb_product* product,
                     const sb_decomposition* decomposition, const sb_certify_options* options,
                     sb_report** out) {
  return guarded([&] {
    require(state != nullptr && out != nullptr, "null argument");
    sb_certify_options defaults;
    sb_certify_options_init(&defaults);
    const sb_certify_options& o = options ? *options : defaults;

    sepball::CertifyOptions opts;
    opts.ball = (o.criteria & SB_CRITERION_BALL) != 0;
    opts.trace = (o.criteria & SB_CRITERION_TRACE) != 0;
    opts.pinsker = (o.criteria & SB_CRITERION_PINSKER) != 0;
    opts.decomposition = (o.criteria & SB_CRITERION_DECOMPOSITION) != 0;
    opts.identity = (o.criteria & SB_CRITERION_IDENTITY) != 0;
    opts.p = o.p;
    opts.max_iter = o.max_iter;
    opts.tol = o.tol;
    switch (o.auto_product) {
      case SB_AUTO_NONE: break;
      case SB_AUTO_REDUCED: opts.auto_product = sepball::CandidateStrategy::Reduced; break;
      case SB_AUTO_CLOSEST: opts.auto_product = sepball::CandidateStrategy::Closest; break;
      case SB_AUTO_BOTH: opts.auto_product = sepball::CandidateStrategy::Both; break;
      default: require(false, "unknown auto_product value");
    }
    std::optional<sepball::ProductState> prod;
    if (product) prod = product->value;
    std::optional<sepball::SeparableDecomposition> decomp;
    if (decomposition) decomp = decomposition->value;
    *out = make_report(sepball::run_certify(state->value, prod, decomp, opts));
  });
}

sb_status sb_radius(const sb_product* product, double p, sb_report** out) {
  return guarded([&] {
    require(product != nullptr && out != nullptr, "null argument");
    *out = make_report(sepball::run_radius(product->value, p));
  });
}

sb_status sb_dynamics(const sb_product* initial, const sb_hamiltonian* hamiltonian, double t_max,
                      size_t steps, const size_t* bipartition, size_t bipartition_len,
                      sb_report** out) {
  return guarded([&] {
    require(initial != nullptr && hamiltonian != nullptr && out != nullptr, "null argument");
    *out = make_report(sepball::run_dynamics(initial->value, hamiltonian->value, t_max, steps,
                                             make_subset(bipartition, bipartition_len)));
  });
}

void sb_sweep_options_init(sb_sweep_options* options) {
  if (!options) return;
  options->mode = SB_SWEEP_CRITERIA;
  options->trials = 1000;
  options->seed = 0;
  options->threads = 1;
  options->t_max = 10.0;
  options->steps = 200;
}

sb_status sb_sweep(const size_t* dims, size_t parties, const sb_sweep_options* options,
                   sb_report** out) {
  return guarded([&] {
    require(options != nullptr && out != nullptr, "null argument");
    sepball::SweepOptions opts;
    opts.mode = options->mode == SB_SWEEP_DYNAMICS ? sepball::SweepMode::Dynamics
                                                   : sepball::SweepMode::Criteria;
    opts.trials = options->trials;
    opts.seed = sepball::RngSeed{options->seed};
    opts.threads = options->threads;
    opts.t_max = options->t_max;
    opts.steps = options->steps;
    *out = make_report(sepball::run_sweep(make_sig(dims, parties), opts));
  });
}

const char* sb_report_json(const sb_report* report) { return report ? report->json.c_str() : ""; }

const char* sb_report_csv(const sb_report* report) { return report ? report->csv.c_str() : ""; }

int sb_report_exit_code(const sb_report* report) { return report ? report->exit_code : 2; }

void sb_report_free(sb_report* report) { delete report; }

sb_status sb_report_validate(const char* json) {
  return guarded([&] {
    require(json != nullptr, "null argument");
    sepball::io::validate_report(sepball::io::parse_json(json));
  });
}

}  // extern "C"
