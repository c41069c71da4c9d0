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

// Command-line front end. Talks to the library only through the C API.
//
// Exit status: 0 certified / success, 1 inconclusive (or sweep violations),
// 2 invalid input.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sepball/sepball.h"

namespace {

constexpr int kExitInputError = 2;

struct InputError {
  std::string message;
};

void check(sb_status status) {
  if (status != SB_OK) {
    throw InputError{std::string(sb_status_name(status)) + ": " + sb_last_error()};
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using StatePtr = std::unique_ptr<sb_state, Deleter<sb_state, sb_state_free>>;
using ProductPtr = std::unique_ptr<sb_product, Deleter<sb_product, sb_product_free>>;
using DecompPtr = std::unique_ptr<sb_decomposition, Deleter<sb_decomposition, sb_decomposition_free>>;
using HamPtr = std::unique_ptr<sb_hamiltonian, Deleter<sb_hamiltonian, sb_hamiltonian_free>>;
using ReportPtr = std::unique_ptr<sb_report, Deleter<sb_report, sb_report_free>>;

std::vector<size_t> parse_dims(const std::string& text) {
  std::vector<size_t> dims;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, text.find('x') != std::string::npos ? 'x' : ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(token, &used);
      if (used != token.size() || v < 2) throw std::invalid_argument(token);
      dims.push_back(static_cast<size_t>(v));
    } catch (const std::exception&) {
      throw InputError{"invalid dims '" + text + "' (expected e.g. 2x2 or 2,3)"};
    }
  }
  if (dims.empty()) throw InputError{"dims must not be empty"};
  return dims;
}

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity") return INFINITY;
  try {
    std::size_t used = 0;
    const double p = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return p;
  } catch (const std::exception&) {
    throw InputError{"invalid --p '" + text + "' (expected a number >= 1 or inf)"};
  }
}

unsigned parse_criteria(const std::vector<std::string>& names) {
  unsigned mask = 0;
  for (const std::string& n : names) {
    if (n == "all") mask |= SB_CRITERIA_DEFAULT;
    else if (n == "ball") mask |= SB_CRITERION_BALL;
    else if (n == "trace") mask |= SB_CRITERION_TRACE;
    else if (n == "pinsker") mask |= SB_CRITERION_PINSKER;
    else if (n == "decomposition") mask |= SB_CRITERION_DECOMPOSITION;
    else if (n == "identity") mask |= SB_CRITERION_IDENTITY;
    else throw InputError{"unknown criterion '" + n + "'"};
  }
  return mask;
}

void emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError{"cannot write " + path};
  out << text;
}

void emit_report(const sb_report* report, const std::string& out_path, const std::string& csv_path) {
  emit(out_path, sb_report_json(report));
  if (!csv_path.empty()) emit(csv_path, sb_report_csv(report));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability certificates for multipartite density matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sb_version()));

  std::string state_path, product_path, decomposition_path, auto_product, p_text = "2";
  std::vector<std::string> criteria{"all"};
  std::string out_path, csv_path;
  double tol = 1e-9;
  size_t max_iter = 500;

  auto* certify = app.add_subcommand("certify", "Run sufficient separability criteria on a state");
  certify->add_option("--state", state_path, "Matrix file of the state")->required();
  auto* prod_opt = certify->add_option("--product", product_path, "Product-state file");
  certify->add_option("--auto-product", auto_product, "Build candidate products: reduced, closest or both")
      ->check(CLI::IsMember({"reduced", "closest", "both"}))
      ->excludes(prod_opt);
  certify->add_option("--decomposition", decomposition_path, "Separable decomposition file");
  certify->add_option("--criterion", criteria,
                      "ball, trace, pinsker, decomposition, identity or all (repeatable)")
      ->delimiter(',');
  certify->add_option("--p", p_text, "Schatten index for the ball criterion (1..inf)");
  certify->add_option("--tol", tol, "Closest-product improvement tolerance");
  certify->add_option("--max-iter", max_iter, "Closest-product sweep limit");
  certify->add_option("--out", out_path, "Report path (default stdout)");

  auto* radius = app.add_subcommand("radius", "Separable-ball radius around a product state");
  radius->add_option("--product", product_path, "Product-state file")->required();
  radius->add_option("--p", p_text, "Schatten index (1..inf)");
  radius->add_option("--out", out_path, "Report path (default stdout)");

  std::string hamiltonian_path;
  double t_max = 10.0;
  size_t steps = 200;
  std::vector<size_t> bipartition{0};
  auto* dynamics = app.add_subcommand("dynamics", "Negativity timeline and ball-exit window");
  dynamics->add_option("--initial", product_path, "Initial product-state file")->required();
  dynamics->add_option("--hamiltonian", hamiltonian_path, "Hamiltonian file")->required();
  dynamics->add_option("--t-max", t_max, "End of the time grid")->required();
  dynamics->add_option("--steps", steps, "Number of grid points (>= 2)");
  dynamics->add_option("--bipartition", bipartition, "Subsystems on one side of the cut (0-based)")
      ->delimiter(',');
  dynamics->add_option("--csv", csv_path, "Timeline CSV path");
  dynamics->add_option("--out", out_path, "Summary report path (default stdout)");

  std::string dims_text, mode = "criteria";
  size_t trials = 1000, threads = 1, terms = 1;
  uint64_t seed = 0;
  auto* sweep = app.add_subcommand("sweep", "Seeded Monte-Carlo validation sweep");
  sweep->add_option("--dims", dims_text, "Subsystem dimensions, e.g. 2x2")->required();
  sweep->add_option("--trials", trials, "Number of trials");
  sweep->add_option("--seed", seed, "RNG seed (u64)")->required();
  sweep->add_option("--mode", mode, "criteria or dynamics")->check(CLI::IsMember({"criteria", "dynamics"}));
  sweep->add_option("--threads", threads, "Worker threads (output does not depend on it)");
  sweep->add_option("--t-max", t_max, "Dynamics mode: end of the time grid");
  sweep->add_option("--steps", steps, "Dynamics mode: grid points");
  sweep->add_option("--csv", csv_path, "Per-trial CSV path");
  sweep->add_option("--out", out_path, "Aggregate report path (default stdout)");

  bool traceless = false;
  auto* hgen = app.add_subcommand("hamiltonian-gen", "Write a random normalized Hamiltonian");
  hgen->add_option("--dims", dims_text, "Subsystem dimensions, e.g. 2x2")->required();
  hgen->add_option("--terms", terms, "Number of product terms");
  hgen->add_option("--seed", seed, "RNG seed (u64)")->required();
  hgen->add_option("--out", out_path, "Output file")->required();
  hgen->add_flag("--traceless", traceless, "Remove the trace of every factor (pure interaction)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    ReportPtr report;
    sb_report* raw = nullptr;
    if (*certify) {
      sb_certify_options opts;
      sb_certify_options_init(&opts);
      opts.criteria = parse_criteria(criteria);
      opts.p = parse_p(p_text);
      opts.tol = tol;
      opts.max_iter = max_iter;
      if (auto_product == "reduced") opts.auto_product = SB_AUTO_REDUCED;
      if (auto_product == "closest") opts.auto_product = SB_AUTO_CLOSEST;
      if (auto_product == "both") opts.auto_product = SB_AUTO_BOTH;

      sb_state* s = nullptr;
      check(sb_state_load(state_path.c_str(), &s));
      StatePtr state(s);
      ProductPtr product;
      if (!product_path.empty()) {
        sb_product* p = nullptr;
        check(sb_product_load(product_path.c_str(), &p));
        product.reset(p);
      }
      DecompPtr decomposition;
      if (!decomposition_path.empty()) {
        sb_decomposition* d = nullptr;
        check(sb_decomposition_load(decomposition_path.c_str(), &d));
        decomposition.reset(d);
      }
      check(sb_certify(state.get(), product.get(), decomposition.get(), &opts, &raw));
      report.reset(raw);
      emit_report(report.get(), out_path, "");
      return sb_report_exit_code(report.get());
    }
    if (*radius) {
      sb_product* p = nullptr;
      check(sb_product_load(product_path.c_str(), &p));
      ProductPtr product(p);
      check(sb_radius(product.get(), parse_p(p_text), &raw));
      report.reset(raw);
      emit_report(report.get(), out_path, "");
      return 0;
    }
    if (*dynamics) {
      sb_product* p = nullptr;
      check(sb_product_load(product_path.c_str(), &p));
      ProductPtr initial(p);
      sb_hamiltonian* h = nullptr;
      check(sb_hamiltonian_load(hamiltonian_path.c_str(), &h));
      HamPtr ham(h);
      check(sb_dynamics(initial.get(), ham.get(), t_max, steps, bipartition.data(), bipartition.size(), &raw));
      report.reset(raw);
      emit_report(report.get(), out_path, csv_path);
      return 0;
    }
    if (*sweep) {
      const std::vector<size_t> dims = parse_dims(dims_text);
      sb_sweep_options opts;
      sb_sweep_options_init(&opts);
      opts.mode = mode == "dynamics" ? SB_SWEEP_DYNAMICS : SB_SWEEP_CRITERIA;
      opts.trials = trials;
      opts.seed = seed;
      opts.threads = threads;
      opts.t_max = t_max;
      opts.steps = steps;
      check(sb_sweep(dims.data(), dims.size(), &opts, &raw));
      report.reset(raw);
      emit_report(report.get(), out_path, csv_path);
      return sb_report_exit_code(report.get());
    }
    if (*hgen) {
      const std::vector<size_t> dims = parse_dims(dims_text);
      sb_hamiltonian* h = nullptr;
      check(sb_hamiltonian_random(dims.data(), dims.size(), terms, seed, traceless ? 1 : 0, &h));
      HamPtr ham(h);
      check(sb_hamiltonian_save(ham.get(), out_path.c_str()));
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
