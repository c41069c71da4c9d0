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

#include "sepball/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "sepball/error.hpp"

namespace sepball {

namespace {

using io::Json;
using io::number_to_json;

Json optional_number(const std::optional<double>& v) {
  return v ? number_to_json(*v) : Json(nullptr);
}

Json subset_json(const Subset& s) {
  Json arr = Json::array();
  for (std::size_t k : s) arr.push_back(k);
  return arr;
}

Json input_digest(const DensityMatrix& rho) {
  Json doc = Json::object();
  doc["dims"] = io::dims_to_json(rho.sig());
  doc["trace"] = rho.matrix().trace().real();
  doc["lambda_min"] = hermitian_eigenvalues(rho.matrix())(0);
  doc["purity"] = rho.purity();
  return doc;
}

Json tagged_certificate(const std::string& candidate, const Certificate& cert) {
  Json doc = Json::object();
  doc["candidate"] = candidate;
  const Json body = io::certificate_to_json(cert);
  for (const auto& [k, v] : body.items()) doc[k] = v;
  return doc;
}

Json p_json(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

bool ppt_exact(const DimSignature& sig) {
  if (sig.parties() != 2) return false;
  const std::size_t a = std::min(sig[0], sig[1]);
  const std::size_t b = std::max(sig[0], sig[1]);
  return a == 2 && (b == 2 || b == 3);
}

// Runs `body(i)` for i in [0, n) on `threads` workers. Each index is written
// to its own slot, so the caller sees results in trial order.
template <typename Body>
void parallel_for(std::size_t n, std::size_t threads, Body body) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct CriteriaTrial {
  double distance = 0.0;
  double beta = 0.0;
  double phi = 0.0;
  bool ball = false;
  bool trace = false;
  bool pinsker = false;
  bool decomposition = false;
  double min_pt_eigenvalue = 0.0;
  bool is_ppt = true;

  bool any() const { return ball || trace || pinsker || decomposition; }
};

CriteriaTrial criteria_trial(const DimSignature& sig, RngSeed seed) {
  Rng rng(seed);
  const ProductState prod = random_product_state(sig, rng);
  const ProductState other = random_product_state(sig, rng);
  const double q = 0.8 + 0.2 * rng.uniform();
  const SeparableDecomposition decomp{{q, 1.0 - q}, {prod, other}};
  const ComplexMatrix center = decomp.reconstruction();
  const ComplexMatrix dir = random_traceless_direction(sig.total(), rng);

  CriteriaTrial out;
  const bool full_rank = prod.min_eigenvalue() > kRankTol;
  out.beta = full_rank ? ball_radius(prod) : 0.0;

  // Half the trials probe the ball boundary, the other half mix in a random
  // pure state so that entangled samples occur.
  std::optional<DensityMatrix> rho;
  if (rng.uniform() < 0.5) {
    double r = 2.0 * std::max(out.beta, 1e-3) * rng.uniform();
    // Shrink until the draw is a state; r -> 0 always succeeds for full-rank centers.
    for (int attempt = 0; attempt < 80 && !rho; ++attempt) {
      try {
        rho = DensityMatrix::from_matrix(center + r * dir, sig);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotPsd) throw;
        r *= 0.5;
      }
    }
    if (!rho) rho = DensityMatrix::from_matrix(center, sig);
  } else {
    ComplexMatrix psi = random_ginibre(sig.total(), 1, rng);
    psi /= psi.norm();
    const double s = rng.uniform();
    rho = DensityMatrix::from_matrix((1.0 - s) * center + s * (psi * psi.adjoint()), sig);
  }

  out.distance = frobenius_norm(rho->matrix() - prod.matrix());
  if (full_rank) {
    out.ball = certify_ball(*rho, prod).certified();
    out.trace = certify_trace(*rho, prod).certified();
    out.pinsker = certify_pinsker(*rho, prod).certified();
  }
  try {
    out.phi = decomposition_radius(decomp);
    out.decomposition = certify_decomposition(*rho, decomp).certified();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoFullRankComponent) throw;
  }
  out.min_pt_eigenvalue = kInfinity;
  for (const Subset& cut : default_cuts(sig)) {
    const NegativityReport rep = negativity(*rho, cut);
    out.min_pt_eigenvalue = std::min(out.min_pt_eigenvalue, rep.min_pt_eigenvalue);
    out.is_ppt = out.is_ppt && rep.is_ppt;
  }
  return out;
}

struct DynamicsTrial {
  double beta = 0.0;
  std::optional<double> exit;
  std::optional<double> onset;
  EntanglingTimeBound bound;
  bool window_violation = false;

  bool order_violation() const { return onset && exit && *onset < *exit; }
};

DynamicsTrial dynamics_trial(const DimSignature& sig, RngSeed seed, double t_max, std::size_t steps) {
  Rng rng(seed);
  std::size_t largest = 0;
  for (std::size_t d : sig.dims()) largest = std::max(largest, d);
  const ProductState rho0 = random_product_state(sig, rng, 0.1 / static_cast<double>(largest));
  const HamiltonianSpec h = random_hamiltonian(sig, 2, rng, true);
  const Timeline tl = timeline(rho0, h, t_max, steps, {0});

  DynamicsTrial out;
  out.beta = tl.ball_radius;
  out.exit = tl.ball_exit_time;
  out.onset = tl.onset_time;
  out.bound = entangling_time_bound(rho0, h);
  for (std::size_t i = 0; i < tl.times.size(); ++i) {
    if (tl.distances[i] <= tl.ball_radius && tl.negativities[i] > kOnsetTol) out.window_violation = true;
  }
  return out;
}

std::string csv_optional(const std::optional<double>& v) {
  return v ? io::format_double(*v) : std::string("none");
}

CommandOutput sweep_criteria(const DimSignature& sig, const SweepOptions& opt) {
  std::vector<CriteriaTrial> trials(opt.trials);
  parallel_for(opt.trials, opt.threads,
               [&](std::size_t i) { trials[i] = criteria_trial(sig, derive_seed(opt.seed, i)); });

  std::string csv = "trial,distance,beta,phi,ball,trace,pinsker,decomposition,min_pt_eigenvalue,is_ppt\n";
  std::size_t ball = 0, trace = 0, pinsker = 0, decomp = 0, ppt = 0, any = 0, violations = 0;
  std::size_t ball_not_trace = 0, certified_ppt = 0;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const CriteriaTrial& t = trials[i];
    csv += std::to_string(i) + ',' + io::format_double(t.distance) + ',' + io::format_double(t.beta) +
           ',' + io::format_double(t.phi) + ',' + (t.ball ? "1" : "0") + ',' + (t.trace ? "1" : "0") +
           ',' + (t.pinsker ? "1" : "0") + ',' + (t.decomposition ? "1" : "0") + ',' +
           io::format_double(t.min_pt_eigenvalue) + ',' + (t.is_ppt ? "1" : "0") + '\n';
    ball += t.ball;
    trace += t.trace;
    pinsker += t.pinsker;
    decomp += t.decomposition;
    ppt += t.is_ppt;
    any += t.any();
    if (t.any() && !t.is_ppt) ++violations;
    if (t.any() && t.is_ppt) ++certified_ppt;
    if (t.ball && !t.trace) ++ball_not_trace;
  }
  const double n = static_cast<double>(opt.trials);
  Json report = report_envelope("sweep");
  report["mode"] = "criteria";
  report["dims"] = io::dims_to_json(sig);
  report["trials"] = opt.trials;
  report["seed"] = opt.seed.value;
  report["ppt_exact"] = ppt_exact(sig);
  Json rates = Json::object();
  rates["ball-frobenius"] = static_cast<double>(ball) / n;
  rates["trace"] = static_cast<double>(trace) / n;
  rates["pinsker"] = static_cast<double>(pinsker) / n;
  rates["decomposition"] = static_cast<double>(decomp) / n;
  rates["any"] = static_cast<double>(any) / n;
  rates["ppt"] = static_cast<double>(ppt) / n;
  report["certification_rates"] = std::move(rates);
  // Share of PPT samples that some criterion certifies (all of them are
  // separable when ppt_exact holds).
  report["certified_among_ppt"] = ppt == 0 ? 0.0 : static_cast<double>(certified_ppt) / static_cast<double>(ppt);
  report["soundness_violations"] = violations;
  report["nesting_violations"] = ball_not_trace;
  return CommandOutput{std::move(report), std::move(csv), violations + ball_not_trace == 0 ? 0 : 1};
}

CommandOutput sweep_dynamics(const DimSignature& sig, const SweepOptions& opt) {
  std::vector<DynamicsTrial> trials(opt.trials);
  parallel_for(opt.trials, opt.threads, [&](std::size_t i) {
    trials[i] = dynamics_trial(sig, derive_seed(opt.seed, i), opt.t_max, opt.steps);
  });

  std::string csv = "trial,beta,ball_exit_time,onset_time,t_commutator,t_spectral,window_violation\n";
  std::size_t with_onset = 0, order_violations = 0, window_violations = 0, above_spectral = 0;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const DynamicsTrial& t = trials[i];
    csv += std::to_string(i) + ',' + io::format_double(t.beta) + ',' + csv_optional(t.exit) + ',' +
           csv_optional(t.onset) + ',' + io::format_double(t.bound.t_commutator) + ',' +
           io::format_double(t.bound.t_spectral) + ',' + (t.window_violation ? "1" : "0") + '\n';
    if (t.onset) {
      ++with_onset;
      if (*t.onset >= t.bound.t_spectral) ++above_spectral;
    }
    order_violations += t.order_violation();
    window_violations += t.window_violation;
  }
  Json report = report_envelope("sweep");
  report["mode"] = "dynamics";
  report["dims"] = io::dims_to_json(sig);
  report["trials"] = opt.trials;
  report["seed"] = opt.seed.value;
  report["t_max"] = opt.t_max;
  report["steps"] = opt.steps;
  report["trials_with_onset"] = with_onset;
  report["onset_before_exit_violations"] = order_violations;
  report["window_violations"] = window_violations;
  report["onset_at_least_t_spectral_fraction"] =
      with_onset == 0 ? Json(nullptr) : Json(static_cast<double>(above_spectral) / static_cast<double>(with_onset));
  return CommandOutput{std::move(report), std::move(csv),
                       order_violations + window_violations == 0 ? 0 : 1};
}

}  // namespace

io::Json report_envelope(const std::string& command) {
  Json doc = Json::object();
  doc["tool"] = io::kToolName;
  doc["version"] = io::kToolVersion;
  doc["command"] = command;
  return doc;
}

CommandOutput run_certify(const DensityMatrix& rho, const std::optional<ProductState>& product,
                          const std::optional<SeparableDecomposition>& decomposition,
                          const CertifyOptions& options) {
  if (!product && !options.auto_product && !decomposition && !options.identity) {
    fail(ErrorCode::InvalidArgument, "certify needs a product state, --auto-product, a decomposition or the identity criterion");
  }
  std::vector<std::pair<std::string, ProductState>> candidates;
  if (product) {
    if (!(product->sig() == rho.sig())) fail(ErrorCode::DimensionMismatch, "state and product dims differ");
    candidates.emplace_back("supplied", *product);
  }
  if (options.auto_product) {
    const ProductState reduced = reduced_product(rho);
    const CandidateStrategy s = *options.auto_product;
    if (s == CandidateStrategy::Reduced || s == CandidateStrategy::Both) {
      candidates.emplace_back("reduced", reduced);
    }
    if (s == CandidateStrategy::Closest || s == CandidateStrategy::Both) {
      candidates.emplace_back("closest", closest_product(rho, reduced, options.max_iter, options.tol).product);
    }
  }

  Json certs = Json::array();
  Json cands = Json::array();
  bool certified = false;
  auto record = [&](const std::string& name, const Certificate& cert) {
    certified = certified || cert.certified();
    certs.push_back(tagged_certificate(name, cert));
  };

  for (const auto& [name, prod] : candidates) {
    Json c = Json::object();
    c["name"] = name;
    c["distance"] = frobenius_norm(rho.matrix() - prod.matrix());
    c["lambda_min"] = prod.min_eigenvalue();
    Json mins = Json::array();
    for (double v : prod.factor_min_eigenvalues()) mins.push_back(v);
    c["factor_lambda_min"] = std::move(mins);
    if (prod.min_eigenvalue() <= kRankTol) {
      c["note"] = "rank-deficient candidate lies on the boundary of the separable set; skipped";
      cands.push_back(std::move(c));
      continue;
    }
    cands.push_back(std::move(c));
    if (options.ball) record(name, certify_ball(rho, prod, options.p));
    if (options.trace) record(name, certify_trace(rho, prod));
    if (options.pinsker) record(name, certify_pinsker(rho, prod));
  }
  if (decomposition && options.decomposition) {
    if (!(decomposition->sig() == rho.sig())) {
      fail(ErrorCode::DimensionMismatch, "state and decomposition dims differ");
    }
    Json c = Json::object();
    c["name"] = "decomposition";
    c["distance"] = frobenius_norm(rho.matrix() - decomposition->reconstruction());
    try {
      const Certificate cert = certify_decomposition(rho, *decomposition);
      cands.push_back(std::move(c));
      record("decomposition", cert);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoFullRankComponent) throw;
      c["note"] = "no full-rank component; decomposition radius unavailable";
      cands.push_back(std::move(c));
    }
  }
  if (options.identity) record("identity", certify_identity_ball(rho));

  Json neg = Json::array();
  for (const Subset& cut : default_cuts(rho.sig())) neg.push_back(io::negativity_to_json(negativity(rho, cut)));

  Json report = report_envelope("certify");
  report["input"] = input_digest(rho);
  report["p"] = p_json(options.p);
  report["candidates"] = std::move(cands);
  report["certificates"] = std::move(certs);
  report["negativity"] = std::move(neg);
  report["certified"] = certified;
  return CommandOutput{std::move(report), {}, certified ? 0 : 1};
}

CommandOutput run_radius(const ProductState& prod, double p) {
  const double beta = ball_radius(prod);
  const double radius = schatten_ball_radius(prod, p);
  Json report = report_envelope("radius");
  report["dims"] = io::dims_to_json(prod.sig());
  report["parties"] = prod.parties();
  report["dimension"] = prod.sig().total();
  report["p"] = p_json(p);
  report["lambda_min"] = prod.min_eigenvalue();
  Json mins = Json::array();
  for (double v : prod.factor_min_eigenvalues()) mins.push_back(v);
  report["factor_lambda_min"] = std::move(mins);
  report["party_factor"] = party_factor(prod.parties());
  report["beta"] = beta;
  report["radius"] = radius;
  return CommandOutput{std::move(report), {}, 0};
}

CommandOutput run_dynamics(const ProductState& rho0, const HamiltonianSpec& h, double t_max,
                           std::size_t steps, const Subset& bipartition) {
  const Timeline tl = timeline(rho0, h, t_max, steps, bipartition);
  const EntanglingTimeBound bound = entangling_time_bound(rho0, h);
  const UncertaintyProduct up = uncertainty_product(rho0, h, tl.onset_time);

  Json report = report_envelope("dynamics");
  report["dims"] = io::dims_to_json(rho0.sig());
  report["bipartition"] = subset_json(normalize_proper_subset(bipartition, rho0.sig().parties()));
  report["t_max"] = t_max;
  report["steps"] = steps;
  report["hamiltonian_norm"] = frobenius_norm(h.matrix());
  report["local_terms"] = tl.local_terms;
  report["lambda_min"] = rho0.min_eigenvalue();
  report["lambda_max"] = rho0.max_eigenvalue();
  report["beta"] = tl.ball_radius;
  report["ball_exit_time"] = optional_number(tl.ball_exit_time);
  report["onset_time"] = optional_number(tl.onset_time);
  report["no_onset"] = !tl.onset_time.has_value();
  report["t_commutator"] = number_to_json(bound.t_commutator);
  report["t_spectral"] = number_to_json(bound.t_spectral);
  report["uncertainty_product"] = optional_number(up.product);
  report["uncertainty_bound"] = number_to_json(up.bound);
  return CommandOutput{std::move(report), io::timeline_csv(tl), 0};
}

CommandOutput run_sweep(const DimSignature& sig, const SweepOptions& options) {
  if (options.trials == 0) fail(ErrorCode::InvalidArgument, "sweep needs at least one trial");
  for (std::size_t d : sig.dims()) {
    if (d < 2) fail(ErrorCode::InvalidArgument, "sweep dims must be >= 2");
  }
  if (sig.parties() < 2) fail(ErrorCode::InvalidArgument, "sweep needs at least two subsystems");
  return options.mode == SweepMode::Criteria ? sweep_criteria(sig, options) : sweep_dynamics(sig, options);
}

io::Json hamiltonian_gen(const DimSignature& sig, std::size_t terms, RngSeed seed, bool traceless) {
  for (std::size_t d : sig.dims()) {
    if (d < 2) fail(ErrorCode::InvalidArgument, "dims must be >= 2");
  }
  Rng rng(seed);
  return io::hamiltonian_to_json(random_hamiltonian(sig, terms, rng, traceless));
}

}  // namespace sepball
