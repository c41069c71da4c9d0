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

#include "sepball/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sepball/error.hpp"

namespace sepball {

namespace {

void require_full_rank(const ProductState& prod) {
  const double lmin = prod.min_eigenvalue();
  if (!(lmin > kRankTol)) {
    std::ostringstream msg;
    msg << "product state is rank deficient (lambda_min = " << lmin
        << "); it lies on the boundary of the separable set and has no separable ball";
    fail(ErrorCode::RankDeficient, msg.str());
  }
}

void require_same_sig(const DensityMatrix& rho, const DimSignature& sig) {
  if (!(rho.sig() == sig)) fail(ErrorCode::DimensionMismatch, "state and reference have different dims");
}

void require_valid_p(double p) {
  if (std::isnan(p) || p < 1.0) fail(ErrorCode::InvalidP, "norm index p must lie in [1, inf]");
}

}  // namespace

const char* criterion_name(Criterion c) noexcept {
  switch (c) {
    case Criterion::BallFrobenius: return "ball-frobenius";
    case Criterion::BallSchatten: return "ball-schatten-p";
    case Criterion::Trace: return "trace";
    case Criterion::Pinsker: return "pinsker";
    case Criterion::Decomposition: return "decomposition";
    case Criterion::GurvitsIdentity: return "gurvits-identity";
  }
  return "unknown";
}

const char* verdict_name(Verdict v) noexcept {
  return v == Verdict::CertifiedSeparable ? "certified-separable" : "inconclusive";
}

std::optional<Criterion> parse_criterion(const std::string& name) {
  for (Criterion c : {Criterion::BallFrobenius, Criterion::BallSchatten, Criterion::Trace,
                      Criterion::Pinsker, Criterion::Decomposition, Criterion::GurvitsIdentity}) {
    if (name == criterion_name(c)) return c;
  }
  return std::nullopt;
}

std::optional<Verdict> parse_verdict(const std::string& name) {
  if (name == verdict_name(Verdict::CertifiedSeparable)) return Verdict::CertifiedSeparable;
  if (name == verdict_name(Verdict::Inconclusive)) return Verdict::Inconclusive;
  return std::nullopt;
}

std::optional<double> Certificate::detail(const std::string& key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  return std::nullopt;
}

Certificate make_certificate(Criterion c, double threshold, double achieved,
                             std::vector<std::pair<std::string, double>> details) {
  Certificate cert;
  cert.criterion = c;
  cert.threshold = threshold;
  cert.achieved = achieved;
  cert.margin = threshold - achieved;
  cert.verdict = cert.margin >= 0.0 ? Verdict::CertifiedSeparable : Verdict::Inconclusive;
  cert.details = std::move(details);
  return cert;
}

double party_factor(std::size_t parties) {
  return std::pow(2.0, 1.0 - 0.5 * static_cast<double>(parties));
}

double ball_radius(const ProductState& prod) {
  require_full_rank(prod);
  return party_factor(prod.parties()) * prod.min_eigenvalue();
}

double schatten_ball_radius(const ProductState& prod, double p) {
  require_valid_p(p);
  const double beta = ball_radius(prod);
  if (p <= 2.0) return beta;
  const double d = static_cast<double>(prod.sig().total());
  const double exponent = std::isinf(p) ? -0.5 : 1.0 / p - 0.5;
  return std::pow(d, exponent) * beta;
}

Certificate certify_ball(const DensityMatrix& rho, const ProductState& prod, double p) {
  require_valid_p(p);
  require_same_sig(rho, prod.sig());
  const double radius = schatten_ball_radius(prod, p);
  const ComplexMatrix diff = rho.matrix() - prod.matrix();
  if (p == 2.0) {
    return make_certificate(Criterion::BallFrobenius, radius, frobenius_norm(diff),
                            {{"beta", radius}, {"p", 2.0}});
  }
  return make_certificate(Criterion::BallSchatten, radius, schatten_norm(diff, p),
                          {{"beta", ball_radius(prod)}, {"p", p}, {"radius", radius}});
}

Certificate certify_trace(const DensityMatrix& rho, const ProductState& prod) {
  require_same_sig(rho, prod.sig());
  const double beta = ball_radius(prod);
  const double overlap = trace_product(rho.matrix(), prod.matrix());
  const double purity = rho.purity();
  const double prod_purity = trace_product(prod.matrix(), prod.matrix());
  const double gamma = prod_purity - beta * beta;
  // overlap^2 / purity - gamma, rearranged so no large terms cancel: with
  // X = rho - prod, t = Tr[prod X], q = ||X||_F^2 the excess is
  // ((t + beta^2)^2 + (beta^2 - q) gamma) / purity. Balls of radius ~1e-4
  // otherwise lose the decision to rounding.
  const ComplexMatrix x = rho.matrix() - prod.matrix();
  const double t = trace_product(prod.matrix(), x);
  const double q = trace_product(x, x);
  const double b2 = beta * beta;
  const double lhs = gamma + ((t + b2) * (t + b2) + (b2 - q) * gamma) / purity;
  return make_certificate(Criterion::Trace, lhs, gamma,
                          {{"beta", beta},
                           {"gamma", gamma},
                           {"alpha", overlap / purity},
                           {"overlap", overlap},
                           {"purity", purity},
                           {"product_purity", prod_purity}});
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const RealVector rho_ev = hermitian_eigenvalues(rho);
  double entropy_term = 0.0;
  for (double v : rho_ev) {
    if (v > 0.0) entropy_term += v * std::log(v);
  }
  const Spectrum sig_spec = hermitian_eig(sigma);
  double cross = 0.0;
  for (Eigen::Index i = 0; i < sig_spec.values.size(); ++i) {
    const auto vec = sig_spec.vectors.col(i);
    const double weight = (vec.adjoint() * rho * vec)(0, 0).real();
    const double s = sig_spec.values(i);
    if (s <= kPsdTol) {
      if (weight > kPsdTol) return kInfinity;
      continue;
    }
    cross += weight * std::log(s);
  }
  return std::max(0.0, entropy_term - cross);
}

Certificate certify_pinsker(const DensityMatrix& rho, const ProductState& prod) {
  require_same_sig(rho, prod.sig());
  require_full_rank(prod);
  const double lmin = prod.min_eigenvalue();
  const double threshold = std::pow(2.0, 1.0 - static_cast<double>(prod.parties())) * lmin * lmin;
  const double d = relative_entropy(rho.matrix(), prod.matrix());
  return make_certificate(Criterion::Pinsker, threshold, d,
                          {{"beta", ball_radius(prod)}, {"relative_entropy", d}});
}

double decomposition_radius(const SeparableDecomposition& decomp) {
  decomp.validate();
  double best = -1.0;
  for (std::size_t i = 0; i < decomp.components.size(); ++i) {
    const double lmin = decomp.components[i].min_eigenvalue();
    if (lmin > kRankTol) best = std::max(best, decomp.weights[i] * lmin);
  }
  if (best < 0.0) {
    fail(ErrorCode::NoFullRankComponent, "decomposition has no full-rank product component");
  }
  return party_factor(decomp.sig().parties()) * best;
}

Certificate certify_decomposition(const DensityMatrix& rho, const SeparableDecomposition& decomp) {
  const double phi = decomposition_radius(decomp);
  require_same_sig(rho, decomp.sig());
  const double dist = frobenius_norm(rho.matrix() - decomp.reconstruction());
  return make_certificate(Criterion::Decomposition, phi, dist,
                          {{"radius", phi}, {"components", static_cast<double>(decomp.components.size())}});
}

Certificate certify_identity_ball(const DensityMatrix& rho) {
  const double d = static_cast<double>(rho.dim());
  const ComplexMatrix scaled = d * rho.matrix() - ComplexMatrix::Identity(rho.dim(), rho.dim());
  const double radius = party_factor(rho.sig().parties());
  return make_certificate(Criterion::GurvitsIdentity, radius, frobenius_norm(scaled),
                          {{"radius", radius}, {"scale", d}});
}

NegativityReport negativity(const DensityMatrix& rho, const Subset& bipartition) {
  NegativityReport rep;
  rep.bipartition = normalize_proper_subset(bipartition, rho.sig().parties());
  const RealVector ev =
      hermitian_eigenvalues(partial_transpose(rho.matrix(), rho.sig(), rep.bipartition));
  rep.min_pt_eigenvalue = ev(0);
  double neg = 0.0;
  for (double v : ev) neg += std::max(0.0, -v);
  rep.negativity = neg;
  rep.is_ppt = rep.min_pt_eigenvalue >= -kPptTol;
  return rep;
}

std::vector<Subset> default_cuts(const DimSignature& sig) {
  std::vector<Subset> cuts;
  if (sig.parties() == 2) {
    cuts.push_back({0});
  } else if (sig.parties() > 2) {
    for (std::size_t k = 0; k < sig.parties(); ++k) cuts.push_back({k});
  }
  return cuts;
}

std::vector<Certificate> certify_all(const DensityMatrix& rho, const ProductState& prod) {
  return {certify_ball(rho, prod, 2.0), certify_trace(rho, prod), certify_pinsker(rho, prod)};
}

TightnessWitness hermitian_tightness_witness(const ProductState& prod, double a) {
  if (prod.parties() != 2) fail(ErrorCode::NotBipartite, "tightness witness needs a bipartite product");
  require_full_rank(prod);
  const Spectrum spec = hermitian_eig(prod.matrix());
  const Eigen::VectorXcd x = spec.vectors.col(0);
  TightnessWitness w;
  w.matrix = prod.matrix() - a * (x * x.adjoint());
  w.min_eigenvalue = hermitian_eigenvalues(w.matrix)(0);
  return w;
}

}  // namespace sepball
