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

#include "sepball/product_approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "sepball/error.hpp"

namespace sepball {

namespace {

// Composite index of all digits except factor k, plus the digit at k.
struct SplitIndex {
  std::size_t own = 0;
  std::size_t rest = 0;
};

std::vector<SplitIndex> split_indices(const DimSignature& sig, std::size_t k) {
  const std::size_t d = sig.total();
  std::vector<SplitIndex> out(d);
  for (std::size_t idx = 0; idx < d; ++idx) {
    std::size_t remaining = idx;
    std::size_t stride = 1;
    SplitIndex s;
    for (std::size_t j = sig.parties(); j-- > 0;) {
      const std::size_t digit = remaining % sig[j];
      remaining /= sig[j];
      if (j == k) {
        s.own = digit;
      } else {
        s.rest += digit * stride;
        stride *= sig[j];
      }
    }
    out[idx] = s;
  }
  return out;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) shift = candidate;
  }
  for (double& x : v) x = std::max(0.0, x - shift);
  return v;
}

ComplexMatrix kron_except(const std::vector<ComplexMatrix>& factors, std::size_t k) {
  std::vector<ComplexMatrix> others;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (j != k) others.push_back(factors[j]);
  }
  return kron_all(others);
}

ComplexMatrix best_factor(const ComplexMatrix& rho, const DimSignature& sig,
                          const std::vector<ComplexMatrix>& factors, std::size_t k) {
  const ComplexMatrix others = kron_except(factors, k);
  const double scale = others.squaredNorm();
  const std::size_t dk = sig[k];
  if (scale < 1e-300) return ComplexMatrix::Identity(dk, dk) / static_cast<double>(dk);

  const auto split = split_indices(sig, k);
  ComplexMatrix x = ComplexMatrix::Zero(dk, dk);
  const std::size_t d = sig.total();
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      x(split[r].own, split[c].own) += rho(r, c) * std::conj(others(split[r].rest, split[c].rest));
    }
  }
  x /= scale;
  if (frobenius_norm(x) < 1e-14) return ComplexMatrix::Identity(dk, dk) / static_cast<double>(dk);
  return project_to_density(x);
}

std::vector<DensityMatrix> to_factors(const std::vector<ComplexMatrix>& mats) {
  std::vector<DensityMatrix> out;
  for (const ComplexMatrix& m : mats) {
    out.push_back(DensityMatrix::from_matrix(m, DimSignature({static_cast<std::size_t>(m.rows())})));
  }
  return out;
}

}  // namespace

ComplexMatrix project_to_density(const ComplexMatrix& h) {
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  ev = project_to_simplex(std::move(ev));
  const RealVector lambda = Eigen::Map<const RealVector>(ev.data(), static_cast<Eigen::Index>(ev.size()));
  ComplexMatrix out =
      solver.eigenvectors() * lambda.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
  return 0.5 * (out + out.adjoint());
}

ProductState reduced_product(const DensityMatrix& rho) {
  const DimSignature& sig = rho.sig();
  if (sig.parties() == 1) return ProductState({rho});
  std::vector<DensityMatrix> factors;
  for (std::size_t k = 0; k < sig.parties(); ++k) {
    ComplexMatrix reduced = partial_trace(rho.matrix(), sig, {k});
    reduced = 0.5 * (reduced + reduced.adjoint());
    factors.push_back(DensityMatrix::from_matrix(std::move(reduced), DimSignature({sig[k]})));
  }
  return ProductState(std::move(factors));
}

ApproximationResult closest_product(const DensityMatrix& rho, const ProductState& init,
                                    std::size_t max_iter, double tol) {
  if (!(init.sig() == rho.sig())) {
    fail(ErrorCode::DimensionMismatch, "initial product does not match the state's dims");
  }
  const DimSignature& sig = rho.sig();
  std::vector<ComplexMatrix> current;
  for (const DensityMatrix& f : init.factors()) current.push_back(f.matrix());

  const double initial = frobenius_norm(rho.matrix() - init.matrix());
  std::vector<ComplexMatrix> best = current;
  double best_dist = initial;
  double previous = initial;
  std::vector<double> trace{initial};
  std::size_t iterations = 0;
  bool converged = false;

  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (std::size_t k = 0; k < sig.parties(); ++k) {
      current[k] = best_factor(rho.matrix(), sig, current, k);
    }
    const double dist = frobenius_norm(rho.matrix() - kron_all(current));
    iterations = it;
    if (dist < best_dist) {
      best = current;
      best_dist = dist;
    }
    trace.push_back(best_dist);
    if (previous - dist < tol) {
      converged = true;
      break;
    }
    previous = dist;
  }

  ProductState product(to_factors(best));
  const double distance = frobenius_norm(rho.matrix() - product.matrix());
  trace.back() = distance;
  return ApproximationResult{std::move(product), distance, iterations, converged, std::move(trace)};
}

double optimal_scaling_alpha(const DensityMatrix& rho, const ProductState& prod) {
  if (!(rho.sig() == prod.sig())) fail(ErrorCode::DimensionMismatch, "state and product dims differ");
  return trace_product(rho.matrix(), prod.matrix()) / rho.purity();
}

bool AutoCertifyResult::certified() const {
  for (const CandidateResult& c : candidates) {
    for (const Certificate& cert : c.certificates) {
      if (cert.certified()) return true;
    }
  }
  return false;
}

AutoCertifyResult auto_certify(const DensityMatrix& rho, CandidateStrategy strategy,
                               std::size_t max_iter, double tol) {
  AutoCertifyResult result;
  const ProductState reduced = reduced_product(rho);

  auto evaluate = [&](std::string name, ProductState candidate) {
    CandidateResult c;
    c.name = std::move(name);
    c.distance = frobenius_norm(rho.matrix() - candidate.matrix());
    if (candidate.min_eigenvalue() > kRankTol) {
      c.certificates = certify_all(rho, candidate);
    } else {
      c.note = "candidate is rank deficient; no separable ball around it";
    }
    c.product = std::move(candidate);
    result.candidates.push_back(std::move(c));
  };

  if (strategy == CandidateStrategy::Reduced || strategy == CandidateStrategy::Both) {
    evaluate("reduced", reduced);
  }
  if (strategy == CandidateStrategy::Closest || strategy == CandidateStrategy::Both) {
    evaluate("closest", closest_product(rho, reduced, max_iter, tol).product);
  }
  for (const Subset& cut : default_cuts(rho.sig())) result.negativity.push_back(negativity(rho, cut));
  return result;
}

}  // namespace sepball
