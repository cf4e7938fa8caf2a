#include "conerate/kraus.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "conerate/errors.hpp"
#include "conerate/rng.hpp"

namespace conerate {

namespace {

// Stream identifiers for the Birkhoff sampling, disjoint from restart indices.
constexpr std::uint64_t kInteriorStream = 0xB1F0000000000001ULL;
constexpr std::uint64_t kDiameterStream = 0xB1F0000000000002ULL;
constexpr double kInteriorEigenvalueFloor = 1e-8;

void require_admissible_pair(const CVector& u, const CVector& v, Index n) {
  if (u.size() != n || v.size() != n) throw ValidationError("pair: vector dimension does not match the map");
  if (std::abs(u.norm() - 1.0) > 1e-10 || std::abs(v.norm() - 1.0) > 1e-10)
    throw ValidationError("pair: u and v must be unit vectors");
  if (std::abs(u.dot(v)) > 1e-10) throw ValidationError("pair: u and v must be orthogonal");
}

CMatrix pair_difference(const CVector& u, const CVector& v) { return outer(u) - outer(v); }

double half_trace_norm(const CMatrix& h) { return 0.5 * jacobi_eigen(h).values.cwiseAbs().sum(); }

/// sign(H) with sign(0) = +1.
CMatrix spectral_sign(const CMatrix& h) {
  return spectral_function(jacobi_eigen(h), [](double l) { return l >= 0.0 ? 1.0 : -1.0; });
}

struct AscentResult {
  CVector u;
  CVector v;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

AscentResult ascend(const KrausMap& k, int power, CVector u, CVector v, const ContractionOptions& options) {
  auto objective = [&](const CVector& a, const CVector& b) {
    return half_trace_norm(k.psi_power(pair_difference(a, b), power));
  };
  auto gradient = [&](const CVector& a, const CVector& b) {
    return hermitian_part(k.phi_power(spectral_sign(k.psi_power(pair_difference(a, b), power)), power));
  };

  AscentResult r{std::move(u), std::move(v), 0.0, 0, false};
  r.value = objective(r.u, r.v);
  if (k.dim() < 2) return r;

  std::array<double, 3> recent{1.0, 1.0, 1.0};
  for (int it = 0; it < options.max_iterations; ++it) {
    ++r.iterations;

    // For fixed S = sign(Ψ(uu* − vv*)) the pair maximizing u*Gu − v*Gv with
    // G = Φ(S) is the top and bottom eigenvector of G, which are orthogonal.
    const HermitianEigen eig = jacobi_eigen(gradient(r.u, r.v));
    CVector u_next = eig.max_vector().normalized();
    CVector v_next = orthonormalize_against(eig.min_vector(), u_next);

    const double value = objective(u_next, v_next);
    double gain = 0.0;
    if (value >= r.value) {
      gain = value - r.value;
      r.u = std::move(u_next);
      r.v = std::move(v_next);
      r.value = value;
    }
    recent[std::size_t(it % 3)] = gain;
    if (it >= 2 && recent[0] < options.tol && recent[1] < options.tol && recent[2] < options.tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

void attach_birkhoff_estimate(const KrausMap& k, int power, const ContractionOptions& options,
                              ContractionEstimate& est) {
  const Index n = k.dim();
  const Rng root(options.seed);

  Rng interior = root.split(kInteriorStream);
  for (int s = 0; s < options.interior_samples; ++s) {
    const CVector x = interior.unit_vector(n);
    if (jacobi_eigen(k.phi_power(outer(x), power)).min() <= kInteriorEigenvalueFloor) return;
  }
  for (Index i = 0; i < n; ++i) {
    CMatrix e = CMatrix::Zero(n, n);
    e(i, i) = 1.0;
    if (jacobi_eigen(k.phi_power(e, power)).min() <= kInteriorEigenvalueFloor) return;
  }

  Rng sampler = root.split(kDiameterStream);
  double diameter = 0.0;
  // The ascent witness pair first, then random pure pairs.
  for (int s = -1; s < options.diameter_samples; ++s) {
    const CVector x = s < 0 ? est.witness_u : sampler.unit_vector(n);
    const CVector y = s < 0 ? est.witness_v : sampler.unit_vector(n);
    const auto a = HermitianMatrix::from_hermitian_part(k.psi_power(outer(x), power));
    const auto b = HermitianMatrix::from_hermitian_part(k.psi_power(outer(y), power));
    try {
      diameter = std::max(diameter, hilbert_projective_metric(a, b));
    } catch (const NotInterior&) {
      return;
    }
  }
  est.diameter_estimate = diameter;
  est.upper_bound = std::tanh(diameter / 4.0);
  est.upper_bound_certified = false;
}

}  // namespace

KrausMap::KrausMap(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw ValidationError("KrausMap: at least one Kraus operator is required");
  n_ = ops_.front().rows();
  if (n_ == 0) throw ValidationError("KrausMap: operators must be non-empty");
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].rows() != n_ || ops_[i].cols() != n_) {
      std::ostringstream os;
      os << "KrausMap: operator " << i << " has shape " << ops_[i].rows() << "x" << ops_[i].cols() << ", expected "
         << n_ << "x" << n_;
      throw ValidationError(os.str());
    }
  const double residual = completeness_residual();
  if (!(residual <= kKrausCompletenessTolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << "KrausMap: sum of V_i^* V_i differs from the identity, Frobenius residual " << residual;
    throw ValidationError(os.str());
  }
}

double KrausMap::completeness_residual() const {
  CMatrix s = -CMatrix::Identity(n_, n_);
  for (const CMatrix& v : ops_) s.noalias() += v.adjoint() * v;
  return s.norm();
}

CMatrix KrausMap::phi(const CMatrix& x) const {
  CMatrix out = CMatrix::Zero(n_, n_);
  for (const CMatrix& v : ops_) out.noalias() += v.adjoint() * x * v;
  return out;
}

CMatrix KrausMap::psi(const CMatrix& x) const {
  CMatrix out = CMatrix::Zero(n_, n_);
  for (const CMatrix& v : ops_) out.noalias() += v * x * v.adjoint();
  return out;
}

CMatrix KrausMap::phi_power(const CMatrix& x, int k) const {
  CMatrix y = x;
  for (int i = 0; i < k; ++i) y = phi(y);
  return y;
}

CMatrix KrausMap::psi_power(const CMatrix& x, int k) const {
  CMatrix y = x;
  for (int i = 0; i < k; ++i) y = psi(y);
  return y;
}

std::vector<CMatrix> KrausMap::overlap_family() const {
  std::vector<CMatrix> family;
  family.reserve(ops_.size() * ops_.size());
  for (const CMatrix& vi : ops_)
    for (const CMatrix& vj : ops_) family.push_back(vj.adjoint() * vi);
  return family;
}

HermitianMatrix apply_phi(const KrausMap& k, const HermitianMatrix& x) {
  if (x.dim() != k.dim()) throw ValidationError("apply_phi: dimension mismatch");
  return HermitianMatrix::from_hermitian_part(k.phi(x.matrix()));
}

HermitianMatrix apply_psi(const KrausMap& k, const HermitianMatrix& x) {
  if (x.dim() != k.dim()) throw ValidationError("apply_psi: dimension mismatch");
  return HermitianMatrix::from_hermitian_part(k.psi(x.matrix()));
}

double pair_objective(const KrausMap& k, const CVector& u, const CVector& v) { return pair_objective(k, u, v, 1); }

double pair_objective(const KrausMap& k, const CVector& u, const CVector& v, int power) {
  require_admissible_pair(u, v, k.dim());
  if (power < 1) throw ValidationError("pair_objective: power must be >= 1");
  return half_trace_norm(k.psi_power(pair_difference(u, v), power));
}

ContractionEstimate contraction_norm(const KrausMap& k, const ContractionOptions& options) {
  return contraction_norm_power(k, 1, options);
}

ContractionEstimate contraction_norm_power(const KrausMap& k, int power, const ContractionOptions& options) {
  if (options.restarts < 1) throw ValidationError("contraction_norm: restarts must be >= 1");
  if (!(options.tol > 0.0)) throw ValidationError("contraction_norm: tol must be positive");
  if (power < 1) throw ValidationError("contraction_norm: power must be >= 1");

  const Index n = k.dim();
  ContractionEstimate est;
  if (n < 2) {
    // No orthonormal pair exists; the quotient space is trivial.
    est.converged = true;
    est.witness_u = CVector::Ones(n);
    est.witness_v = CVector::Zero(n);
    return est;
  }

  const Rng root(options.seed);
  bool have_best = false;
  AscentResult best;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng = root.split(std::uint64_t(r));
    CVector u = rng.unit_vector(n);
    CVector v = orthonormalize_against(rng.complex_gaussian(n), u);
    AscentResult res = ascend(k, power, std::move(u), std::move(v), options);
    if (!have_best || res.value > best.value) {
      best = std::move(res);
      est.best_restart = r;
      have_best = true;
    }
  }

  est.witness_u = best.u;
  est.witness_v = best.v;
  est.lower_bound = best.value;
  est.iterations = best.iterations;
  est.converged = best.converged;
  est.restarts_used = options.restarts;
  if (options.birkhoff) attach_birkhoff_estimate(k, power, options, est);
  return est;
}

double dobrushin_form_value(const KrausMap& k, const CVector& u, const CVector& v, const CMatrix& basis) {
  require_admissible_pair(u, v, k.dim());
  const Index n = k.dim();
  if (basis.rows() != n || basis.cols() != n) throw ValidationError("dobrushin_form_value: basis has wrong shape");
  if ((basis.adjoint() * basis - CMatrix::Identity(n, n)).norm() > 1e-10)
    throw ValidationError("dobrushin_form_value: basis is not unitary");
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    const CMatrix image = k.phi(outer(basis.col(i)));
    const double a = u.dot(image * u).real();
    const double b = v.dot(image * v).real();
    total += std::min(a, b);
  }
  return 1.0 - total;
}

CMatrix optimal_dobrushin_basis(const KrausMap& k, const CVector& u, const CVector& v) {
  require_admissible_pair(u, v, k.dim());
  return jacobi_eigen(k.psi(pair_difference(u, v))).vectors;
}

ZeroErrorVerdict zero_error_check(const KrausMap& k, const RankOneSearchOptions& options) {
  const std::vector<CMatrix> family = k.overlap_family();
  RankOneSearchResult search = search_rank_one_annihilator(family, k.dim(), options);
  ZeroErrorVerdict verdict;
  verdict.min_value = search.min_objective;
  if (search.found()) {
    verdict.status = ZeroErrorVerdict::Status::Positive;
    verdict.witness = std::move(search.witness);
  }
  return verdict;
}

}  // namespace conerate
