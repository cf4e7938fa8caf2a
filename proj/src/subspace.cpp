#include "conerate/subspace.hpp"

#include <cmath>
#include <sstream>

#include "conerate/errors.hpp"

namespace conerate {

namespace {

constexpr double kSpanRelativeTolerance = 1e-9;

}  // namespace

MatrixSubspace::MatrixSubspace(Index n) : n_(n) {
  if (n < 1) throw ValidationError("MatrixSubspace: n must be positive");
}

MatrixSubspace MatrixSubspace::span(Index n, const std::vector<CMatrix>& generators) {
  SubspaceBuilder b(n);
  for (const CMatrix& g : generators) b.add(g);
  return std::move(b).build();
}

MatrixSubspace MatrixSubspace::from_orthonormal(Index n, std::vector<CMatrix> basis) {
  MatrixSubspace s(n);
  for (const CMatrix& b : basis)
    if (b.rows() != n || b.cols() != n) throw ValidationError("MatrixSubspace: basis element has wrong shape");
  if (Index(basis.size()) > n * n) throw ValidationError("MatrixSubspace: more than n^2 basis elements");
  s.basis_ = std::move(basis);
  if (s.gram_deviation() > 1e-10) throw ValidationError("MatrixSubspace: basis is not orthonormal");
  return s;
}

MatrixSubspace MatrixSubspace::full(Index n) {
  MatrixSubspace s(n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = 1.0;
      s.basis_.push_back(std::move(e));
    }
  return s;
}

CMatrix MatrixSubspace::project(const CMatrix& x) const {
  CMatrix p = CMatrix::Zero(n_, n_);
  for (const CMatrix& b : basis_) p += inner(b, x) * b;
  return p;
}

double MatrixSubspace::distance(const CMatrix& x) const { return (x - project(x)).norm(); }

double MatrixSubspace::gram_deviation() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const cplx g = inner(basis_[i], basis_[j]);
      worst = std::max(worst, std::abs(g - (i == j ? cplx(1.0) : cplx(0.0))));
    }
  return worst;
}

bool SubspaceBuilder::add(const CMatrix& candidate) {
  const Index n = space_.n_;
  if (candidate.rows() != n || candidate.cols() != n) throw ValidationError("SubspaceBuilder: wrong shape");
  if (space_.dim() == n * n) return false;
  const double norm0 = candidate.norm();
  if (!(norm0 > 0.0)) return false;
  CMatrix r = candidate;
  // Two passes of modified Gram–Schmidt.
  for (int pass = 0; pass < 2; ++pass)
    for (const CMatrix& b : space_.basis_) r -= inner(b, r) * b;
  const double rn = r.norm();
  if (rn <= kSpanRelativeTolerance * norm0) return false;
  space_.basis_.push_back(r / rn);
  return true;
}

MatrixSubspace orthogonal_complement(const MatrixSubspace& s) {
  const Index n = s.n();
  SubspaceBuilder joint(s);
  SubspaceBuilder comp(n);
  for (Index j = 0; j < n && joint.dim() < n * n; ++j)
    for (Index i = 0; i < n && joint.dim() < n * n; ++i) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = 1.0;
      if (joint.add(e)) comp.add(joint.current().basis().back());
    }
  return std::move(comp).build();
}

HkChain hk_iterate(const KrausMap& k) {
  const Index n = k.dim();
  HkChain chain;
  SubspaceBuilder builder(n);
  builder.add(CMatrix::Identity(n, n));
  chain.subspaces.push_back(builder.current());
  chain.dims.push_back(builder.dim());

  // H_{k+1} = H_k + span of images of the basis elements added at step k.
  std::size_t fresh_begin = 0;
  for (int step = 0;; ++step) {
    const std::vector<CMatrix> basis = builder.current().basis();
    for (std::size_t b = fresh_begin; b < basis.size(); ++b)
      for (const CMatrix& vi : k.ops())
        for (const CMatrix& vj : k.ops()) builder.add(vi.adjoint() * basis[b] * vj);
    fresh_begin = basis.size();
    if (builder.dim() == Index(basis.size())) {
      chain.k0 = step;
      break;
    }
    chain.subspaces.push_back(builder.current());
    chain.dims.push_back(builder.dim());
  }
  return chain;
}

std::vector<Index> hk_dimensions(const KrausMap& k, int steps) {
  const Index n = k.dim();
  std::vector<Index> dims;
  MatrixSubspace current = MatrixSubspace::span(n, {CMatrix::Identity(n, n)});
  dims.push_back(current.dim());
  for (int s = 0; s < steps; ++s) {
    // Full regeneration from every basis element, independent of hk_iterate.
    std::vector<CMatrix> images;
    for (const CMatrix& x : current.basis())
      for (const CMatrix& vi : k.ops())
        for (const CMatrix& vj : k.ops()) images.push_back(vi.adjoint() * x * vj);
    current = MatrixSubspace::span(n, images);
    dims.push_back(current.dim());
  }
  return dims;
}

RankOneSearchResult rank_one_search(const MatrixSubspace& s, const RankOneSearchOptions& options) {
  // ⟨B, v u*⟩ = u* B* v = conj(v* B u), so the annihilating family is S⊥ itself.
  const MatrixSubspace perp = orthogonal_complement(s);
  return search_rank_one_annihilator(perp.basis(), s.n(), options);
}

const char* to_string(CertificationStatus s) {
  switch (s) {
    case CertificationStatus::Convergent:
      return "CONVERGENT";
    case CertificationStatus::NotConvergent:
      return "NOT_CONVERGENT";
    case CertificationStatus::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

CertificationVerdict certify_convergence(const KrausMap& k, const CertifyOptions& options) {
  const Index n = k.dim();
  HkChain chain = hk_iterate(k);
  CertificationVerdict verdict;
  verdict.k0 = chain.k0;
  verdict.dims = chain.dims;

  if (chain.stable().dim() == n * n) {
    verdict.status = CertificationStatus::Convergent;
    return verdict;
  }

  // Rank-one v u* in G = H⊥ ⇔ v* B u = 0 for every B in an orthonormal basis of H.
  const std::vector<CMatrix>& h_basis = chain.stable().basis();
  RankOneSearchOptions search = options.search;
  search.exhaustive = options.exhaustive && n <= 3;
  verdict.exhaustive = search.exhaustive;
  RankOneSearchResult found = search_rank_one_annihilator(h_basis, n, search);
  if (found.found()) {
    verdict.status = CertificationStatus::NotConvergent;
    verdict.witness = std::move(found.witness);
  } else {
    verdict.status = CertificationStatus::Inconclusive;
    verdict.min_objective = found.min_objective;
  }
  return verdict;
}

ContractionEstimate k_step_norm(const KrausMap& k, int steps, const ContractionOptions& options) {
  if (steps < 1) throw ValidationError("k_step_norm: k must be >= 1");
  return contraction_norm_power(k, steps, options);
}

}  // namespace conerate
