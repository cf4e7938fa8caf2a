#pragma once

// Matrix-subspace iteration for the convergence of X ↦ Φ(X):
//
//   H₀ = span{Iₙ},   H_{k+1} = span{ Vᵢ* X Vⱼ : X ∈ H_k, all i, j }.
//
// The chain is nested and stabilizes at some k₀ ≤ n² − 1. With G = H_{k₀}⊥,
// every orbit converges to a multiple of Iₙ iff G contains no rank-one
// matrix; a rank-one v u* in G certifies ‖Φᵏ‖_H = 1 for every k.

#include <optional>
#include <vector>

#include "conerate/kraus.hpp"
#include "conerate/rank_one.hpp"

namespace conerate {

/// A complex subspace of ℂⁿˣⁿ with a basis orthonormal for ⟨A, B⟩ = tr(A*B).
class MatrixSubspace {
 public:
  /// The zero subspace of ℂⁿˣⁿ.
  explicit MatrixSubspace(Index n);

  /// Orthonormalizes `generators` by modified Gram–Schmidt; a candidate is
  /// kept iff its residual exceeds 1e-9 times its original norm.
  static MatrixSubspace span(Index n, const std::vector<CMatrix>& generators);

  /// Adopts an already orthonormal basis (ValidationError if the Gram matrix
  /// is off the identity by more than 1e-10 in any entry).
  static MatrixSubspace from_orthonormal(Index n, std::vector<CMatrix> basis);

  static MatrixSubspace full(Index n);

  Index n() const noexcept { return n_; }
  Index dim() const noexcept { return Index(basis_.size()); }
  const std::vector<CMatrix>& basis() const noexcept { return basis_; }

  CMatrix project(const CMatrix& x) const;
  /// ‖x − proj(x)‖_F
  double distance(const CMatrix& x) const;
  /// max |Gram − I| entry.
  double gram_deviation() const;

 private:
  friend class SubspaceBuilder;
  Index n_;
  std::vector<CMatrix> basis_;
};

/// Grows an orthonormal basis one candidate at a time.
class SubspaceBuilder {
 public:
  explicit SubspaceBuilder(Index n) : space_(n) {}
  explicit SubspaceBuilder(MatrixSubspace start) : space_(std::move(start)) {}

  /// Returns true iff the candidate enlarged the span.
  bool add(const CMatrix& candidate);

  Index dim() const noexcept { return space_.dim(); }
  const MatrixSubspace& current() const noexcept { return space_; }
  MatrixSubspace build() && { return std::move(space_); }

 private:
  MatrixSubspace space_;
};

/// Basis of S⊥ with dim S + dim S⊥ = n².
MatrixSubspace orthogonal_complement(const MatrixSubspace& s);

struct HkChain {
  /// H₀ … H_{k₀}
  std::vector<MatrixSubspace> subspaces;
  int k0 = 0;
  /// dims[k] = dim H_k for k = 0 … k₀
  std::vector<Index> dims;

  const MatrixSubspace& stable() const { return subspaces.back(); }
};

/// Iterates until dim H_{k+1} = dim H_k and returns that k as k₀.
HkChain hk_iterate(const KrausMap& k);

/// dim H_k for k = 0 … steps, without stopping at stabilization.
std::vector<Index> hk_dimensions(const KrausMap& k, int steps);

/// Searches S for a rank-one matrix v u*: minimizes ‖proj_{S⊥}(v u*)‖_F² over
/// unit u, v and certifies the witness when every |⟨B, v u*⟩| ≤ tol for an
/// orthonormal basis B of S⊥.
RankOneSearchResult rank_one_search(const MatrixSubspace& s, const RankOneSearchOptions& options = {});

enum class CertificationStatus { Convergent, NotConvergent, Inconclusive };

const char* to_string(CertificationStatus s);

struct CertificationVerdict {
  CertificationStatus status = CertificationStatus::Inconclusive;
  int k0 = 0;
  std::vector<Index> dims;
  /// NotConvergent: u, v with v u* ∈ G, certified to `residual`.
  std::optional<RankOneWitness> witness;
  /// Inconclusive: the smallest search objective.
  std::optional<double> min_objective;
  /// The optional fixed-start verification ran (n ≤ 3 only).
  bool exhaustive = false;
};

struct CertifyOptions {
  RankOneSearchOptions search;
  /// Run the fixed-start verification when n ≤ 3. It can only turn an
  /// Inconclusive verdict into NotConvergent, never into Convergent.
  bool exhaustive = false;
};

/// Convergent only when H_{k₀} is all of ℂⁿˣⁿ (then G = {0} holds no
/// rank-one matrix). Otherwise NotConvergent with a certified witness, or
/// Inconclusive when the search finds none.
CertificationVerdict certify_convergence(const KrausMap& k, const CertifyOptions& options = {});

/// Contraction estimate for Φᵏ, computed through k successive applications of
/// Φ and Ψ rather than an mᵏ-term Kraus family.
ContractionEstimate k_step_norm(const KrausMap& k, int steps, const ContractionOptions& options = {});

}  // namespace conerate
