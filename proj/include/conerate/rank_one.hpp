#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "conerate/linalg.hpp"

namespace conerate {

struct RankOneSearchOptions {
  int restarts = 32;
  /// A witness is certified when every |v* Bₐ u| ≤ tol.
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int max_iterations = 500;
  /// Additionally run from a fixed set of 10⁴ start pairs (meant for n ≤ 3).
  bool exhaustive = false;
};

/// Unit vectors u, v with the certified residual maxₐ |v* Bₐ u|.
struct RankOneWitness {
  CVector u;
  CVector v;
  double residual = 0.0;
};

struct RankOneSearchResult {
  std::optional<RankOneWitness> witness;
  /// Smallest g(u, v) = Σₐ |v* Bₐ u|² seen over all starts.
  double min_objective = 0.0;

  bool found() const { return witness.has_value(); }
};

/// Searches for unit u, v annihilated by a family of matrices, i.e.
/// v* Bₐ u = 0 for all a, equivalently the rank-one matrix v u* is orthogonal
/// to every Bₐ*. Alternating minimization: for fixed u the best v is the
/// smallest eigenvector of Σₐ (Bₐu)(Bₐu)*, and symmetrically for u.
///
/// This is a local search; a NOT FOUND result is not a proof of absence.
RankOneSearchResult search_rank_one_annihilator(std::span<const CMatrix> family, Index n,
                                                const RankOneSearchOptions& options);

/// Σₐ |v* Bₐ u|²
double annihilator_objective(std::span<const CMatrix> family, const CVector& u, const CVector& v);

/// maxₐ |v* Bₐ u|
double annihilator_residual(std::span<const CMatrix> family, const CVector& u, const CVector& v);

}  // namespace conerate
