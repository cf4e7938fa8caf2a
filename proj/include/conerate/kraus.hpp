#pragma once

// Kraus maps and the noncommutative Dobrushin coefficient.
//
// A Kraus family V₁..V_m with Σ Vᵢ*Vᵢ = Iₙ defines the unital map
// Φ(X) = Σ Vᵢ* X Vᵢ (the consensus operator) and its trace-preserving
// adjoint Ψ(X) = Σ Vᵢ X Vᵢ* (the quantum channel acting on states). The
// contraction rate of Φ in the spectral-diameter seminorm equals the
// trace-distance contraction rate of Ψ:
//
//   ‖Φ‖_H = ‖Ψ‖_H* = max over orthonormal u, v of ½‖Ψ(uu* − vv*)‖₁.

#include <cstdint>
#include <optional>
#include <vector>

#include "conerate/cone.hpp"
#include "conerate/linalg.hpp"
#include "conerate/rank_one.hpp"

namespace conerate {

inline constexpr double kKrausCompletenessTolerance = 1e-10;

class KrausMap {
 public:
  /// Throws ValidationError (reporting the Frobenius residual) unless
  /// ‖Σ Vᵢ*Vᵢ − Iₙ‖_F ≤ 1e-10.
  explicit KrausMap(std::vector<CMatrix> ops);

  const std::vector<CMatrix>& ops() const noexcept { return ops_; }
  Index dim() const noexcept { return n_; }
  std::size_t count() const noexcept { return ops_.size(); }

  /// ‖Σ Vᵢ*Vᵢ − Iₙ‖_F
  double completeness_residual() const;

  /// Σ Vᵢ* X Vᵢ on an arbitrary square matrix.
  CMatrix phi(const CMatrix& x) const;
  /// Σ Vᵢ X Vᵢ* on an arbitrary square matrix.
  CMatrix psi(const CMatrix& x) const;
  /// k-fold compositions, applied one step at a time.
  CMatrix phi_power(const CMatrix& x, int k) const;
  CMatrix psi_power(const CMatrix& x, int k) const;

  /// Σ |⟨Vᵢu, Vⱼv⟩|² family {Vⱼ* Vᵢ}, i.e. Bᵢⱼ with v* Bᵢⱼ u = ⟨Vⱼv, Vᵢu⟩.
  std::vector<CMatrix> overlap_family() const;

 private:
  std::vector<CMatrix> ops_;
  Index n_ = 0;
};

HermitianMatrix apply_phi(const KrausMap& k, const HermitianMatrix& x);
HermitianMatrix apply_psi(const KrausMap& k, const HermitianMatrix& x);

/// ½‖Ψ(uu* − vv*)‖₁ for unit u ⊥ v (ValidationError otherwise: ‖u‖, ‖v‖
/// within 1e-10 of 1 and |u*v| ≤ 1e-10).
double pair_objective(const KrausMap& k, const CVector& u, const CVector& v);

/// Same objective for Ψᵏ.
double pair_objective(const KrausMap& k, const CVector& u, const CVector& v, int power);

struct ContractionOptions {
  int restarts = 32;
  /// Ascent stops once three consecutive iterations improve by less than tol.
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int max_iterations = 200;
  /// Attempt the heuristic Birkhoff estimate (only when Φ is interior-valued).
  bool birkhoff = true;
  int interior_samples = 200;
  int diameter_samples = 10000;
};

struct ContractionEstimate {
  /// pair_objective at the witness pair, a lower bound on ‖Φ‖_H.
  double lower_bound = 0.0;
  CVector witness_u;
  CVector witness_v;
  int restarts_used = 0;
  int best_restart = 0;
  int iterations = 0;
  bool converged = false;
  /// tanh(D/4) where D is a sampled estimate of Diam Ψ. Present only when Φ
  /// passed the interior test. Since D underestimates the true diameter this
  /// is a heuristic, never a certified bound.
  std::optional<double> upper_bound;
  std::optional<double> diameter_estimate;
  bool upper_bound_certified = false;
};

/// Multi-start spectral ascent for max ½‖Ψᵏ(uu* − vv*)‖₁ over orthonormal
/// pairs. The objective is ½ maxₛ ⟨uu* − vv*, Φᵏ(S)⟩ over Hermitian
/// contractions S, attained at S = sign(Ψᵏ(uu* − vv*)); the update takes u and
/// v as the top and bottom eigenvectors of Φᵏ(S), which never decreases the
/// objective.
/// Restarts are merged by maximum objective, ties to the lowest index.
ContractionEstimate contraction_norm(const KrausMap& k, const ContractionOptions& options = {});
ContractionEstimate contraction_norm_power(const KrausMap& k, int power, const ContractionOptions& options = {});

/// 1 − Σᵢ min{u*Φ(xᵢxᵢ*)u, v*Φ(xᵢxᵢ*)v} for the columns xᵢ of a unitary X
/// (ValidationError if ‖X*X − I‖_F > 1e-10).
double dobrushin_form_value(const KrausMap& k, const CVector& u, const CVector& v, const CMatrix& basis);

/// Eigenbasis of Ψ(uu* − vv*), which makes dobrushin_form_value equal
/// pair_objective.
CMatrix optimal_dobrushin_basis(const KrausMap& k, const CVector& u, const CVector& v);

struct ZeroErrorVerdict {
  enum class Status { Positive, NotFound };
  Status status = Status::NotFound;
  /// Present iff Positive: ⟨Vᵢu, Vⱼv⟩ = 0 for all i, j up to `residual`.
  std::optional<RankOneWitness> witness;
  /// Smallest Σᵢⱼ |⟨Vᵢu, Vⱼv⟩|² seen.
  double min_value = 0.0;

  bool positive() const { return status == Status::Positive; }
};

/// Searches for u, v with ⟨Vᵢu, Vⱼv⟩ = 0 for all i, j. Positive means two
/// perfectly distinguishable outputs exist and ‖Φ‖_H = 1; NotFound is only
/// the outcome of a local search.
ZeroErrorVerdict zero_error_check(const KrausMap& k, const RankOneSearchOptions& options = {});

}  // namespace conerate
