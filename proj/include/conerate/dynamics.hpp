#pragma once

// Consensus orbits x_{k+1} = T(x_k) and their dual Markov chains
// μ_{k+1} = T*(μ_k), for T(x) = A x on ℝⁿ (T*(μ) = Aᵀμ) and T = Φ on Sₙ
// (T* = Ψ). When ‖T‖_H ≤ c < 1 there is a unique invariant π and
//
//   ‖Tⁿ(x) − ⟨π, x⟩·unit‖_T ≤ cⁿ ‖x‖_H,     ‖(T*)ⁿ(μ) − π‖_H* ≤ cⁿ.

#include <optional>
#include <span>
#include <vector>

#include "conerate/classical.hpp"
#include "conerate/cone.hpp"
#include "conerate/kraus.hpp"

namespace conerate {

template <class State>
struct Trajectory {
  /// states[0] is the initial state; states[k] the state after k steps.
  std::vector<State> states;
  /// ω(state/unit) for each state.
  std::vector<double> oscillations;
  /// ‖μ_k − reference‖_H* for each state, when a reference measure was given.
  std::vector<double> dual_distances;
};

using VectorTrajectory = Trajectory<Vector>;
using MatrixTrajectory = Trajectory<HermitianMatrix>;

VectorTrajectory simulate_consensus(const StochasticMatrix& a, const Vector& x0, int steps);
MatrixTrajectory simulate_consensus(const KrausMap& k, const HermitianMatrix& x0, int steps);

VectorTrajectory simulate_markov(const StochasticMatrix& a, const DualVector& mu0, int steps,
                                 const std::optional<Vector>& reference = std::nullopt);
MatrixTrajectory simulate_markov(const KrausMap& k, const DensityMatrix& rho0, int steps,
                                 const std::optional<HermitianMatrix>& reference = std::nullopt);

template <class State>
struct InvariantEstimate {
  State pi;
  double rate_used = 0.0;
  /// ‖μ_k − μ_{k−1}‖_H* at the stopping step.
  double last_change = 0.0;
  /// A priori distance bound c/(1−c) · last_change ≤ tol/(1−c).
  double error_bound = 0.0;
  /// ‖T*(π) − π‖_H*
  double residual = 0.0;
  int steps = 0;
  bool converged = false;
};

/// Iterates T* from the barycenter (uniform vector, resp. I/n) until the
/// successive dual-norm change is ≤ tol or max_steps is reached. Throws
/// NoContraction unless 0 ≤ c < 1.
InvariantEstimate<Vector> estimate_invariant(const StochasticMatrix& a, double c, double tol = 1e-14,
                                             int max_steps = 100000);
InvariantEstimate<HermitianMatrix> estimate_invariant(const KrausMap& k, double c, double tol = 1e-14,
                                                      int max_steps = 100000);

struct GeometricBoundReport {
  double contraction = 0.0;
  int steps = 0;
  /// Per n = 1 … steps (index n − 1).
  std::vector<double> primal_lhs;
  std::vector<double> primal_rhs;
  std::vector<double> dual_lhs;
  std::vector<double> dual_rhs;
  double max_primal_violation = 0.0;
  double max_dual_violation = 0.0;

  double max_violation() const { return std::max(max_primal_violation, max_dual_violation); }
};

/// Checks both geometric inequalities for n = 1 … steps with the supplied c.
/// A positive violation means c is not an upper bound on ‖T‖_H. The invariant
/// π comes from estimate_invariant, whose stopping rule does not depend on c,
/// so deliberately understated values of c are still checked faithfully.
/// Throws NoContraction unless 0 ≤ c < 1.
GeometricBoundReport verify_geometric_bounds(const StochasticMatrix& a, double c, const Vector& x0,
                                             const DualVector& mu0, int steps);
GeometricBoundReport verify_geometric_bounds(const KrausMap& k, double c, const HermitianMatrix& x0,
                                             const DensityMatrix& mu0, int steps);

struct TimeVaryingReport {
  VectorTrajectory trajectory;
  std::vector<WindowReport> windows;
  std::size_t window = 0;
  double alpha = 0.0;
  /// Every window coefficient is ≤ alpha (< 1), so the envelope is asserted.
  bool envelope_asserted = false;
  /// max over k of ω(x_k) − α^{⌊k/p⌋} ω(x₀); only meaningful when asserted.
  double max_violation = 0.0;
  /// Asserted and max_violation ≤ 1e-10.
  bool envelope_holds = false;
};

/// x_k = A_k x_{k−1} with A_k = seq[k−1]. The envelope
/// ω(x_k) ≤ α^{⌊k/p⌋} ω(x₀) is checked only when every length-p window
/// coefficient is ≤ α < 1. The window reports use 1 − α as their Moreau entry
/// threshold, matching δ ≤ 1 − (entry bound).
TimeVaryingReport simulate_time_varying(std::span<const StochasticMatrix> seq, const Vector& x0, std::size_t p,
                                        double alpha);

}  // namespace conerate
