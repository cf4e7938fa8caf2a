#include "conerate/dynamics.hpp"

#include <cmath>

#include "conerate/errors.hpp"

namespace conerate {

namespace {

// Adaptors exposing one cone/operator pair to the generic iteration code.

struct ClassicalSide {
  const Matrix& a;

  Vector primal(const Vector& x) const { return a * x; }
  Vector dual(const Vector& mu) const { return a.transpose() * mu; }
  double oscillation(const Vector& x) const { return x.maxCoeff() - x.minCoeff(); }
  double thompson(const Vector& x) const { return x.cwiseAbs().maxCoeff(); }
  double half_dual(const Vector& d) const { return 0.5 * d.cwiseAbs().sum(); }
  double pairing(const Vector& mu, const Vector& x) const { return mu.dot(x); }
  Vector unit() const { return Vector::Ones(a.rows()); }
  Vector barycenter() const { return Vector::Constant(a.rows(), 1.0 / double(a.rows())); }
  Vector wrap(Vector x) const { return x; }
};

struct QuantumSide {
  const KrausMap& k;

  CMatrix primal(const CMatrix& x) const { return hermitian_part(k.phi(x)); }
  CMatrix dual(const CMatrix& mu) const { return hermitian_part(k.psi(mu)); }
  double oscillation(const CMatrix& x) const {
    const HermitianEigen e = jacobi_eigen(x);
    return e.max() - e.min();
  }
  double thompson(const CMatrix& x) const { return jacobi_eigen(x).values.cwiseAbs().maxCoeff(); }
  double half_dual(const CMatrix& d) const { return 0.5 * jacobi_eigen(d).values.cwiseAbs().sum(); }
  double pairing(const CMatrix& mu, const CMatrix& x) const { return inner(mu, x).real(); }
  CMatrix unit() const { return CMatrix::Identity(k.dim(), k.dim()); }
  CMatrix barycenter() const { return unit() / double(k.dim()); }
  HermitianMatrix wrap(const CMatrix& x) const { return HermitianMatrix::from_hermitian_part(x); }
};

void require_steps(int steps) {
  if (steps < 0) throw ValidationError("simulation: steps must be >= 0");
}

void require_contraction(double c) {
  if (!(c >= 0.0 && c < 1.0)) throw NoContraction("a contraction factor 0 <= c < 1 is required");
}

template <class Side, class Raw>
auto run_consensus(const Side& side, Raw x, int steps) {
  require_steps(steps);
  Trajectory<decltype(side.wrap(x))> t;
  for (int s = 0;; ++s) {
    t.oscillations.push_back(side.oscillation(x));
    t.states.push_back(side.wrap(x));
    if (s == steps) break;
    x = side.primal(x);
  }
  return t;
}

template <class Side, class Raw>
auto run_markov(const Side& side, Raw mu, int steps, const std::optional<Raw>& reference) {
  require_steps(steps);
  Trajectory<decltype(side.wrap(mu))> t;
  for (int s = 0;; ++s) {
    t.oscillations.push_back(side.oscillation(mu));
    if (reference) t.dual_distances.push_back(side.half_dual(mu - *reference));
    t.states.push_back(side.wrap(mu));
    if (s == steps) break;
    mu = side.dual(mu);
  }
  return t;
}

template <class Side>
auto run_invariant(const Side& side, double c, double tol, int max_steps) {
  require_contraction(c);
  if (!(tol > 0.0)) throw ValidationError("estimate_invariant: tol must be positive");
  auto mu = side.barycenter();
  InvariantEstimate<decltype(side.wrap(mu))> est;
  est.rate_used = c;
  for (int s = 0; s < max_steps; ++s) {
    auto next = side.dual(mu);
    est.last_change = side.half_dual(next - mu);
    mu = std::move(next);
    est.steps = s + 1;
    if (est.last_change <= tol) {
      est.converged = true;
      break;
    }
  }
  est.error_bound = c / (1.0 - c) * est.last_change;
  est.residual = side.half_dual(side.dual(mu) - mu);
  est.pi = side.wrap(mu);
  return est;
}

template <class Side, class Raw>
GeometricBoundReport run_bounds(const Side& side, double c, Raw x, Raw mu, int steps) {
  require_contraction(c);
  require_steps(steps);
  const auto inv = run_invariant(side, c, 1e-14, 100000);
  Raw pi;
  if constexpr (std::is_same_v<Raw, Vector>) {
    pi = inv.pi;
  } else {
    pi = inv.pi.matrix();
  }

  GeometricBoundReport r;
  r.contraction = c;
  r.steps = steps;
  const double osc0 = side.oscillation(x);
  const Raw consensus = side.pairing(pi, x) * side.unit();
  double cn = 1.0;
  for (int s = 1; s <= steps; ++s) {
    x = side.primal(x);
    mu = side.dual(mu);
    cn *= c;
    r.primal_lhs.push_back(side.thompson(x - consensus));
    r.primal_rhs.push_back(cn * osc0);
    r.dual_lhs.push_back(side.half_dual(mu - pi));
    r.dual_rhs.push_back(cn);
    r.max_primal_violation = std::max(r.max_primal_violation, r.primal_lhs.back() - r.primal_rhs.back());
    r.max_dual_violation = std::max(r.max_dual_violation, r.dual_lhs.back() - r.dual_rhs.back());
  }
  return r;
}

}  // namespace

VectorTrajectory simulate_consensus(const StochasticMatrix& a, const Vector& x0, int steps) {
  if (x0.size() != a.size()) throw ValidationError("simulate_consensus: dimension mismatch");
  return run_consensus(ClassicalSide{a.matrix()}, x0, steps);
}

MatrixTrajectory simulate_consensus(const KrausMap& k, const HermitianMatrix& x0, int steps) {
  if (x0.dim() != k.dim()) throw ValidationError("simulate_consensus: dimension mismatch");
  return run_consensus(QuantumSide{k}, CMatrix(x0.matrix()), steps);
}

VectorTrajectory simulate_markov(const StochasticMatrix& a, const DualVector& mu0, int steps,
                                 const std::optional<Vector>& reference) {
  if (mu0.size() != a.size()) throw ValidationError("simulate_markov: dimension mismatch");
  return run_markov(ClassicalSide{a.matrix()}, mu0.entries(), steps, reference);
}

MatrixTrajectory simulate_markov(const KrausMap& k, const DensityMatrix& rho0, int steps,
                                 const std::optional<HermitianMatrix>& reference) {
  if (rho0.dim() != k.dim()) throw ValidationError("simulate_markov: dimension mismatch");
  std::optional<CMatrix> ref;
  if (reference) ref = reference->matrix();
  return run_markov(QuantumSide{k}, CMatrix(rho0.matrix()), steps, ref);
}

InvariantEstimate<Vector> estimate_invariant(const StochasticMatrix& a, double c, double tol, int max_steps) {
  return run_invariant(ClassicalSide{a.matrix()}, c, tol, max_steps);
}

InvariantEstimate<HermitianMatrix> estimate_invariant(const KrausMap& k, double c, double tol, int max_steps) {
  return run_invariant(QuantumSide{k}, c, tol, max_steps);
}

GeometricBoundReport verify_geometric_bounds(const StochasticMatrix& a, double c, const Vector& x0,
                                             const DualVector& mu0, int steps) {
  if (x0.size() != a.size() || mu0.size() != a.size())
    throw ValidationError("verify_geometric_bounds: dimension mismatch");
  return run_bounds(ClassicalSide{a.matrix()}, c, x0, mu0.entries(), steps);
}

GeometricBoundReport verify_geometric_bounds(const KrausMap& k, double c, const HermitianMatrix& x0,
                                             const DensityMatrix& mu0, int steps) {
  if (x0.dim() != k.dim() || mu0.dim() != k.dim()) throw ValidationError("verify_geometric_bounds: dimension mismatch");
  return run_bounds(QuantumSide{k}, c, CMatrix(x0.matrix()), CMatrix(mu0.matrix()), steps);
}

TimeVaryingReport simulate_time_varying(std::span<const StochasticMatrix> seq, const Vector& x0, std::size_t p,
                                        double alpha) {
  if (p == 0) throw ValidationError("simulate_time_varying: window length must be positive");
  for (const StochasticMatrix& a : seq)
    if (a.size() != x0.size()) throw ValidationError("simulate_time_varying: dimension mismatch");

  TimeVaryingReport r;
  r.window = p;
  r.alpha = alpha;
  r.windows = windowed_coefficients(seq, p, 1.0 - alpha);

  Vector x = x0;
  r.trajectory.states.push_back(x);
  r.trajectory.oscillations.push_back(x.maxCoeff() - x.minCoeff());
  for (const StochasticMatrix& a : seq) {
    x = a.matrix() * x;
    r.trajectory.states.push_back(x);
    r.trajectory.oscillations.push_back(x.maxCoeff() - x.minCoeff());
  }

  r.envelope_asserted = alpha < 1.0 && !r.windows.empty();
  for (const WindowReport& w : r.windows)
    if (w.delta > alpha + 1e-12) r.envelope_asserted = false;
  if (r.envelope_asserted) {
    const double osc0 = r.trajectory.oscillations.front();
    for (std::size_t k = 0; k < r.trajectory.oscillations.size(); ++k) {
      const double bound = std::pow(alpha, double(k / p)) * osc0;
      r.max_violation = std::max(r.max_violation, r.trajectory.oscillations[k] - bound);
    }
    r.envelope_holds = r.max_violation <= 1e-10;
  }
  return r;
}

}  // namespace conerate
