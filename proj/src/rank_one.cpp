#include "conerate/rank_one.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "conerate/errors.hpp"
#include "conerate/rng.hpp"

namespace conerate {

namespace {

// Fixed stream for the exhaustive start set, independent of the user seed.
constexpr std::uint64_t kExhaustiveSeed = 0x5eed0f5a11ULL;
constexpr int kExhaustiveSide = 100;

struct Candidate {
  CVector u;
  CVector v;
  double g = std::numeric_limits<double>::infinity();
};

/// Σₐ (Bₐ u)(Bₐ u)*
CMatrix gram_right(std::span<const CMatrix> family, const CVector& u) {
  const Index n = u.size();
  CMatrix m = CMatrix::Zero(n, n);
  for (const CMatrix& b : family) {
    const CVector w = b * u;
    m.noalias() += w * w.adjoint();
  }
  return m;
}

/// Σₐ (Bₐ* v)(Bₐ* v)*
CMatrix gram_left(std::span<const CMatrix> family, const CVector& v) {
  const Index n = v.size();
  CMatrix m = CMatrix::Zero(n, n);
  for (const CMatrix& b : family) {
    const CVector w = b.adjoint() * v;
    m.noalias() += w * w.adjoint();
  }
  return m;
}

Candidate descend(std::span<const CMatrix> family, CVector u, CVector v, double target, int max_iterations) {
  Candidate c{std::move(u), std::move(v), 0.0};
  c.g = annihilator_objective(family, c.u, c.v);
  int stalled = 0;
  for (int it = 0; it < max_iterations && c.g > target; ++it) {
    const CVector u_next = jacobi_eigen(gram_left(family, c.v)).min_vector();
    const CVector v_next = jacobi_eigen(gram_right(family, u_next)).min_vector();
    const double g = annihilator_objective(family, u_next, v_next);
    if (g < c.g) {
      stalled = (c.g - g <= 1e-12 * c.g) ? stalled + 1 : 0;
      c = {u_next, v_next, g};
    } else {
      ++stalled;
    }
    if (stalled >= 5) break;
  }
  return c;
}

/// Gauss–Newton on the bilinear system v* Bₐ u = 0 in the real coordinates
/// (Re u, Im u, Re v, Im v), with minimum-norm steps and renormalization.
/// Converges quadratically near a zero where alternation is only linear.
Candidate polish(std::span<const CMatrix> family, Candidate c, double target) {
  const Index n = c.u.size();
  const Index rows = 2 * Index(family.size());
  Matrix jac(rows, 4 * n);
  Vector res(rows);
  for (int it = 0; it < 30 && c.g > target; ++it) {
    for (std::size_t a = 0; a < family.size(); ++a) {
      const CVector w = family[a] * c.u;
      const CVector z = family[a].adjoint() * c.v;
      const cplx f = c.v.dot(w);
      const Index r = 2 * Index(a);
      res(r) = f.real();
      res(r + 1) = f.imag();
      jac.block(r, 0, 1, n) = z.real().transpose();
      jac.block(r, n, 1, n) = z.imag().transpose();
      jac.block(r, 2 * n, 1, n) = w.real().transpose();
      jac.block(r, 3 * n, 1, n) = w.imag().transpose();
      jac.block(r + 1, 0, 1, n) = -z.imag().transpose();
      jac.block(r + 1, n, 1, n) = z.real().transpose();
      jac.block(r + 1, 2 * n, 1, n) = w.imag().transpose();
      jac.block(r + 1, 3 * n, 1, n) = -w.real().transpose();
    }
    const Vector step = jac.completeOrthogonalDecomposition().solve(-res);
    CVector u = c.u;
    CVector v = c.v;
    for (Index i = 0; i < n; ++i) {
      u(i) += cplx(step(i), step(n + i));
      v(i) += cplx(step(2 * n + i), step(3 * n + i));
    }
    u.normalize();
    v.normalize();
    const double g = annihilator_objective(family, u, v);
    if (!(g < c.g)) break;
    c = {std::move(u), std::move(v), g};
  }
  return c;
}

}  // namespace

double annihilator_objective(std::span<const CMatrix> family, const CVector& u, const CVector& v) {
  double g = 0.0;
  for (const CMatrix& b : family) g += std::norm(v.dot(b * u));
  return g;
}

double annihilator_residual(std::span<const CMatrix> family, const CVector& u, const CVector& v) {
  double r = 0.0;
  for (const CMatrix& b : family) r = std::max(r, std::abs(v.dot(b * u)));
  return r;
}

RankOneSearchResult search_rank_one_annihilator(std::span<const CMatrix> family, Index n,
                                                const RankOneSearchOptions& options) {
  if (n < 1) throw ValidationError("rank-one search: dimension must be positive");
  if (options.restarts < 1) throw ValidationError("rank-one search: restarts must be >= 1");
  if (!(options.tol > 0.0)) throw ValidationError("rank-one search: tol must be positive");
  for (const CMatrix& b : family)
    if (b.rows() != n || b.cols() != n) throw ValidationError("rank-one search: family has wrong shape");

  RankOneSearchResult result;
  if (family.empty()) {
    CVector e = CVector::Zero(n);
    e(0) = 1.0;
    result.witness = RankOneWitness{e, e, 0.0};
    return result;
  }

  // Stop each descent well below the certification threshold.
  const double target = 1e-4 * options.tol * options.tol;
  Candidate best;
  auto consider = [&](Candidate c) {
    if (c.g < best.g) best = std::move(c);
  };

  const Rng root(options.seed);
  for (int r = 0; r < options.restarts && best.g > target; ++r) {
    Rng rng = root.split(std::uint64_t(r));
    CVector u = rng.unit_vector(n);
    CVector v = jacobi_eigen(gram_right(family, u)).min_vector();
    consider(polish(family, descend(family, std::move(u), std::move(v), target, options.max_iterations), target));
  }
  if (options.exhaustive && best.g > target) {
    Rng grid(kExhaustiveSeed);
    std::vector<CVector> points;
    for (int i = 0; i < kExhaustiveSide; ++i) points.push_back(grid.unit_vector(n));
    for (int i = 0; i < kExhaustiveSide && best.g > target; ++i)
      for (int j = 0; j < kExhaustiveSide && best.g > target; ++j)
        consider(polish(family, descend(family, points[std::size_t(i)], points[std::size_t(j)], target, 50), target));
  }

  result.min_objective = best.g;
  const double residual = annihilator_residual(family, best.u, best.v);
  if (best.g <= options.tol * options.tol && residual <= options.tol)
    result.witness = RankOneWitness{best.u, best.v, residual};
  return result;
}

}  // namespace conerate
