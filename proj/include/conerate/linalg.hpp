#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace conerate {

using Index = Eigen::Index;
using cplx = std::complex<double>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct JacobiOptions {
  /// Sweeps stop once the off-diagonal Frobenius norm drops below
  /// `off_tolerance` times the Frobenius norm of the input.
  double off_tolerance = 1e-13;
  int max_sweeps = 100;
};

/// Spectral decomposition A = V diag(values) V*, eigenvalues ascending.
struct HermitianEigen {
  Vector values;
  CMatrix vectors;
  int sweeps = 0;
  bool converged = true;

  double min() const { return values(0); }
  double max() const { return values(values.size() - 1); }
  CVector min_vector() const { return vectors.col(0); }
  CVector max_vector() const { return vectors.col(vectors.cols() - 1); }
};

/// Cyclic complex Jacobi eigensolver for a Hermitian matrix.
///
/// Only the Hermitian part of `a` is used. Rotations are applied in row-major
/// (p, q) order with no pivoting, so the result is bit-reproducible.
HermitianEigen jacobi_eigen(const CMatrix& a, const JacobiOptions& options = {});

/// V diag(f(λ)) V* for a precomputed decomposition.
CMatrix spectral_function(const HermitianEigen& eig, const std::function<double(double)>& f);

/// (A + A*) / 2
inline CMatrix hermitian_part(const CMatrix& a) { return (a + a.adjoint()) * 0.5; }

/// Frobenius inner product ⟨A, B⟩ = tr(A* B), antilinear in A.
inline cplx inner(const CMatrix& a, const CMatrix& b) { return (a.conjugate().cwiseProduct(b)).sum(); }

/// Σ|λᵢ| of a Hermitian matrix.
double trace_norm(const CMatrix& hermitian);

/// x x*
inline CMatrix outer(const CVector& x) { return x * x.adjoint(); }

/// n × (n−1) matrix whose orthonormal columns span the orthogonal complement of
/// the unit vector `v` (Householder construction).
CMatrix complement_basis(const CVector& v);

/// Returns v − (u*v) u renormalized; `u` must be a unit vector.
CVector orthonormalize_against(const CVector& v, const CVector& u);

}  // namespace conerate
