#include "conerate/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "conerate/errors.hpp"

namespace conerate {

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen jacobi_eigen(const CMatrix& input, const JacobiOptions& options) {
  const Index n = input.rows();
  if (input.cols() != n) throw ValidationError("jacobi_eigen: matrix is not square");

  CMatrix a = hermitian_part(input);
  for (Index i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  CMatrix v = CMatrix::Identity(n, n);

  HermitianEigen out;
  const double threshold = options.off_tolerance * a.norm();
  out.converged = false;

  while (true) {
    const double off = off_diagonal_norm(a);
    if (off <= threshold) {
      out.converged = true;
      break;
    }
    if (out.sweeps == options.max_sweeps) break;
    ++out.sweeps;

    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;

        // Remove the phase of a(p,q), then apply the real symmetric rotation.
        const cplx phase = std::conj(apq / r);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const cplx g_pp = c;
        const cplx g_pq = s;
        const cplx g_qp = -s * phase;
        const cplx g_qq = c * phase;

        for (Index k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (Index k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (Index k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

CMatrix spectral_function(const HermitianEigen& eig, const std::function<double(double)>& f) {
  const Index n = eig.values.size();
  CVector d(n);
  for (Index i = 0; i < n; ++i) d(i) = f(eig.values(i));
  return eig.vectors * d.asDiagonal() * eig.vectors.adjoint();
}

double trace_norm(const CMatrix& hermitian) {
  return jacobi_eigen(hermitian).values.cwiseAbs().sum();
}

CMatrix complement_basis(const CVector& v) {
  const Index n = v.size();
  const double a0 = std::abs(v(0));
  const cplx phase = a0 > 0.0 ? v(0) / a0 : cplx(1.0);
  CVector w = v;
  w(0) += phase;
  const double ww = w.squaredNorm();
  CMatrix h = CMatrix::Identity(n, n) - (2.0 / ww) * (w * w.adjoint());
  return h.rightCols(n - 1);
}

CVector orthonormalize_against(const CVector& v, const CVector& u) {
  CVector r = v - u.dot(v) * u;
  r -= u.dot(r) * u;
  return r / r.norm();
}

}  // namespace conerate
