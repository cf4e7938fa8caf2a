#include "conerate/cone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conerate/errors.hpp"

namespace conerate {

namespace {

void require_same_size(Index a, Index b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw ValidationError(os.str());
  }
}

void require_interior(const ConeVector& y, const char* what) {
  if (!y.is_interior()) throw NotInterior(std::string(what) + ": vector is not in the interior of the cone");
}

/// y^{-1/2} for an interior y; throws NotInterior otherwise.
CMatrix inverse_sqrt(const HermitianMatrix& y, const char* what) {
  const HermitianEigen eig = y.eigen();
  if (!(eig.max() > 0.0) || !(eig.min() > kInteriorTolerance * eig.max()))
    throw NotInterior(std::string(what) + ": matrix is not positive definite");
  return spectral_function(eig, [](double l) { return 1.0 / std::sqrt(l); });
}

/// Spectrum of y^{-1/2} x y^{-1/2}.
Vector relative_spectrum(const HermitianMatrix& x, const HermitianMatrix& y, const char* what) {
  require_same_size(x.dim(), y.dim(), what);
  const CMatrix s = inverse_sqrt(y, what);
  return jacobi_eigen(s * x.matrix() * s).values;
}

}  // namespace

// ---------------------------------------------------------------------------

ConeVector::ConeVector(std::initializer_list<double> values) : entries_(Index(values.size())) {
  Index i = 0;
  for (double v : values) entries_(i++) = v;
}

bool ConeVector::is_interior() const {
  if (entries_.size() == 0) return false;
  const double mx = entries_.maxCoeff();
  return mx > 0.0 && (entries_.array() > kInteriorTolerance * mx).all();
}

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("HermitianMatrix: matrix is not square");
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > 1e-12) {
        std::ostringstream os;
        os << "HermitianMatrix: entry (" << i << ", " << j << ") violates Hermitian symmetry";
        throw ValidationError(os.str());
      }
  m_ = hermitian_part(m);
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  HermitianMatrix h;
  h.m_ = CMatrix::Identity(n, n);
  return h;
}

HermitianMatrix HermitianMatrix::diagonal(const Vector& d) {
  HermitianMatrix h;
  h.m_ = d.cast<cplx>().asDiagonal();
  return h;
}

HermitianMatrix HermitianMatrix::from_hermitian_part(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("HermitianMatrix: matrix is not square");
  HermitianMatrix h;
  h.m_ = hermitian_part(m);
  return h;
}

bool HermitianMatrix::is_interior() const {
  if (m_.size() == 0) return false;
  const HermitianEigen eig = eigen();
  return eig.max() > 0.0 && eig.min() > kInteriorTolerance * eig.max();
}

HermitianMatrix HermitianMatrix::operator-() const {
  HermitianMatrix h;
  h.m_ = -m_;
  return h;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_size(a.dim(), b.dim(), "HermitianMatrix +");
  HermitianMatrix h;
  h.m_ = a.m_ + b.m_;
  return h;
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_size(a.dim(), b.dim(), "HermitianMatrix -");
  HermitianMatrix h;
  h.m_ = a.m_ - b.m_;
  return h;
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  HermitianMatrix h;
  h.m_ = s * a.m_;
  return h;
}

DualVector::DualVector(std::initializer_list<double> values) : entries_(Index(values.size())) {
  Index i = 0;
  for (double v : values) entries_(i++) = v;
}

DualVector DualVector::vertex(Index n, Index i) {
  Vector e = Vector::Zero(n);
  e(i) = 1.0;
  return DualVector(std::move(e));
}

bool DualVector::is_probability(double tol) const {
  return entries_.size() > 0 && (entries_.array() >= -tol).all() && std::abs(entries_.sum() - 1.0) <= tol;
}

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
  if (std::abs(m_.trace() - 1.0) > 1e-12) throw ValidationError("DensityMatrix: trace differs from 1");
  if (m_.eigen().min() < -1e-10) throw ValidationError("DensityMatrix: matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const CVector& x) {
  const CVector u = x / x.norm();
  return DensityMatrix(HermitianMatrix::from_hermitian_part(outer(u)));
}

DensityMatrix DensityMatrix::maximally_mixed(Index n) {
  return DensityMatrix((1.0 / double(n)) * HermitianMatrix::identity(n));
}

// ---------------------------------------------------------------------------

double upper_coeff(const ConeVector& x, const ConeVector& y) {
  require_same_size(x.size(), y.size(), "upper_coeff");
  require_interior(y, "upper_coeff");
  return (x.entries().array() / y.entries().array()).maxCoeff();
}

double upper_coeff(const HermitianMatrix& x, const HermitianMatrix& y) {
  const Vector s = relative_spectrum(x, y, "upper_coeff");
  return s(s.size() - 1);
}

// m(x/y) = −M(−x/y), so the identity holds bit-for-bit.
double lower_coeff(const ConeVector& x, const ConeVector& y) { return -upper_coeff(-x, y); }

double lower_coeff(const HermitianMatrix& x, const HermitianMatrix& y) { return -upper_coeff(-x, y); }

double hopf_oscillation(const ConeVector& x, const ConeVector& y) {
  return upper_coeff(x, y) - lower_coeff(x, y);
}

double hopf_oscillation(const HermitianMatrix& x, const HermitianMatrix& y) {
  const Vector s = relative_spectrum(x, y, "hopf_oscillation");
  return s(s.size() - 1) - s(0);
}

double thompson_norm(const ConeVector& x, const ConeVector& unit) {
  return std::max(upper_coeff(x, unit), -lower_coeff(x, unit));
}

double thompson_norm(const ConeVector& x) {
  return x.size() == 0 ? 0.0 : x.entries().cwiseAbs().maxCoeff();
}

double thompson_norm(const HermitianMatrix& x, const HermitianMatrix& unit) {
  const Vector s = relative_spectrum(x, unit, "thompson_norm");
  return std::max(s(s.size() - 1), -s(0));
}

double thompson_norm(const HermitianMatrix& x) {
  if (x.dim() == 0) return 0.0;
  const Vector s = x.eigenvalues();
  return std::max(s(s.size() - 1), -s(0));
}

double hilbert_seminorm(const ConeVector& x, const ConeVector& unit) { return hopf_oscillation(x, unit); }

double hilbert_seminorm(const ConeVector& x) {
  if (x.size() == 0) return 0.0;
  return x.entries().maxCoeff() - x.entries().minCoeff();
}

double hilbert_seminorm(const HermitianMatrix& x, const HermitianMatrix& unit) {
  return hopf_oscillation(x, unit);
}

double hilbert_seminorm(const HermitianMatrix& x) {
  if (x.dim() == 0) return 0.0;
  const Vector s = x.eigenvalues();
  return s(s.size() - 1) - s(0);
}

double hilbert_quotient_shift(const ConeVector& x, const ConeVector& unit) {
  return -0.5 * (upper_coeff(x, unit) + lower_coeff(x, unit));
}

double hilbert_quotient_shift(const HermitianMatrix& x, const HermitianMatrix& unit) {
  const Vector s = relative_spectrum(x, unit, "hilbert_quotient_shift");
  return -0.5 * (s(s.size() - 1) + s(0));
}

double hilbert_projective_metric(const ConeVector& x, const ConeVector& y) {
  require_same_size(x.size(), y.size(), "hilbert_projective_metric");
  require_interior(x, "hilbert_projective_metric");
  require_interior(y, "hilbert_projective_metric");
  return std::log(upper_coeff(x, y) / lower_coeff(x, y));
}

double hilbert_projective_metric(const HermitianMatrix& x, const HermitianMatrix& y) {
  if (!x.is_interior()) throw NotInterior("hilbert_projective_metric: matrix is not positive definite");
  const Vector s = relative_spectrum(x, y, "hilbert_projective_metric");
  return std::log(s(s.size() - 1) / s(0));
}

double dual_t_norm(const DualVector& mu) { return mu.entries().cwiseAbs().sum(); }

double dual_t_norm(const HermitianMatrix& mu) { return mu.eigenvalues().cwiseAbs().sum(); }

double dual_h_norm(const DualVector& mu) {
  if (std::abs(mu.entries().sum()) > 1e-10)
    throw NotTraceless("dual_h_norm: entries do not sum to zero");
  return 0.5 * dual_t_norm(mu);
}

double dual_h_norm(const HermitianMatrix& mu) {
  if (std::abs(mu.trace()) > 1e-10) throw NotTraceless("dual_h_norm: matrix is not traceless");
  return 0.5 * dual_t_norm(mu);
}

bool disjoint(const DualVector& nu, const DualVector& pi) {
  require_same_size(nu.size(), pi.size(), "disjoint");
  for (Index i = 0; i < nu.size(); ++i)
    if (std::abs(nu.entries()(i)) > kSupportTolerance && std::abs(pi.entries()(i)) > kSupportTolerance)
      return false;
  return true;
}

bool disjoint(const CVector& x, const CVector& y, double tol) {
  require_same_size(x.size(), y.size(), "disjoint");
  return std::abs(x.dot(y)) / (x.norm() * y.norm()) <= tol;
}

}  // namespace conerate
