#pragma once

// Order-unit functionals on the two concrete cones: the standard positive
// cone ℝⁿ₊ with unit 𝟙, and the positive semidefinite cone Sₙ⁺ with unit Iₙ.
//
// For y in the interior of the cone:
//   M(x/y) = inf{ t : x ⪯ t·y }      m(x/y) = sup{ t : t·y ⪯ x }
//   ω(x/y) = M(x/y) − m(x/y)          (Hopf oscillation)
//   ‖x‖_T  = max(M(x/u), −m(x/u))     (Thompson / order-unit norm)
//   ‖x‖_H  = ω(x/u)                   (Hilbert seminorm)
//   d_H(x, y) = log(M(x/y) / m(x/y))  (Hilbert projective metric)

#include <initializer_list>

#include "conerate/linalg.hpp"

namespace conerate {

/// Relative interiority threshold: yᵢ > kInteriorTolerance · maxⱼ yⱼ, resp.
/// λ_min(Y) > kInteriorTolerance · λ_max(Y).
inline constexpr double kInteriorTolerance = 1e-12;
inline constexpr double kDisjointTolerance = 1e-10;
inline constexpr double kSupportTolerance = 1e-12;

/// Element of ℝⁿ (ordered by ℝⁿ₊).
class ConeVector {
 public:
  ConeVector() = default;
  explicit ConeVector(Vector entries) : entries_(std::move(entries)) {}
  ConeVector(std::initializer_list<double> values);

  static ConeVector unit(Index n) { return ConeVector(Vector::Ones(n)); }

  const Vector& entries() const noexcept { return entries_; }
  Index size() const noexcept { return entries_.size(); }
  double operator()(Index i) const { return entries_(i); }

  bool is_interior() const;

  ConeVector operator-() const { return ConeVector(-entries_); }

 private:
  Vector entries_;
};

/// Complex Hermitian matrix (element of Sₙ ordered by Sₙ⁺).
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Throws ValidationError unless |mᵢⱼ − conj(mⱼᵢ)| ≤ 1e-12 for every entry.
  /// The stored matrix is the exact Hermitian part of `m`.
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix identity(Index n);
  static HermitianMatrix diagonal(const Vector& d);
  /// Hermitian part of `m`, without the symmetry check.
  static HermitianMatrix from_hermitian_part(const CMatrix& m);

  const CMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  HermitianEigen eigen() const { return jacobi_eigen(m_); }
  Vector eigenvalues() const { return eigen().values; }
  double trace() const { return m_.trace().real(); }

  bool is_interior() const;

  HermitianMatrix operator-() const;
  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  CMatrix m_;
};

/// Element of the dual space ℝⁿ (a signed measure).
class DualVector {
 public:
  DualVector() = default;
  explicit DualVector(Vector entries) : entries_(std::move(entries)) {}
  DualVector(std::initializer_list<double> values);

  static DualVector uniform(Index n) { return DualVector(Vector::Constant(n, 1.0 / double(n))); }
  static DualVector vertex(Index n, Index i);

  const Vector& entries() const noexcept { return entries_; }
  Index size() const noexcept { return entries_.size(); }

  /// Entries ≥ 0 and sum 1 within `tol`.
  bool is_probability(double tol = 1e-12) const;

 private:
  Vector entries_;
};

/// Positive semidefinite Hermitian matrix of unit trace.
class DensityMatrix {
 public:
  /// Throws ValidationError unless λ_min ≥ −1e-10 and |tr − 1| ≤ 1e-12.
  explicit DensityMatrix(HermitianMatrix m);

  /// x x* / ‖x‖²
  static DensityMatrix pure(const CVector& x);
  static DensityMatrix maximally_mixed(Index n);

  const HermitianMatrix& hermitian() const noexcept { return m_; }
  const CMatrix& matrix() const noexcept { return m_.matrix(); }
  Index dim() const noexcept { return m_.dim(); }

 private:
  HermitianMatrix m_;
};

// -- order coefficients ------------------------------------------------------

double upper_coeff(const ConeVector& x, const ConeVector& y);
double upper_coeff(const HermitianMatrix& x, const HermitianMatrix& y);

double lower_coeff(const ConeVector& x, const ConeVector& y);
double lower_coeff(const HermitianMatrix& x, const HermitianMatrix& y);

double hopf_oscillation(const ConeVector& x, const ConeVector& y);
double hopf_oscillation(const HermitianMatrix& x, const HermitianMatrix& y);

// -- norms relative to a unit (defaults: 𝟙, Iₙ) ------------------------------

double thompson_norm(const ConeVector& x, const ConeVector& unit);
double thompson_norm(const ConeVector& x);
double thompson_norm(const HermitianMatrix& x, const HermitianMatrix& unit);
double thompson_norm(const HermitianMatrix& x);

double hilbert_seminorm(const ConeVector& x, const ConeVector& unit);
double hilbert_seminorm(const ConeVector& x);
double hilbert_seminorm(const HermitianMatrix& x, const HermitianMatrix& unit);
double hilbert_seminorm(const HermitianMatrix& x);

/// The shift λ* = −(M + m)/2 attaining ‖x‖_H = 2·min_λ ‖x + λ·unit‖_T.
double hilbert_quotient_shift(const ConeVector& x, const ConeVector& unit);
double hilbert_quotient_shift(const HermitianMatrix& x, const HermitianMatrix& unit);

double hilbert_projective_metric(const ConeVector& x, const ConeVector& y);
double hilbert_projective_metric(const HermitianMatrix& x, const HermitianMatrix& y);

// -- dual norms ---------------------------------------------------------------

/// ℓ₁ norm.
double dual_t_norm(const DualVector& mu);
/// Trace norm.
double dual_t_norm(const HermitianMatrix& mu);

/// ½‖μ‖_T*, defined on {μ : ⟨μ, unit⟩ = 0}; throws NotTraceless otherwise
/// (|Σμᵢ| resp. |tr μ| > 1e-10).
double dual_h_norm(const DualVector& mu);
double dual_h_norm(const HermitianMatrix& mu);

// -- disjointness of extreme points ------------------------------------------

/// Supports (entries above 1e-12 in magnitude) do not intersect.
bool disjoint(const DualVector& nu, const DualVector& pi);
/// Pure states x x*, y y*: |x* y| ≤ tol after normalizing x and y.
bool disjoint(const CVector& x, const CVector& y, double tol = kDisjointTolerance);

}  // namespace conerate
