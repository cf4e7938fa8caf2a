#include "conerate/classical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conerate/errors.hpp"

namespace conerate {

namespace {

double delta_of_rows(const Matrix& b) {
  double best = 0.0;
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = i + 1; j < b.rows(); ++j) best = std::max(best, (b.row(i) - b.row(j)).cwiseAbs().sum());
  return 0.5 * best;
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw ValidationError(os.str());
  }
}

}  // namespace

StochasticMatrix::StochasticMatrix(Matrix a) : a_(std::move(a)) {
  require_square(a_, "StochasticMatrix");
  for (Index i = 0; i < a_.rows(); ++i) {
    bool clamped = false;
    for (Index j = 0; j < a_.cols(); ++j) {
      const double v = a_(i, j);
      if (!std::isfinite(v) || v < -1e-14) {
        std::ostringstream os;
        os << "StochasticMatrix: row " << i << " has invalid entry " << v << " in column " << j;
        throw ValidationError(os.str());
      }
      if (v < 0.0) {
        a_(i, j) = 0.0;
        clamped = true;
      }
    }
    const double s = a_.row(i).sum();
    if (std::abs(s - 1.0) > 1e-12) {
      std::ostringstream os;
      os.precision(17);
      os << "StochasticMatrix: row " << i << " sums to " << s << " (expected 1)";
      throw ValidationError(os.str());
    }
    if (clamped) a_.row(i) /= s;
  }
}

StochasticMatrix StochasticMatrix::operator*(const StochasticMatrix& other) const {
  if (other.size() != size()) throw ValidationError("StochasticMatrix product: dimension mismatch");
  return StochasticMatrix(a_ * other.a_);
}

PositiveMatrix::PositiveMatrix(Matrix a) : a_(std::move(a)) {
  require_square(a_, "PositiveMatrix");
  for (Index i = 0; i < a_.rows(); ++i)
    for (Index j = 0; j < a_.cols(); ++j) {
      const double v = a_(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << "PositiveMatrix: invalid entry " << v << " at (" << i << ", " << j << ")";
        throw ValidationError(os.str());
      }
      if (v <= 1e-300) {
        std::ostringstream os;
        os << "PositiveMatrix: zero entry at (" << i << ", " << j << "), projective diameter is infinite";
        throw ZeroEntry(os.str());
      }
    }
}

double delta_doeblin(const StochasticMatrix& a) { return delta_of_rows(a.matrix()); }

double delta_dobrushin(const StochasticMatrix& a) {
  const Matrix& m = a.matrix();
  if (m.rows() < 2) return 0.0;
  double overlap = 1.0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.rows(); ++j) overlap = std::min(overlap, m.row(i).cwiseMin(m.row(j)).sum());
  return 1.0 - overlap;
}

double consensus_contraction_bruteforce(const StochasticMatrix& a) {
  const Index n = a.size();
  if (n > kBruteForceLimit) {
    std::ostringstream os;
    os << "consensus_contraction_bruteforce: n = " << n << " exceeds the enumeration limit " << kBruteForceLimit;
    throw TooLarge(os.str());
  }
  const Matrix& m = a.matrix();
  // Split the columns into a low and a high half; every column sum A·x is
  // low[s] + high[t], each half built by a short chain of additions.
  const Index low_bits = n / 2;
  const Index high_bits = n - low_bits;
  auto half_sums = [&](Index offset, Index bits) {
    std::vector<Vector> sums(std::size_t(1) << bits, Vector::Zero(n));
    for (std::size_t s = 1; s < sums.size(); ++s) {
      const int top = 63 - __builtin_clzll(static_cast<unsigned long long>(s));
      sums[s] = sums[s & ~(std::size_t(1) << top)] + m.col(offset + top);
    }
    return sums;
  };
  const std::vector<Vector> low = half_sums(0, low_bits);
  const std::vector<Vector> high = half_sums(low_bits, high_bits);

  double best = 0.0;
  Vector y(n);
  for (const Vector& h : high)
    for (const Vector& l : low) {
      y = l + h;
      best = std::max(best, y.maxCoeff() - y.minCoeff());
    }
  return best;
}

double scaled_contraction(const Matrix& a, const ConeVector& x, const ConeVector& y) {
  require_square(a, "scaled_contraction");
  const Index n = a.rows();
  if (x.size() != n || y.size() != n) throw ValidationError("scaled_contraction: dimension mismatch");
  if ((a.array() < 0.0).any()) throw ValidationError("scaled_contraction: matrix has negative entries");
  if (!x.is_interior() || !y.is_interior()) throw NotInterior("scaled_contraction: units must be interior");

  const Vector ax = a * x.entries();
  const Vector ratio = ax.array() / y.entries().array();
  const double hi = ratio.maxCoeff();
  const double lo = ratio.minCoeff();
  if (!(lo > 0.0) || hi - lo > 1e-10 * hi) throw UnitMismatch("scaled_contraction: A·x is not a positive multiple of y");
  // Snap to 1 when the units are already matched, so that x = y = 𝟙 reduces
  // to δ(A) bit-for-bit.
  const double lambda = (std::abs(hi - 1.0) <= 1e-12 && std::abs(lo - 1.0) <= 1e-12) ? 1.0 : 0.5 * (hi + lo);

  Matrix b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) b(i, j) = a(i, j) * x(j) / (lambda * y(i));
  return delta_of_rows(b);
}

double projective_diameter(const PositiveMatrix& a) {
  const Matrix log_a = a.matrix().array().log().matrix();
  const Index n = log_a.rows();
  // log[(A_ik A_jl)/(A_il A_jk)] separates into max_i(L_ik − L_il) + max_j(L_jl − L_jk).
  double best = 0.0;
  for (Index k = 0; k < n; ++k)
    for (Index l = k + 1; l < n; ++l) {
      const Vector diff = log_a.col(k) - log_a.col(l);
      best = std::max(best, diff.maxCoeff() - diff.minCoeff());
    }
  return best;
}

double birkhoff_bound(const PositiveMatrix& a) { return std::tanh(projective_diameter(a) / 4.0); }

std::optional<DoeblinState> doeblin_state(const StochasticMatrix& a) {
  const Matrix& m = a.matrix();
  DoeblinState best;
  for (Index t = 0; t < m.cols(); ++t) {
    const double eps = m.col(t).minCoeff();
    if (eps > best.epsilon) best = {t, eps};
  }
  if (best.epsilon <= 0.0) return std::nullopt;
  return best;
}

StochasticMatrix window_product(std::span<const StochasticMatrix> seq, std::size_t start, std::size_t p) {
  if (p == 0 || start + p > seq.size()) throw ValidationError("window_product: window out of range");
  StochasticMatrix product = seq[start];
  for (std::size_t k = start + 1; k < start + p; ++k) product = seq[k] * product;
  return product;
}

std::vector<WindowReport> windowed_coefficients(std::span<const StochasticMatrix> seq, std::size_t p,
                                                double alpha) {
  if (p == 0) throw ValidationError("windowed_coefficients: window length must be positive");
  std::vector<WindowReport> out;
  if (seq.size() < p) return out;
  for (std::size_t i = 0; i + p <= seq.size(); ++i) {
    const StochasticMatrix product = window_product(seq, i, p);
    WindowReport w;
    w.start = i;
    w.delta = delta_doeblin(product);
    w.entries_bounded = true;
    for (std::size_t k = i; k < i + p; ++k) {
      const Matrix& f = seq[k].matrix();
      if (((f.array() > 0.0) && (f.array() < alpha)).any()) w.entries_bounded = false;
    }
    const Matrix& pm = product.matrix();
    for (Index t = 0; t < pm.cols() && !w.has_root; ++t) w.has_root = (pm.col(t).array() > 0.0).all();
    w.doeblin = doeblin_state(product);
    out.push_back(w);
  }
  return out;
}

}  // namespace conerate
