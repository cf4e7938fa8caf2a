#include "conerate/channels.hpp"

#include <cmath>

#include "conerate/errors.hpp"
#include "conerate/rng.hpp"

namespace conerate::channels {

namespace {

CMatrix isometry_from_gaussian(Index rows, Index cols, Rng& rng) {
  CMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) g.col(j) = rng.complex_gaussian(rows);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  // Fix the column phases so the result is Haar distributed.
  const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Index j = 0; j < cols; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

}  // namespace

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

KrausMap depolarizing(double p) {
  if (!(p >= 0.0 && p <= 4.0 / 3.0)) throw ValidationError("depolarizing: p must lie in [0, 4/3]");
  const double a = std::sqrt(1.0 - 0.75 * p);
  const double b = std::sqrt(0.25 * p);
  return KrausMap({a * CMatrix::Identity(2, 2), b * pauli_x(), b * pauli_y(), b * pauli_z()});
}

KrausMap unitary(const CMatrix& u) { return KrausMap({u}); }

KrausMap completely_depolarizing(Index n) {
  if (n < 1) throw ValidationError("completely_depolarizing: n must be positive");
  std::vector<CMatrix> ops;
  const double s = 1.0 / std::sqrt(double(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = s;
      ops.push_back(std::move(e));
    }
  return KrausMap(std::move(ops));
}

KrausMap block_sum(const KrausMap& a, const KrausMap& b) {
  const Index na = a.dim();
  const Index nb = b.dim();
  const std::size_t m = std::max(a.count(), b.count());
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < m; ++i) {
    CMatrix v = CMatrix::Zero(na + nb, na + nb);
    if (i < a.count()) v.topLeftCorner(na, na) = a.ops()[i];
    if (i < b.count()) v.bottomRightCorner(nb, nb) = b.ops()[i];
    ops.push_back(std::move(v));
  }
  return KrausMap(std::move(ops));
}

CMatrix random_unitary(Index n, std::uint64_t seed) {
  Rng rng(seed);
  return isometry_from_gaussian(n, n, rng);
}

KrausMap random_channel(Index n, std::size_t m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ValidationError("random_channel: n and m must be positive");
  Rng rng(seed);
  const CMatrix w = isometry_from_gaussian(n * Index(m), n, rng);
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < m; ++i) ops.push_back(w.middleRows(Index(i) * n, n));
  return KrausMap(std::move(ops));
}

}  // namespace conerate::channels
