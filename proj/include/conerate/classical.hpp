#pragma once

#include <optional>
#include <span>
#include <vector>

#include "conerate/cone.hpp"
#include "conerate/linalg.hpp"

namespace conerate {

/// Square row-stochastic matrix.
///
/// Entries in [−1e-14, 0) are clamped to zero and their row renormalized;
/// anything more negative, or a row sum off by more than 1e-12, is rejected
/// with a ValidationError naming the row.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(Matrix a);

  static StochasticMatrix identity(Index n) { return StochasticMatrix(Matrix::Identity(n, n)); }

  const Matrix& matrix() const noexcept { return a_; }
  Index size() const noexcept { return a_.rows(); }
  double operator()(Index i, Index j) const { return a_(i, j); }

  /// this · other (apply `other` first when acting on column vectors).
  StochasticMatrix operator*(const StochasticMatrix& other) const;

 private:
  Matrix a_;
};

/// Square matrix with every entry > 1e-300. A zero entry raises ZeroEntry.
class PositiveMatrix {
 public:
  explicit PositiveMatrix(Matrix a);

  const Matrix& matrix() const noexcept { return a_; }
  Index size() const noexcept { return a_.rows(); }

 private:
  Matrix a_;
};

/// ½ max_{i<j} Σₛ |A_is − A_js|
double delta_doeblin(const StochasticMatrix& a);

/// 1 − min_{i<j} Σₛ min(A_is, A_js)
double delta_dobrushin(const StochasticMatrix& a);

inline constexpr Index kBruteForceLimit = 20;

/// max over x ∈ {0,1}ⁿ \ {0, 𝟙} of Δ(Ax), where Δ(y) = maxᵢ yᵢ − minᵢ yᵢ.
/// Exact enumeration over column subsets; throws TooLarge for n > 20.
double consensus_contraction_bruteforce(const StochasticMatrix& a);

/// Contraction coefficient of a nonnegative A between the order-unit spaces
/// with units x (domain) and y (range). Requires A·x = λ·y with λ > 0 to
/// relative accuracy 1e-10 (UnitMismatch otherwise); returns δ(B) for the
/// row-stochastic B_ij = A_ij x_j / (λ y_i).
double scaled_contraction(const Matrix& a, const ConeVector& x, const ConeVector& y);

/// max over column pairs (k, l) of d_H(A e_k, A e_l).
double projective_diameter(const PositiveMatrix& a);

/// tanh(projective_diameter(A) / 4)
double birkhoff_bound(const PositiveMatrix& a);

/// A column t whose entries are all ≥ ε > 0; then δ(A) ≤ 1 − ε.
struct DoeblinState {
  Index column = 0;
  double epsilon = 0.0;

  double bound() const { return 1.0 - epsilon; }
};

/// Column maximizing minᵢ A_it, or nullopt when every column has a zero.
std::optional<DoeblinState> doeblin_state(const StochasticMatrix& a);

/// A_{i+p−1} ⋯ A_{i+1} A_i (0-based; the earliest matrix acts first).
StochasticMatrix window_product(std::span<const StochasticMatrix> seq, std::size_t start, std::size_t p);

struct WindowReport {
  std::size_t start = 0;
  double delta = 0.0;
  /// Every nonzero entry of every factor in the window is ≥ alpha.
  bool entries_bounded = false;
  /// Some node is reached in one step from every node of the product graph.
  bool has_root = false;
  std::optional<DoeblinState> doeblin;

  bool moreau_condition() const { return entries_bounded && has_root; }
};

/// δ of every length-p window product, with the per-window Moreau check for
/// the entry threshold `alpha`. Windows start at 0, 1, …, len − p.
std::vector<WindowReport> windowed_coefficients(std::span<const StochasticMatrix> seq, std::size_t p,
                                                double alpha);

}  // namespace conerate
