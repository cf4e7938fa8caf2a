#pragma once

#include <cstdint>

#include "conerate/kraus.hpp"

namespace conerate::channels {

/// Pauli matrices.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// Qubit depolarizing channel {√(1−3p/4) I, √(p/4) σx, √(p/4) σy, √(p/4) σz};
/// Φ(X) = (1−p) X + (p/2) tr(X) I.
KrausMap depolarizing(double p);

/// Single Kraus operator U (must be unitary).
KrausMap unitary(const CMatrix& u);

/// n² operators E_ij / √n; Φ(X) = tr(X)/n · I.
KrausMap completely_depolarizing(Index n);

/// Direct sum of two Kraus maps acting on orthogonal blocks. The shorter
/// family is padded with zero operators.
KrausMap block_sum(const KrausMap& a, const KrausMap& b);

/// Haar-random unitary (QR of a complex Gaussian matrix).
CMatrix random_unitary(Index n, std::uint64_t seed);

/// Random Kraus family from a Gaussian isometry ℂⁿ → ℂⁿᵐ.
KrausMap random_channel(Index n, std::size_t m, std::uint64_t seed);

}  // namespace conerate::channels
