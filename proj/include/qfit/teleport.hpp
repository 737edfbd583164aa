#pragma once

#include <array>

#include "qfit/qmath.hpp"

namespace qfit {

/// The four Bell states as 4x1 columns, in the fixed index convention
///   Psi0 = (|01> - |10>)/sqrt2   Psi1 = (|00> - |11>)/sqrt2
///   Psi2 = (|00> + |11>)/sqrt2   Psi3 = (|01> + |10>)/sqrt2
/// paired with sigma_0..sigma_3 in that order by the teleportation map.
const std::array<ComplexMatrix, 4>& bell_basis();

struct BellProbabilities {
    std::array<double, 4> p{};
};

/// p_i = <Psi_i| rho |Psi_i>, clamped to [0,1]. Tiny negative values from
/// rounding are clamped to 0 and the vector renormalized when |sum - 1|
/// exceeds 1e-12, keeping the downstream maps trace preserving.
BellProbabilities bell_probabilities(const ComplexMatrix& rho_res);

/// Standard protocol with a (generally mixed, noisy) resource:
/// Lambda(rho) = sum_i p_i sigma_i rho sigma_i.
ComplexMatrix teleport_single(const ComplexMatrix& rho_res, const ComplexMatrix& probe);

/// Doubled protocol for a two-qubit probe, two independent copies of the
/// same resource: Lambda(rho) = sum_ij p_i p_j (s_i x s_j) rho (s_i x s_j).
ComplexMatrix teleport_double(const ComplexMatrix& rho_res, const ComplexMatrix& probe2);

}  // namespace qfit
