#pragma once

#include <array>
#include <complex>
#include <vector>

#include "foqcs/circuit.hpp"

namespace foqcs {

using Mat4 = std::array<std::array<cplx, 4>, 4>;

/// Resynthesizes a two-qubit unitary whose canonical (Weyl) class has a
/// vanishing coordinate into exactly 2 CNOTs plus single-qubit Ry/Phase
/// gates, exact up to global phase. Tensor convention: qubit `qa` is the
/// first factor of the 4x4. Throws std::runtime_error for gates that
/// genuinely need 3 CNOTs.
std::vector<Gate> resynth_two_cnot(const Mat4& u, int qa, int qb);

/// 4x4 of the split block  [CRy(theta)(a->b); CNOT(b->a)]  (circuit order).
Mat4 split_block_matrix(double theta);

/// 4x4 of the adjoint-order block  [CNOT(b->a); CRy(theta)(a->b)].
Mat4 split_block_matrix_rev(double theta);

}  // namespace foqcs
