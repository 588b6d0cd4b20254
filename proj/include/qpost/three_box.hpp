#pragma once

#include "qpost/linalg.hpp"

namespace qpost::three_box {

/// The three-box scenario: a qutrit prepared in an equal superposition of
/// boxes A, B, C and post-selected in a state that flips the sign of C.
/// The box projectors then take weak values (1, 1, -1).

/// (|A> + |B> + |C|) / sqrt(3)
Ket psi();
/// (|A> + |B> - |C>) / sqrt(3)
Ket phi();
/// |A>/sqrt(3) - (3+sqrt(3))/6 |B> + (-3+sqrt(3))/6 |C>
Ket phi_prime();
/// |A>/sqrt(3) + (3-sqrt(3))/6 |B> + (3+sqrt(3))/6 |C>
Ket phi_double_prime();

/// The box basis {|A>, |B>, |C>} (computational).
OrthonormalBasis box_basis();
/// {phi, phi', phi''}: an orthonormal post-selection basis.
OrthonormalBasis postselection_basis();
/// Projector onto box index 0, 1, or 2.
Operator box_projector(int box);

}  // namespace qpost::three_box
