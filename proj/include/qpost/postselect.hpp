#pragma once

#include "qpost/linalg.hpp"

namespace qpost {

/// Generalized density operator of a pre- and post-selected ensemble,
/// |psi><phi| / <phi|psi>. Trace one and rank one, but generally not
/// Hermitian; spectral questions about it go through singular values.
class TwoStateDensity {
 public:
  /// Builds the operator from its defining states. Throws
  /// OrthogonalityError when |<phi|psi>| <= overlap_tol.
  TwoStateDensity(Ket psi, Ket phi, double overlap_tol = kOverlapTol);

  int dim() const { return psi_.dim(); }
  const Ket& psi() const { return psi_; }
  const Ket& phi() const { return phi_; }
  const Operator& matrix() const { return matrix_; }
  cdouble overlap() const { return overlap_; }  // <phi|psi>

 private:
  Ket psi_;
  Ket phi_;
  cdouble overlap_;
  Operator matrix_;
};

/// Free-function spelling of the TwoStateDensity constructor.
TwoStateDensity two_state_density(const Ket& psi, const Ket& phi,
                                  double overlap_tol = kOverlapTol);

/// Builds the same operator through the conditional-distribution route,
/// sum_h Pr(h|phi) |h><phi| / <phi|h>, and verifies it lands on the direct
/// construction within 1e-10 before returning. Every basis ket must have
/// |<phi|h>| > overlap_tol.
TwoStateDensity two_state_from_decomposition(const Ket& psi, const Ket& phi,
                                             const OrthonormalBasis& basis_h,
                                             double overlap_tol = kOverlapTol);

/// Weak value of pi between the pre- and post-selection of tsd, computed
/// in the bra-ket form <phi|pi|psi> / <phi|psi>. Agrees with
/// Tr[tsd.matrix() * pi] to rounding; the bra-ket form needs fewer flops.
cdouble weak_value(const TwoStateDensity& tsd, const Operator& pi);

/// |<phi|psi>|^2, the probability of the post-selection succeeding.
double postselection_probability(const Ket& psi, const Ket& phi);

/// Probability-weighted mixture over an orthonormal post-selection basis,
/// sum_phi Pr(phi) rho_{psi|phi}. Equals |psi><psi| identically; terms with
/// overlap at or below overlap_tol are added in their continuous-limit form
/// <psi|phi> |psi><phi| (zero at exact orthogonality) so no term is lost.
Operator mixture_reconstruct(const Ket& psi, const OrthonormalBasis& basis_phi,
                             double overlap_tol = kOverlapTol);

}  // namespace qpost
