#include "qpost/postselect.hpp"

#include <cmath>
#include <string>

#include "qpost/dirac.hpp"

namespace qpost {

namespace {

cdouble checked_overlap(const Ket& psi, const Ket& phi, double overlap_tol) {
  if (psi.dim() != phi.dim()) throw DimensionError("pre/post-selection dimension mismatch");
  const cdouble overlap = inner_product(phi, psi);
  if (std::abs(overlap) <= overlap_tol) {
    throw OrthogonalityError("orthogonal pre/post-selection: |<phi|psi>| = " +
                             std::to_string(std::abs(overlap)) + " <= " +
                             std::to_string(overlap_tol));
  }
  return overlap;
}

}  // namespace

TwoStateDensity::TwoStateDensity(Ket psi, Ket phi, double overlap_tol)
    : psi_(std::move(psi)),
      phi_(std::move(phi)),
      overlap_(checked_overlap(psi_, phi_, overlap_tol)),
      matrix_((1.0 / overlap_) * outer_product(psi_, phi_)) {}

TwoStateDensity two_state_density(const Ket& psi, const Ket& phi, double overlap_tol) {
  return TwoStateDensity(psi, phi, overlap_tol);
}

TwoStateDensity two_state_from_decomposition(const Ket& psi, const Ket& phi,
                                             const OrthonormalBasis& basis_h,
                                             double overlap_tol) {
  if (basis_h.dim() != psi.dim()) {
    throw DimensionError("two_state_from_decomposition: basis dimension mismatch");
  }
  const std::vector<cdouble> cond = conditional_dirac(psi, phi, basis_h, overlap_tol);

  const int d = psi.dim();
  Operator sum(d);
  for (int h = 0; h < d; ++h) {
    const cdouble phi_h = inner_product(phi, basis_h[h]);
    if (std::abs(phi_h) <= overlap_tol) {
      throw OrthogonalityError("basis ket " + std::to_string(h) +
                               " is orthogonal to the post-selected state: |<phi|h>| = " +
                               std::to_string(std::abs(phi_h)));
    }
    sum += (cond[static_cast<std::size_t>(h)] / phi_h) * outer_product(basis_h[h], phi);
  }

  TwoStateDensity direct(psi, phi, overlap_tol);
  const double deviation = max_abs_diff(sum, direct.matrix());
  if (deviation > 1e-10) {
    throw NumericError("decomposition route deviates from the direct construction by " +
                       std::to_string(deviation));
  }
  return direct;
}

cdouble weak_value(const TwoStateDensity& tsd, const Operator& pi) {
  if (pi.dim() != tsd.dim()) throw DimensionError("weak_value: operator dimension mismatch");
  return inner_product(tsd.phi(), apply(pi, tsd.psi())) / tsd.overlap();
}

double postselection_probability(const Ket& psi, const Ket& phi) {
  if (psi.dim() != phi.dim()) throw DimensionError("postselection_probability: dimension mismatch");
  const double p = std::norm(inner_product(phi, psi));
  return std::min(p, 1.0);
}

Operator mixture_reconstruct(const Ket& psi, const OrthonormalBasis& basis_phi,
                             double overlap_tol) {
  if (basis_phi.dim() != psi.dim()) {
    throw DimensionError("mixture_reconstruct: basis dimension mismatch");
  }
  const int d = psi.dim();
  Operator rho(d);
  for (int k = 0; k < d; ++k) {
    const Ket& phi = basis_phi[k];
    const cdouble overlap = inner_product(phi, psi);
    if (std::abs(overlap) > overlap_tol) {
      const TwoStateDensity tsd(psi, phi, overlap_tol);
      rho += cdouble{std::norm(overlap), 0.0} * tsd.matrix();
    } else {
      // Continuous limit of Pr(phi) * rho_{psi|phi}: conj(<phi|psi>) |psi><phi|,
      // which vanishes at exact orthogonality.
      rho += std::conj(overlap) * outer_product(psi, phi);
    }
  }
  return rho;
}

}  // namespace qpost
