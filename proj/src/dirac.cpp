#include "qpost/dirac.hpp"

#include <cmath>
#include <string>

namespace qpost {

namespace {

void check_density_operator(const Operator& rho) {
  const double defect = hermiticity_defect(rho);
  if (defect > kNormTol) {
    throw NumericError("density operator is not Hermitian (defect " +
                       std::to_string(defect) + ")");
  }
  const cdouble tr = trace(rho);
  if (std::abs(tr - cdouble{1.0, 0.0}) > kNormTol) {
    throw NumericError("density operator trace differs from one by " +
                       std::to_string(std::abs(tr - cdouble{1.0, 0.0})));
  }
  EigResult eig = hermitian_eig(rho, kNormTol);
  if (eig.eigenvalues.front() < -kNormTol) {
    throw NumericError("density operator has negative eigenvalue " +
                       std::to_string(eig.eigenvalues.front()));
  }
}

std::vector<double> sums_with_real_check(const DiracDistribution& dist, bool rows) {
  const int d = dist.dim();
  std::vector<double> out(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    cdouble s{0.0, 0.0};
    for (int l = 0; l < d; ++l) s += rows ? dist.at(k, l) : dist.at(l, k);
    if (std::abs(s.imag()) > kNormTol) {
      throw NumericError("marginal has imaginary residue " + std::to_string(s.imag()));
    }
    out[static_cast<std::size_t>(k)] = s.real();
  }
  return out;
}

}  // namespace

DiracDistribution::DiracDistribution(OrthonormalBasis basis_a, OrthonormalBasis basis_b,
                                     std::vector<cdouble> table)
    : basis_a_(std::move(basis_a)), basis_b_(std::move(basis_b)), table_(std::move(table)) {
  const int d = basis_a_.dim();
  if (basis_b_.dim() != d) throw DimensionError("Dirac distribution bases differ in dimension");
  if (table_.size() != static_cast<std::size_t>(d) * d) {
    throw DimensionError("Dirac table must be dim x dim");
  }
  cdouble total{0.0, 0.0};
  for (const cdouble& z : table_) total += z;
  if (std::abs(total - cdouble{1.0, 0.0}) > kNormTol) {
    throw NumericError("Dirac table sums to " + std::to_string(total.real()) + "+" +
                       std::to_string(total.imag()) + "i, expected 1");
  }
  sums_with_real_check(*this, true);
  sums_with_real_check(*this, false);
}

DiracDistribution dirac_distribution(const Operator& rho, const OrthonormalBasis& basis_a,
                                     const OrthonormalBasis& basis_b) {
  const int d = rho.dim();
  if (basis_a.dim() != d || basis_b.dim() != d) {
    throw DimensionError("dirac_distribution: basis/operator dimension mismatch");
  }
  check_density_operator(rho);

  std::vector<cdouble> table(static_cast<std::size_t>(d) * d);
  for (int m = 0; m < d; ++m) {
    const std::vector<cdouble> rho_am = apply(rho, basis_a[m]);
    for (int n = 0; n < d; ++n) {
      const cdouble left = inner_product(basis_b[n], rho_am);    // <b_n|rho|a_m>
      const cdouble right = inner_product(basis_a[m], basis_b[n]);  // <a_m|b_n>
      table[static_cast<std::size_t>(m) * d + n] = left * right;
    }
  }
  return DiracDistribution(basis_a, basis_b, std::move(table));
}

std::vector<double> marginal_a(const DiracDistribution& dist) {
  return sums_with_real_check(dist, true);
}

std::vector<double> marginal_b(const DiracDistribution& dist) {
  return sums_with_real_check(dist, false);
}

Operator reconstruct(const DiracDistribution& dist, double overlap_tol) {
  const int d = dist.dim();
  Operator rho(d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      // table[m][n] / <a_m|b_n> = <b_n|rho|a_m>, so summing the dyads
      // |b_n><a_m| with that weight rebuilds rho exactly. The mirrored
      // pairing (|a_m><b_n| over <b_n|a_m>) is an identity only for the
      // transpose table convention and would conjugate coherences here.
      const cdouble overlap = inner_product(dist.basis_a()[m], dist.basis_b()[n]);
      if (std::abs(overlap) <= overlap_tol) {
        throw OrthogonalityError(
            "reconstruction singular: |<a_" + std::to_string(m) + "|b_" + std::to_string(n) +
            ">| = " + std::to_string(std::abs(overlap)) + " <= " + std::to_string(overlap_tol));
      }
      rho += (dist.at(m, n) / overlap) * outer_product(dist.basis_b()[n], dist.basis_a()[m]);
    }
  }
  return rho;
}

std::vector<cdouble> conditional_dirac(const Ket& psi, const Ket& phi,
                                       const OrthonormalBasis& basis_h, double overlap_tol) {
  if (psi.dim() != phi.dim() || psi.dim() != basis_h.dim()) {
    throw DimensionError("conditional_dirac: dimension mismatch");
  }
  const cdouble overlap = inner_product(phi, psi);
  if (std::abs(overlap) <= overlap_tol) {
    throw OrthogonalityError("orthogonal pre/post-selection: |<phi|psi>| = " +
                             std::to_string(std::abs(overlap)) + " <= " +
                             std::to_string(overlap_tol));
  }
  const int d = psi.dim();
  std::vector<cdouble> out(static_cast<std::size_t>(d));
  for (int h = 0; h < d; ++h) {
    out[static_cast<std::size_t>(h)] =
        inner_product(phi, basis_h[h]) * inner_product(basis_h[h], psi) / overlap;
  }
  return out;
}

}  // namespace qpost
