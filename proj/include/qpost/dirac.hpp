#pragma once

#include <vector>

#include "qpost/linalg.hpp"

namespace qpost {

/// Complex quasi-probability table over two orthonormal bases,
/// table[m][n] = Tr[rho P_A^m P_B^n] with P_A^m = |a_m><a_m| and
/// P_B^n = |b_n><b_n|. Normalized with real row/column sums; entries may
/// be negative or complex.
class DiracDistribution {
 public:
  /// table is row-major [m][n] with m indexing basis_a. Validates the
  /// normalization and real-marginal invariants.
  DiracDistribution(OrthonormalBasis basis_a, OrthonormalBasis basis_b,
                    std::vector<cdouble> table);

  int dim() const { return basis_a_.dim(); }
  const OrthonormalBasis& basis_a() const { return basis_a_; }
  const OrthonormalBasis& basis_b() const { return basis_b_; }
  const cdouble& at(int m, int n) const {
    return table_[static_cast<std::size_t>(m) * dim() + n];
  }
  const std::vector<cdouble>& table() const { return table_; }

 private:
  OrthonormalBasis basis_a_;
  OrthonormalBasis basis_b_;
  std::vector<cdouble> table_;
};

/// Builds the distribution of a density operator over two bases:
/// table[m][n] = <b_n|rho|a_m><a_m|b_n>. rho must be a valid density
/// operator (Hermitian, PSD, trace one) within kNormTol.
DiracDistribution dirac_distribution(const Operator& rho, const OrthonormalBasis& basis_a,
                                     const OrthonormalBasis& basis_b);

/// Row sums: entry m equals Tr[rho |a_m><a_m|]. Throws NumericError if an
/// imaginary residue exceeds kNormTol instead of silently dropping it.
std::vector<double> marginal_a(const DiracDistribution& dist);

/// Column sums, mirroring marginal_a over basis_b.
std::vector<double> marginal_b(const DiracDistribution& dist);

/// Inverts the distribution back to the operator:
/// rho = sum_{m,n} table[m][n] |b_n><a_m| / <a_m|b_n>, the dyad pairing
/// under which the table orientation above is an exact decomposition.
/// Every cross-basis overlap must exceed overlap_tol.
Operator reconstruct(const DiracDistribution& dist, double overlap_tol = kOverlapTol);

/// Conditional distribution over basis_h given pre-selection psi and
/// post-selection phi: entry h = <phi|h><h|psi> / <phi|psi>. Entries sum
/// to one; entry h equals the weak value of |h><h|.
std::vector<cdouble> conditional_dirac(const Ket& psi, const Ket& phi,
                                       const OrthonormalBasis& basis_h,
                                       double overlap_tol = kOverlapTol);

}  // namespace qpost
