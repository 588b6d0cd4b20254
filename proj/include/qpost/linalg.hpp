#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qpost/errors.hpp"

namespace qpost {

using cdouble = std::complex<double>;

/// Tolerance for normalization and pairwise orthonormality checks.
inline constexpr double kNormTol = 1e-9;

/// Tolerance for support detection in spectral functions. Applied relative
/// to the largest eigenvalue magnitude so that operators far from unit norm
/// are handled with the same number of significant digits.
inline constexpr double kRankTol = 1e-12;

/// Default threshold below which an overlap is treated as orthogonal.
inline constexpr double kOverlapTol = 1e-6;

/// Normalized complex state vector, dimension >= 2.
class Ket {
 public:
  /// Requires components already normalized within kNormTol.
  explicit Ket(std::vector<cdouble> components);

  /// Normalizes the given components (rejects the zero vector).
  static Ket normalized(std::vector<cdouble> components);

  int dim() const { return static_cast<int>(amps_.size()); }
  const cdouble& operator[](int i) const { return amps_[static_cast<std::size_t>(i)]; }
  const std::vector<cdouble>& components() const { return amps_; }

 private:
  std::vector<cdouble> amps_;
};

/// Dense square complex matrix. No Hermiticity requirement: two-state
/// density operators are generally non-Hermitian.
class Operator {
 public:
  explicit Operator(int dim);  // zero matrix
  Operator(int dim, std::vector<cdouble> entries);  // row-major, dim*dim

  static Operator identity(int dim);

  int dim() const { return dim_; }
  cdouble& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
  const cdouble& at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * dim_ + j];
  }
  const std::vector<cdouble>& entries() const { return entries_; }

  Operator& operator+=(const Operator& other);
  Operator& operator*=(cdouble scale);

 private:
  int dim_;
  std::vector<cdouble> entries_;
};

Operator operator+(Operator lhs, const Operator& rhs);
Operator operator*(cdouble scale, Operator op);
Operator operator*(const Operator& lhs, const Operator& rhs);

Operator adjoint(const Operator& op);
cdouble trace(const Operator& op);
/// trace(lhs * rhs) without forming the product.
cdouble trace_product(const Operator& lhs, const Operator& rhs);
/// op|ket> as raw components (generally not normalized).
std::vector<cdouble> apply(const Operator& op, const Ket& ket);
/// max_ij |lhs_ij - rhs_ij|
double max_abs_diff(const Operator& lhs, const Operator& rhs);
/// max_ij |op_ij - (op^dagger)_ij|
double hermiticity_defect(const Operator& op);

/// Ordered set of dim pairwise-orthonormal kets.
class OrthonormalBasis {
 public:
  /// Requires kets.size() == dim of each ket and <k_i|k_j> = delta_ij
  /// within kNormTol.
  explicit OrthonormalBasis(std::vector<Ket> kets);

  int dim() const { return static_cast<int>(kets_.size()); }
  const Ket& operator[](int i) const { return kets_[static_cast<std::size_t>(i)]; }
  const std::vector<Ket>& kets() const { return kets_; }

 private:
  std::vector<Ket> kets_;
};

/// <bra|ket>: conjugate-linear in the first argument.
cdouble inner_product(const Ket& bra, const Ket& ket);
/// <bra|v> against raw components (e.g. the result of apply()).
cdouble inner_product(const Ket& bra, const std::vector<cdouble>& v);

/// |ket><bra|: entries[i][j] = ket_i * conj(bra_j).
Operator outer_product(const Ket& ket, const Ket& bra);

struct EigResult {
  std::vector<double> eigenvalues;   // ascending
  OrthonormalBasis eigenvectors;     // matching order
};

/// Eigendecomposition of a Hermitian operator by cyclic complex Jacobi
/// rotations. Requires hermiticity_defect(op) <= tol. Eigenvector phases
/// are canonicalized (largest component real positive) so the output is
/// deterministic.
EigResult hermitian_eig(const Operator& op, double tol = kNormTol);

/// log of a Hermitian PSD operator taken on its support, zero on the kernel:
/// sum over eigenvalues lambda > cut of log(lambda)|v><v| with
/// cut = rank_tol * max(1, lambda_max). Throws NumericError on an eigenvalue
/// below -cut.
Operator log_on_support(const Operator& psd, double rank_tol = kRankTol);

/// Singular values of op in descending order (square roots of the
/// eigenvalues of op * op^dagger).
std::vector<double> singular_values(const Operator& op);

/// Haar-distributed orthonormal basis: QR of a complex Ginibre matrix with
/// the R diagonal fixed positive. Deterministic for a fixed seed.
OrthonormalBasis random_orthonormal_basis(int dim, std::uint64_t seed);

/// Haar-random ket (first column of a Haar basis draw).
Ket random_ket(int dim, std::uint64_t seed);

}  // namespace qpost
