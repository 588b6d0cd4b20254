#pragma once

#include <cstdint>

#include "qpost/linalg.hpp"

namespace qpost {

/// Logarithm base for entropy values. Natural log by default; any base > 1
/// rescales every entropy by 1/ln(base).
class LogBase {
 public:
  static LogBase natural() { return LogBase(1.0, true); }
  static LogBase base(double b);

  /// Converts a natural-log entropy to this base.
  double scale(double natural_value) const { return natural_value / ln_base_; }
  /// log_b(x)
  double log(double x) const;
  bool is_natural() const { return is_natural_; }
  /// Numeric base value (e for natural).
  double value() const;

 private:
  LogBase(double ln_base, bool is_natural) : ln_base_(ln_base), is_natural_(is_natural) {}
  double ln_base_;
  bool is_natural_;
};

/// Entropy of psi conditioned on post-selecting phi, computed through the
/// general operator route: -(1/2) Tr[rho_{psi|phi} log(rho rho^dagger)]
/// with the log taken on the support. Must equal the closed form
/// log|<phi|psi>|; an imaginary trace residue above kNormTol throws.
double conditional_entropy_selected(const Ket& psi, const Ket& phi, const LogBase& base,
                                    double overlap_tol = kOverlapTol);

/// Closed form of the same quantity: log_b|<phi|psi>|.
double conditional_entropy_selected_closed(const Ket& psi, const Ket& phi,
                                           const LogBase& base,
                                           double overlap_tol = kOverlapTol);

/// Post-selection-averaged conditional entropy over an orthonormal basis:
/// sum_phi p log_b sqrt(p) with p = |<phi|psi>|^2. Terms with p < 1e-15
/// contribute zero (continuous limit).
double conditional_entropy(const Ket& psi, const OrthonormalBasis& basis_phi,
                           const LogBase& base);

/// -Tr[rho log rho] over the eigenvalues of a valid density operator,
/// with 0 log 0 = 0.
double von_neumann_entropy(const Operator& rho, const LogBase& base);

/// Partial trace over the slow (most significant) tensor factor:
/// rho_B[b1][b2] = sum_a rho[(a,b1)][(a,b2)].
Operator partial_trace_a(const Operator& rho_ab, int dim_a, int dim_b);

/// Conditional entropy of subsystem A given measurement of B,
/// S(AB) - S(B). Negative for entangled pure states.
double cerf_adami_conditional(const Operator& rho_ab, int dim_a, int dim_b,
                              const LogBase& base);

struct EntropyBounds {
  double reference_bound;        // -(1/(2d)) log_b d
  double uniform_overlap_bound;  // -(1/2) log_b d, attained at equal overlaps
};

/// Both candidate lower bounds for the averaged conditional entropy at
/// dimension d. The uniform-overlap bound is the one the entropy actually
/// attains; the reference bound is looser by a factor d and is reported for
/// comparison.
EntropyBounds entropy_bounds(int dim, const LogBase& base);

/// Result of a randomized scan for the minimum of the averaged conditional
/// entropy over post-selection bases.
struct BoundReport {
  int dim;
  double reference_bound;
  double uniform_overlap_bound;
  double min_found;
  OrthonormalBasis argmin_basis;
  long trials;
  std::uint64_t seed;
};

/// Evaluates the averaged conditional entropy over `trials` Haar-random
/// bases; with refine, polishes the best sample by a Nelder-Mead simplex
/// search over a product of two-plane rotations with phases (at most 500
/// iterations, spread tolerance 1e-10). Deterministic for a fixed seed.
BoundReport scan_min_entropy(const Ket& psi, long trials, std::uint64_t seed,
                             const LogBase& base, bool refine);

}  // namespace qpost
