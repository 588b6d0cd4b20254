#pragma once

#include <cmath>
#include <cstdint>

#include "qpost/linalg.hpp"

namespace qpost {

/// Gaussian pointer parameters: position spread sigma and coupling
/// strength g, both in pointer units. The coupling is weak when
/// g/sigma <= 0.1.
struct PointerModel {
  double g;
  double sigma;

  PointerModel(double g_, double sigma_);

  double weak_ratio() const { return std::abs(g) / sigma; }
  bool weak_regime() const { return weak_ratio() <= 0.1; }
};

/// Post-selected pointer wavefunction of an impulsive projector coupling,
/// xi(q) = alpha G(q) + beta G(q - g) with G a normalized Gaussian of
/// spread sigma. alpha = <phi|(1-P)|psi>, beta = <phi|P|psi>, so
/// alpha + beta = <phi|psi> and the weak value of P is beta/(alpha+beta).
class PostSelectedPointer {
 public:
  PostSelectedPointer(cdouble alpha, cdouble beta, PointerModel model);

  cdouble alpha() const { return alpha_; }
  cdouble beta() const { return beta_; }
  const PointerModel& model() const { return model_; }

  cdouble overlap() const { return alpha_ + beta_; }
  cdouble exact_weak_value() const { return beta_ / (alpha_ + beta_); }

  /// Overlap of the displaced and undisplaced Gaussians, exp(-g^2/(8 sigma^2)).
  double gaussian_overlap() const;
  /// Squared norm of xi; the probability that the post-selection succeeds.
  double norm_const() const;

 private:
  cdouble alpha_;
  cdouble beta_;
  PointerModel model_;
};

/// Couples the projector pi to the pointer and post-selects phi. pi must
/// be a projector (Hermitian, pi^2 = pi within kNormTol); <phi|psi> must
/// not vanish.
PostSelectedPointer postselected_pointer(const Ket& psi, const Ket& phi, const Operator& pi,
                                         const PointerModel& model);

/// Exact first moments of the post-selected pointer.
///
/// With s = exp(-g^2/(8 sigma^2)) and N = |a|^2 + |b|^2 + 2 s Re(conj(a) b):
///   mean_q = g (|b|^2 + s Re(conj(a) b)) / N
///   mean_p = g s Im(conj(a) b) / (2 sigma^2 N)
/// As g -> 0, mean_q/g -> Re(P_w) and mean_p 2 sigma^2 / g -> Im(P_w).
struct PointerMoments {
  double mean_q;
  double mean_p;
  double postselect_prob;  // N, the post-selection success probability
};

PointerMoments analytic_moments(const PostSelectedPointer& pp);

/// Monte Carlo weak-value estimate from sampled pointer readouts.
struct WeakMeasurementResult {
  double re_estimate;
  double im_estimate;
  double re_stderr;
  double im_stderr;
  long samples;
  double g;
  cdouble exact_weak_value;
};

/// Draws n_samples pointer positions from |xi|^2 and n_samples momenta from
/// the squared Fourier transform (separate runs), then estimates
/// Re(P_w) = mean_q/g and Im(P_w) = mean_p 2 sigma^2 / g. Deterministic for
/// a fixed seed. Requires n_samples >= 100 and g != 0.
WeakMeasurementResult simulate_weak_measurement(const Ket& psi, const Ket& phi,
                                                const Operator& pi, const PointerModel& model,
                                                long n_samples, std::uint64_t seed);

}  // namespace qpost
