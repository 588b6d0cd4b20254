#include "qpost/pointer_sim.hpp"

#include <cmath>
#include <string>

#include "qpost/rng.hpp"

namespace qpost {

PointerModel::PointerModel(double g_, double sigma_) : g(g_), sigma(sigma_) {
  if (!(sigma > 0.0)) throw Error("pointer sigma must be positive");
  if (!std::isfinite(g) || !std::isfinite(sigma)) {
    throw Error("pointer parameters must be finite");
  }
}

PostSelectedPointer::PostSelectedPointer(cdouble alpha, cdouble beta, PointerModel model)
    : alpha_(alpha), beta_(beta), model_(model) {
  if (std::abs(alpha_ + beta_) < 1e-12) {
    throw OrthogonalityError("post-selected pointer has vanishing overlap alpha + beta");
  }
}

double PostSelectedPointer::gaussian_overlap() const {
  const double ratio = model_.g / model_.sigma;
  return std::exp(-ratio * ratio / 8.0);
}

double PostSelectedPointer::norm_const() const {
  return std::norm(alpha_) + std::norm(beta_) +
         2.0 * gaussian_overlap() * (std::conj(alpha_) * beta_).real();
}

PostSelectedPointer postselected_pointer(const Ket& psi, const Ket& phi, const Operator& pi,
                                         const PointerModel& model) {
  if (psi.dim() != phi.dim() || pi.dim() != psi.dim()) {
    throw DimensionError("postselected_pointer: dimension mismatch");
  }
  const double herm = hermiticity_defect(pi);
  if (herm > kNormTol) {
    throw NumericError("coupled operator is not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const double idem = max_abs_diff(pi * pi, pi);
  if (idem > kNormTol) {
    throw NumericError("coupled operator is not a projector (|pi^2 - pi| = " +
                       std::to_string(idem) + ")");
  }
  const cdouble overlap = inner_product(phi, psi);
  if (std::abs(overlap) < 1e-12) {
    throw OrthogonalityError("orthogonal pre/post-selection in pointer coupling");
  }
  const cdouble beta = inner_product(phi, apply(pi, psi));
  return PostSelectedPointer(overlap - beta, beta, model);
}

PointerMoments analytic_moments(const PostSelectedPointer& pp) {
  const double s = pp.gaussian_overlap();
  const double n = pp.norm_const();
  const cdouble cross = std::conj(pp.alpha()) * pp.beta();
  if (n <= 1e-15 * (std::norm(pp.alpha()) + std::norm(pp.beta()))) {
    throw NumericError("destructive interference annihilates the post-selected pointer");
  }
  const double g = pp.model().g;
  const double sigma = pp.model().sigma;
  PointerMoments m{};
  m.mean_q = g * (std::norm(pp.beta()) + s * cross.real()) / n;
  m.mean_p = g * s * cross.imag() / (2.0 * sigma * sigma * n);
  m.postselect_prob = n;
  return m;
}

namespace {

struct SampleStats {
  double mean;
  double stddev;
};

// Position density: |xi(q)|^2 / N is a signed three-Gaussian mixture with
// weights |a|^2 at 0, |b|^2 at g, and 2 s Re(conj(a) b) at g/2, all of
// spread sigma. Sampling uses the absolute-weight mixture as the envelope;
// when the cross weight is negative the acceptance ratio is density/envelope.
SampleStats sample_positions(const PostSelectedPointer& pp, long n, Rng& rng) {
  const double sigma = pp.model().sigma;
  const double g = pp.model().g;
  const double w0 = std::norm(pp.alpha());
  const double w1 = std::norm(pp.beta());
  const double wc = 2.0 * pp.gaussian_overlap() * (std::conj(pp.alpha()) * pp.beta()).real();
  const double centers[3] = {0.0, g, 0.5 * g};
  const double weights[3] = {w0, w1, std::abs(wc)};
  const double total = weights[0] + weights[1] + weights[2];
  const double inv_two_var = 1.0 / (2.0 * sigma * sigma);

  auto component = [&](double q, double center) {
    const double dq = q - center;
    return std::exp(-dq * dq * inv_two_var);
  };

  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < n; ++i) {
    double q = 0.0;
    for (;;) {
      double pick = rng.uniform() * total;
      int idx = 0;
      while (idx < 2 && pick >= weights[idx]) {
        pick -= weights[idx];
        ++idx;
      }
      q = centers[idx] + sigma * rng.normal();
      if (wc >= 0.0) break;
      const double density =
          w0 * component(q, centers[0]) + w1 * component(q, centers[1]) + wc * component(q, centers[2]);
      const double envelope = w0 * component(q, centers[0]) + w1 * component(q, centers[1]) +
                              std::abs(wc) * component(q, centers[2]);
      if (envelope <= 0.0) continue;
      if (rng.uniform() * envelope < std::max(density, 0.0)) break;
    }
    sum += q;
    sum_sq += q * q;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
  return SampleStats{mean, std::sqrt(var)};
}

// Momentum density: |xi~(p)|^2 / N = n_{sigma_p}(p) (W + 2 r cos(theta - p g)) / N
// with sigma_p = 1/(2 sigma), W = |a|^2 + |b|^2, and conj(a) b = r e^{i theta}.
// The cosine factor is bounded by W + 2r, which gives the envelope.
SampleStats sample_momenta(const PostSelectedPointer& pp, long n, Rng& rng) {
  const double sigma_p = 1.0 / (2.0 * pp.model().sigma);
  const double g = pp.model().g;
  const cdouble cross = std::conj(pp.alpha()) * pp.beta();
  const double w_flat = std::norm(pp.alpha()) + std::norm(pp.beta());
  const double r = std::abs(cross);
  const double theta = std::arg(cross);
  const double ceiling = w_flat + 2.0 * r;

  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < n; ++i) {
    double p = 0.0;
    for (;;) {
      p = sigma_p * rng.normal();
      const double density = w_flat + 2.0 * r * std::cos(theta - p * g);
      if (rng.uniform() * ceiling < density) break;
    }
    sum += p;
    sum_sq += p * p;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
  return SampleStats{mean, std::sqrt(var)};
}

}  // namespace

WeakMeasurementResult simulate_weak_measurement(const Ket& psi, const Ket& phi,
                                                const Operator& pi, const PointerModel& model,
                                                long n_samples, std::uint64_t seed) {
  if (n_samples < 100) throw Error("simulate_weak_measurement: need n_samples >= 100");
  if (model.g == 0.0) throw Error("simulate_weak_measurement: coupling g must be nonzero");
  const PostSelectedPointer pp = postselected_pointer(psi, phi, pi, model);
  // Moments are finite only when the post-selected state survives; this
  // also rejects pathological destructive interference up front.
  analytic_moments(pp);

  Rng rng(seed);
  const SampleStats q_stats = sample_positions(pp, n_samples, rng);
  const SampleStats p_stats = sample_momenta(pp, n_samples, rng);

  const double g = model.g;
  const double two_var = 2.0 * model.sigma * model.sigma;
  const double root_n = std::sqrt(static_cast<double>(n_samples));

  WeakMeasurementResult out{};
  out.re_estimate = q_stats.mean / g;
  out.re_stderr = q_stats.stddev / (std::abs(g) * root_n);
  out.im_estimate = p_stats.mean * two_var / g;
  out.im_stderr = p_stats.stddev * two_var / (std::abs(g) * root_n);
  out.samples = n_samples;
  out.g = g;
  out.exact_weak_value = pp.exact_weak_value();
  return out;
}

}  // namespace qpost
