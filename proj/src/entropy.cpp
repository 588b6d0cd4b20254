#include "qpost/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "qpost/postselect.hpp"
#include "qpost/rng.hpp"

namespace qpost {

namespace {

constexpr double kZeroProb = 1e-15;  // below this, p log p is taken as 0

EigResult density_operator_eig(const Operator& rho) {
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
  return eig;
}

}  // namespace

LogBase LogBase::base(double b) {
  if (!(b > 1.0)) throw Error("log base must exceed 1");
  return LogBase(std::log(b), false);
}

double LogBase::log(double x) const { return std::log(x) / ln_base_; }

double LogBase::value() const {
  return is_natural_ ? 2.718281828459045235 : std::exp(ln_base_);
}

double conditional_entropy_selected(const Ket& psi, const Ket& phi, const LogBase& base,
                                    double overlap_tol) {
  const TwoStateDensity tsd(psi, phi, overlap_tol);
  const Operator product = tsd.matrix() * adjoint(tsd.matrix());
  const Operator log_product = log_on_support(product, kRankTol);
  const cdouble tr = trace_product(tsd.matrix(), log_product);
  if (std::abs(tr.imag()) > kNormTol) {
    throw NumericError("conditional entropy trace has imaginary residue " +
                       std::to_string(tr.imag()));
  }
  return base.scale(-0.5 * tr.real());
}

double conditional_entropy_selected_closed(const Ket& psi, const Ket& phi,
                                           const LogBase& base, double overlap_tol) {
  if (psi.dim() != phi.dim()) throw DimensionError("pre/post-selection dimension mismatch");
  const double overlap = std::abs(inner_product(phi, psi));
  if (overlap <= overlap_tol) {
    throw OrthogonalityError("orthogonal pre/post-selection: |<phi|psi>| = " +
                             std::to_string(overlap));
  }
  return base.scale(std::log(overlap));
}

double conditional_entropy(const Ket& psi, const OrthonormalBasis& basis_phi,
                           const LogBase& base) {
  if (basis_phi.dim() != psi.dim()) {
    throw DimensionError("conditional_entropy: basis dimension mismatch");
  }
  double sum = 0.0;
  for (int k = 0; k < basis_phi.dim(); ++k) {
    const double p = std::norm(inner_product(basis_phi[k], psi));
    if (p < kZeroProb) continue;
    sum += 0.5 * p * std::log(p);  // p log sqrt(p)
  }
  return base.scale(sum);
}

double von_neumann_entropy(const Operator& rho, const LogBase& base) {
  const EigResult eig = density_operator_eig(rho);
  double sum = 0.0;
  for (double lam : eig.eigenvalues) {
    if (lam < kZeroProb) continue;
    sum -= lam * std::log(lam);
  }
  // Eigenvalues a hair above 1 can leave a residue like -1e-16; clip it.
  if (sum < 0.0 && sum > -kNormTol) sum = 0.0;
  return base.scale(sum);
}

Operator partial_trace_a(const Operator& rho_ab, int dim_a, int dim_b) {
  if (dim_a < 2 || dim_b < 2) {
    throw DimensionError("partial_trace_a: both factors must have dimension >= 2");
  }
  if (rho_ab.dim() != dim_a * dim_b) {
    throw DimensionError("partial_trace_a: operator dimension is not dim_a * dim_b");
  }
  Operator rho_b(dim_b);
  for (int a = 0; a < dim_a; ++a)
    for (int i = 0; i < dim_b; ++i)
      for (int j = 0; j < dim_b; ++j)
        rho_b.at(i, j) += rho_ab.at(a * dim_b + i, a * dim_b + j);
  return rho_b;
}

double cerf_adami_conditional(const Operator& rho_ab, int dim_a, int dim_b,
                              const LogBase& base) {
  const Operator rho_b = partial_trace_a(rho_ab, dim_a, dim_b);
  return von_neumann_entropy(rho_ab, base) - von_neumann_entropy(rho_b, base);
}

EntropyBounds entropy_bounds(int dim, const LogBase& base) {
  if (dim < 2) throw DimensionError("entropy_bounds: dim must be >= 2");
  const double log_d = base.log(static_cast<double>(dim));
  return EntropyBounds{-log_d / (2.0 * dim), -0.5 * log_d};
}

namespace {

// ----- refinement machinery ------------------------------------------------

// Basis parameterized as U0 * prod_{i<j} G_ij(theta, phase), where G_ij is a
// two-plane rotation with a relative phase. 2 * d(d-1)/2 real parameters.
struct GivensChart {
  const OrthonormalBasis* origin;
  int dim;

  int n_params() const { return dim * (dim - 1); }

  // Columns of U0 * V(params) as kets.
  std::vector<Ket> basis_at(const std::vector<double>& params) const {
    const int d = dim;
    // Start from V = identity, apply each rotation on the right.
    std::vector<std::vector<cdouble>> v(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      v[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(d), cdouble{0.0, 0.0});
      v[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1.0;
    }
    std::size_t idx = 0;
    for (int i = 0; i < d - 1; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const double theta = params[idx++];
        const double phase = params[idx++];
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const cdouble eip{std::cos(phase), std::sin(phase)};
        auto& vi = v[static_cast<std::size_t>(i)];
        auto& vj = v[static_cast<std::size_t>(j)];
        for (int k = 0; k < d; ++k) {
          const cdouble wi = vi[static_cast<std::size_t>(k)];
          const cdouble wj = vj[static_cast<std::size_t>(k)];
          vi[static_cast<std::size_t>(k)] = c * wi - s * std::conj(eip) * wj;
          vj[static_cast<std::size_t>(k)] = s * eip * wi + c * wj;
        }
      }
    }
    // Left-multiply by U0: column k of the result is sum_l V[l][k] * u0_l.
    std::vector<Ket> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      std::vector<cdouble> col(static_cast<std::size_t>(d), cdouble{0.0, 0.0});
      for (int l = 0; l < d; ++l) {
        const cdouble w = v[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
        const Ket& u0l = (*origin)[l];
        for (int r = 0; r < d; ++r) col[static_cast<std::size_t>(r)] += w * u0l[r];
      }
      out.push_back(Ket::normalized(std::move(col)));
    }
    return out;
  }
};

// Averaged conditional entropy of psi against the chart basis, natural log.
double objective_at(const Ket& psi, const GivensChart& chart,
                    const std::vector<double>& params) {
  const std::vector<Ket> basis = chart.basis_at(params);
  double sum = 0.0;
  for (const Ket& b : basis) {
    const double p = std::norm(inner_product(b, psi));
    if (p < kZeroProb) continue;
    sum += 0.5 * p * std::log(p);
  }
  return sum;
}

// Nelder-Mead with shrink restarts: when the simplex spread drops below the
// tolerance, rebuild it around the incumbent with a smaller step and keep
// going until the iteration budget is spent.
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
    double initial_step, int max_iterations, double tol) {
  const std::size_t n = x0.size();
  struct Point {
    std::vector<double> x;
    double f;
  };
  std::vector<Point> simplex;

  auto build_simplex = [&](const std::vector<double>& center, double step) {
    simplex.clear();
    simplex.push_back({center, f(center)});
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> x = center;
      x[i] += step;
      simplex.push_back({x, f(x)});
    }
  };

  build_simplex(x0, initial_step);
  double step = initial_step;

  for (int iter = 0; iter < max_iterations; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Point& a, const Point& b) { return a.f < b.f; });
    if (simplex.back().f - simplex.front().f < tol) {
      step *= 0.2;
      if (step < 1e-9) break;
      build_simplex(simplex.front().x, step);
      continue;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k + 1 < simplex.size(); ++k) centroid[i] += simplex[k].x[i];
      centroid[i] /= static_cast<double>(n);
    }
    const Point& worst = simplex.back();

    auto along = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + coeff * (worst.x[i] - centroid[i]);
      return x;
    };

    std::vector<double> xr = along(-1.0);
    const double fr = f(xr);
    if (fr < simplex.front().f) {
      std::vector<double> xe = along(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        simplex.back() = {std::move(xe), fe};
      } else {
        simplex.back() = {std::move(xr), fr};
      }
    } else if (fr < simplex[simplex.size() - 2].f) {
      simplex.back() = {std::move(xr), fr};
    } else {
      const bool outside = fr < worst.f;
      std::vector<double> xc = along(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, worst.f)) {
        simplex.back() = {std::move(xc), fc};
      } else {
        // Shrink toward the best vertex.
        for (std::size_t k = 1; k < simplex.size(); ++k) {
          for (std::size_t i = 0; i < n; ++i) {
            simplex[k].x[i] = 0.5 * (simplex[k].x[i] + simplex.front().x[i]);
          }
          simplex[k].f = f(simplex[k].x);
        }
      }
    }
  }

  std::sort(simplex.begin(), simplex.end(),
            [](const Point& a, const Point& b) { return a.f < b.f; });
  return {simplex.front().x, simplex.front().f};
}

}  // namespace

BoundReport scan_min_entropy(const Ket& psi, long trials, std::uint64_t seed,
                             const LogBase& base, bool refine) {
  if (trials < 1) throw Error("scan_min_entropy: trials must be >= 1");
  const int d = psi.dim();
  const EntropyBounds bounds = entropy_bounds(d, base);

  OrthonormalBasis argmin = random_orthonormal_basis(d, Rng::derive(seed, 0));
  double min_natural = conditional_entropy(psi, argmin, LogBase::natural());
  for (long t = 1; t < trials; ++t) {
    OrthonormalBasis basis =
        random_orthonormal_basis(d, Rng::derive(seed, static_cast<std::uint64_t>(t)));
    const double s = conditional_entropy(psi, basis, LogBase::natural());
    if (s < min_natural) {
      min_natural = s;
      argmin = std::move(basis);
    }
  }

  if (refine) {
    GivensChart chart{&argmin, d};
    std::vector<double> params(static_cast<std::size_t>(chart.n_params()), 0.0);
    auto objective = [&](const std::vector<double>& x) { return objective_at(psi, chart, x); };
    auto [best_params, best_value] = nelder_mead(objective, std::move(params), 0.15, 500, 1e-10);
    if (best_value < min_natural) {
      min_natural = best_value;
      argmin = OrthonormalBasis(chart.basis_at(best_params));
    }
  }

  double min_found = base.scale(min_natural);
  if (min_found > 0.0 && min_found < kRankTol) min_found = 0.0;  // rounding residue
  if (min_found < bounds.uniform_overlap_bound - kNormTol || min_found > 0.0) {
    throw NumericError("scan produced an entropy outside its proven range: " +
                       std::to_string(min_found));
  }
  return BoundReport{d,      bounds.reference_bound, bounds.uniform_overlap_bound,
                     min_found, std::move(argmin),   trials,
                     seed};
}

}  // namespace qpost
