#include "qpost/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpost/rng.hpp"

namespace qpost {

namespace {

double norm_of(const std::vector<cdouble>& v) {
  double s = 0.0;
  for (const cdouble& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

Ket::Ket(std::vector<cdouble> components) : amps_(std::move(components)) {
  if (amps_.size() < 2) {
    throw DimensionError("Ket dimension must be at least 2");
  }
  const double n = norm_of(amps_);
  if (std::abs(n - 1.0) > kNormTol) {
    throw NumericError("Ket is not normalized: |norm - 1| = " +
                       std::to_string(std::abs(n - 1.0)));
  }
}

Ket Ket::normalized(std::vector<cdouble> components) {
  const double n = norm_of(components);
  if (n == 0.0) {
    throw NumericError("cannot normalize the zero vector");
  }
  for (cdouble& z : components) z /= n;
  return Ket(std::move(components));
}

Operator::Operator(int dim) : dim_(dim) {
  if (dim < 1) throw DimensionError("Operator dimension must be positive");
  entries_.assign(static_cast<std::size_t>(dim) * dim, cdouble{0.0, 0.0});
}

Operator::Operator(int dim, std::vector<cdouble> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim < 1) throw DimensionError("Operator dimension must be positive");
  if (entries_.size() != static_cast<std::size_t>(dim) * dim) {
    throw DimensionError("Operator entries must be a dim x dim table");
  }
}

Operator Operator::identity(int dim) {
  Operator id(dim);
  for (int i = 0; i < dim; ++i) id.at(i, i) = 1.0;
  return id;
}

Operator& Operator::operator+=(const Operator& other) {
  if (other.dim_ != dim_) throw DimensionError("operator dimension mismatch in +=");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

Operator& Operator::operator*=(cdouble scale) {
  for (cdouble& z : entries_) z *= scale;
  return *this;
}

Operator operator+(Operator lhs, const Operator& rhs) {
  lhs += rhs;
  return lhs;
}

Operator operator*(cdouble scale, Operator op) {
  op *= scale;
  return op;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  const int d = lhs.dim();
  if (rhs.dim() != d) throw DimensionError("operator dimension mismatch in *");
  Operator out(d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const cdouble lik = lhs.at(i, k);
      if (lik == cdouble{0.0, 0.0}) continue;
      for (int j = 0; j < d; ++j) {
        out.at(i, j) += lik * rhs.at(k, j);
      }
    }
  }
  return out;
}

Operator adjoint(const Operator& op) {
  const int d = op.dim();
  Operator out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.at(i, j) = std::conj(op.at(j, i));
  return out;
}

cdouble trace(const Operator& op) {
  cdouble t{0.0, 0.0};
  for (int i = 0; i < op.dim(); ++i) t += op.at(i, i);
  return t;
}

cdouble trace_product(const Operator& lhs, const Operator& rhs) {
  const int d = lhs.dim();
  if (rhs.dim() != d) throw DimensionError("operator dimension mismatch in trace_product");
  cdouble t{0.0, 0.0};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t += lhs.at(i, j) * rhs.at(j, i);
  return t;
}

std::vector<cdouble> apply(const Operator& op, const Ket& ket) {
  const int d = op.dim();
  if (ket.dim() != d) throw DimensionError("operator/ket dimension mismatch");
  std::vector<cdouble> out(static_cast<std::size_t>(d), cdouble{0.0, 0.0});
  for (int i = 0; i < d; ++i) {
    cdouble s{0.0, 0.0};
    for (int j = 0; j < d; ++j) s += op.at(i, j) * ket[j];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

double max_abs_diff(const Operator& lhs, const Operator& rhs) {
  const int d = lhs.dim();
  if (rhs.dim() != d) throw DimensionError("operator dimension mismatch in max_abs_diff");
  double m = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m = std::max(m, std::abs(lhs.at(i, j) - rhs.at(i, j)));
  return m;
}

double hermiticity_defect(const Operator& op) {
  const int d = op.dim();
  double m = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      m = std::max(m, std::abs(op.at(i, j) - std::conj(op.at(j, i))));
  return m;
}

OrthonormalBasis::OrthonormalBasis(std::vector<Ket> kets) : kets_(std::move(kets)) {
  const int d = static_cast<int>(kets_.size());
  if (d < 2) throw DimensionError("basis needs at least 2 kets");
  for (const Ket& k : kets_) {
    if (k.dim() != d) {
      throw BasisError("basis must contain exactly dim kets of that dimension");
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const cdouble g = inner_product(kets_[static_cast<std::size_t>(i)],
                                      kets_[static_cast<std::size_t>(j)]);
      const double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - target) > kNormTol) {
        throw BasisError("kets are not pairwise orthonormal: |<k" + std::to_string(i) +
                         "|k" + std::to_string(j) + "> - " + std::to_string(target) +
                         "| = " + std::to_string(std::abs(g - target)));
      }
    }
  }
}

cdouble inner_product(const Ket& bra, const Ket& ket) {
  if (bra.dim() != ket.dim()) throw DimensionError("ket dimension mismatch in inner_product");
  cdouble s{0.0, 0.0};
  for (int i = 0; i < bra.dim(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

cdouble inner_product(const Ket& bra, const std::vector<cdouble>& v) {
  if (static_cast<std::size_t>(bra.dim()) != v.size()) {
    throw DimensionError("ket dimension mismatch in inner_product");
  }
  cdouble s{0.0, 0.0};
  for (int i = 0; i < bra.dim(); ++i) s += std::conj(bra[i]) * v[static_cast<std::size_t>(i)];
  return s;
}

Operator outer_product(const Ket& ket, const Ket& bra) {
  if (bra.dim() != ket.dim()) throw DimensionError("ket dimension mismatch in outer_product");
  const int d = ket.dim();
  Operator out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.at(i, j) = ket[i] * std::conj(bra[j]);
  return out;
}

namespace {

// Canonical phase: rotate each column so its largest-magnitude component is
// real positive. Makes eigenvector output independent of rotation history.
void fix_column_phases(std::vector<std::vector<cdouble>>& columns) {
  for (auto& col : columns) {
    std::size_t imax = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < col.size(); ++i) {
      const double a = std::abs(col[i]);
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (best == 0.0) continue;
    const cdouble phase = std::conj(col[imax]) / best;
    for (cdouble& z : col) z *= phase;
  }
}

double off_diagonal_sq(const Operator& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a.at(i, j));
  return s;
}

}  // namespace

EigResult hermitian_eig(const Operator& op, double tol) {
  const int d = op.dim();
  if (d < 2) throw DimensionError("hermitian_eig needs dimension >= 2");
  const double defect = hermiticity_defect(op);
  if (defect > tol) {
    throw NumericError("hermitian_eig: input is not Hermitian (defect " +
                       std::to_string(defect) + " > tol " + std::to_string(tol) + ")");
  }

  Operator a = op;
  // Symmetrize exactly so rounding in the caller's entries cannot bias one
  // triangle over the other.
  for (int i = 0; i < d; ++i) {
    a.at(i, i) = cdouble{std::real(a.at(i, i)), 0.0};
    for (int j = i + 1; j < d; ++j) {
      const cdouble m = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
      a.at(i, j) = m;
      a.at(j, i) = std::conj(m);
    }
  }

  // Eigenvector accumulator, column major.
  std::vector<std::vector<cdouble>> v(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    v[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(d), cdouble{0.0, 0.0});
    v[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1.0;
  }

  double frob_sq = 0.0;
  for (const cdouble& z : a.entries()) frob_sq += std::norm(z);
  const double stop_sq = std::max(frob_sq * 1e-30, 1e-280);

  const int max_sweeps = 80;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_sq(a) <= stop_sq) break;
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const cdouble apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = std::real(a.at(p, p));
        const double aqq = std::real(a.at(q, q));
        if (r * r <= 1e-32 * (app * app + aqq * aqq + 1e-300)) continue;

        // Phase that makes the pivot real, then a real Jacobi rotation.
        const cdouble eib = apq / r;  // e^{i beta}
        const double tau = (app - aqq) / (2.0 * r);
        const double sign_tau = (tau >= 0.0) ? 1.0 : -1.0;
        const double t = -sign_tau / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Column update M <- M J with J[p][p]=c e^{ib}, J[p][q]=s e^{ib},
        // J[q][p]=-s, J[q][q]=c.
        for (int k = 0; k < d; ++k) {
          const cdouble mkp = a.at(k, p);
          const cdouble mkq = a.at(k, q);
          a.at(k, p) = c * eib * mkp - s * mkq;
          a.at(k, q) = s * eib * mkp + c * mkq;
        }
        // Row update M <- J^dagger M.
        for (int k = 0; k < d; ++k) {
          const cdouble mpk = a.at(p, k);
          const cdouble mqk = a.at(q, k);
          a.at(p, k) = c * std::conj(eib) * mpk - s * mqk;
          a.at(q, k) = s * std::conj(eib) * mpk + c * mqk;
        }
        a.at(p, q) = cdouble{0.0, 0.0};
        a.at(q, p) = cdouble{0.0, 0.0};
        a.at(p, p) = cdouble{std::real(a.at(p, p)), 0.0};
        a.at(q, q) = cdouble{std::real(a.at(q, q)), 0.0};

        // Accumulate the same column mix into the eigenvector matrix.
        auto& vp = v[static_cast<std::size_t>(p)];
        auto& vq = v[static_cast<std::size_t>(q)];
        for (int k = 0; k < d; ++k) {
          const cdouble wkp = vp[static_cast<std::size_t>(k)];
          const cdouble wkq = vq[static_cast<std::size_t>(k)];
          vp[static_cast<std::size_t>(k)] = c * eib * wkp - s * wkq;
          vq[static_cast<std::size_t>(k)] = s * eib * wkp + c * wkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&a](int lhs, int rhs) {
    return std::real(a.at(lhs, lhs)) < std::real(a.at(rhs, rhs));
  });

  std::vector<double> eigenvalues;
  eigenvalues.reserve(static_cast<std::size_t>(d));
  std::vector<std::vector<cdouble>> columns;
  columns.reserve(static_cast<std::size_t>(d));
  for (int idx : order) {
    eigenvalues.push_back(std::real(a.at(idx, idx)));
    columns.push_back(v[static_cast<std::size_t>(idx)]);
  }
  fix_column_phases(columns);

  std::vector<Ket> kets;
  kets.reserve(columns.size());
  for (auto& col : columns) kets.push_back(Ket::normalized(std::move(col)));
  return EigResult{std::move(eigenvalues), OrthonormalBasis(std::move(kets))};
}

Operator log_on_support(const Operator& psd, double rank_tol) {
  EigResult eig = hermitian_eig(psd, std::max(rank_tol, kNormTol));
  double lambda_max = 0.0;
  for (double lam : eig.eigenvalues) lambda_max = std::max(lambda_max, std::abs(lam));
  const double cut = rank_tol * std::max(1.0, lambda_max);

  Operator out(psd.dim());
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lam = eig.eigenvalues[i];
    if (lam < -cut) {
      throw NumericError("log_on_support: eigenvalue " + std::to_string(lam) +
                         " below -" + std::to_string(cut));
    }
    if (lam > cut) {
      const Ket& vec = eig.eigenvectors[static_cast<int>(i)];
      out += std::log(lam) * outer_product(vec, vec);
    }
  }
  return out;
}

std::vector<double> singular_values(const Operator& op) {
  // One-sided Jacobi: rotate column pairs until mutually orthogonal, then
  // read the singular values off as column norms. Unlike diagonalizing
  // op*op^dagger, this resolves tiny singular values down to eps * sigma_max
  // instead of sqrt(eps * lambda_max), which matters for rank checks.
  const int d = op.dim();
  std::vector<std::vector<cdouble>> cols(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    auto& col = cols[static_cast<std::size_t>(j)];
    col.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) col[static_cast<std::size_t>(i)] = op.at(i, j);
  }

  auto col_dot = [d](const std::vector<cdouble>& x, const std::vector<cdouble>& y) {
    cdouble s{0.0, 0.0};
    for (int i = 0; i < d; ++i)
      s += std::conj(x[static_cast<std::size_t>(i)]) * y[static_cast<std::size_t>(i)];
    return s;
  };

  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        auto& cp = cols[static_cast<std::size_t>(p)];
        auto& cq = cols[static_cast<std::size_t>(q)];
        const double app = col_dot(cp, cp).real();
        const double aqq = col_dot(cq, cq).real();
        const cdouble apq = col_dot(cp, cq);
        const double r = std::abs(apq);
        if (r <= 1e-16 * std::sqrt(std::max(app * aqq, 1e-300))) continue;
        rotated = true;

        const cdouble eib = apq / r;
        const double tau = (app - aqq) / (2.0 * r);
        const double sign_tau = (tau >= 0.0) ? 1.0 : -1.0;
        const double t = -sign_tau / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int i = 0; i < d; ++i) {
          const cdouble xp = cp[static_cast<std::size_t>(i)];
          const cdouble xq = cq[static_cast<std::size_t>(i)];
          cp[static_cast<std::size_t>(i)] = c * eib * xp - s * xq;
          cq[static_cast<std::size_t>(i)] = s * eib * xp + c * xq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv;
  sv.reserve(static_cast<std::size_t>(d));
  for (const auto& col : cols) sv.push_back(norm_of(col));
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

OrthonormalBasis random_orthonormal_basis(int dim, std::uint64_t seed) {
  if (dim < 2) throw DimensionError("random_orthonormal_basis needs dim >= 2");
  Rng rng(seed);

  // Modified Gram-Schmidt with one re-orthogonalization pass per column.
  // QR of a Ginibre matrix with positive R diagonal is exactly Haar.
  std::vector<std::vector<cdouble>> q;
  q.reserve(static_cast<std::size_t>(dim));
  while (static_cast<int>(q.size()) < dim) {
    std::vector<cdouble> col(static_cast<std::size_t>(dim));
    for (cdouble& z : col) z = rng.complex_normal();
    const double raw_norm = norm_of(col);

    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& prev : q) {
        cdouble proj{0.0, 0.0};
        for (int i = 0; i < dim; ++i)
          proj += std::conj(prev[static_cast<std::size_t>(i)]) * col[static_cast<std::size_t>(i)];
        for (int i = 0; i < dim; ++i)
          col[static_cast<std::size_t>(i)] -= proj * prev[static_cast<std::size_t>(i)];
      }
    }
    const double n = norm_of(col);
    if (n <= 1e-12 * std::max(raw_norm, 1.0)) continue;  // rank collapse; redraw
    for (cdouble& z : col) z /= n;
    q.push_back(std::move(col));
  }

  std::vector<Ket> kets;
  kets.reserve(q.size());
  for (auto& col : q) kets.push_back(Ket(std::move(col)));
  return OrthonormalBasis(std::move(kets));
}

Ket random_ket(int dim, std::uint64_t seed) {
  if (dim < 2) throw DimensionError("random_ket needs dim >= 2");
  Rng rng(seed);
  std::vector<cdouble> v(static_cast<std::size_t>(dim));
  for (cdouble& z : v) z = rng.complex_normal();
  return Ket::normalized(std::move(v));
}

}  // namespace qpost
