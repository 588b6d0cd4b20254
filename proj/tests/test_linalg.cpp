#include <algorithm>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "qpost/linalg.hpp"
#include "qpost/rng.hpp"

using namespace qpost;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

Ket ket0() { return Ket({1.0, 0.0}); }
Ket ket1() { return Ket({0.0, 1.0}); }
Ket ket_plus() { return Ket::normalized({1.0, 1.0}); }

Operator hermitian_from_seed(int dim, std::uint64_t seed) {
  Rng rng(seed);
  Operator h(dim);
  for (int i = 0; i < dim; ++i) {
    h.at(i, i) = rng.normal();
    for (int j = i + 1; j < dim; ++j) {
      const cdouble z = rng.complex_normal();
      h.at(i, j) = z;
      h.at(j, i) = std::conj(z);
    }
  }
  return h;
}

}  // namespace

TEST_CASE("inner_product basics") {
  CHECK(std::abs(inner_product(ket0(), ket0()) - cdouble{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(inner_product(ket0(), ket_plus()) - cdouble{kInvSqrt2, 0.0}) < 1e-15);

  // three-box overlap: psi = (A+B+C)/sqrt(3), phi = (A+B-C)/sqrt(3)
  const Ket psi = Ket::normalized({kInvSqrt3, kInvSqrt3, kInvSqrt3});
  const Ket phi = Ket::normalized({kInvSqrt3, kInvSqrt3, -kInvSqrt3});
  CHECK(std::abs(inner_product(phi, psi) - cdouble{1.0 / 3.0, 0.0}) < 1e-15);
}

TEST_CASE("inner_product is conjugate-symmetric") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Ket a = random_ket(4, Rng::derive(11, s));
    const Ket b = random_ket(4, Rng::derive(13, s));
    const cdouble ab = inner_product(a, b);
    const cdouble ba = inner_product(b, a);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-14);
    CHECK(std::abs(ab) <= 1.0 + 1e-12);
  }
}

TEST_CASE("inner_product rejects mismatched dimensions") {
  CHECK_THROWS_AS(inner_product(ket0(), random_ket(3, 1)), DimensionError);
}

TEST_CASE("outer_product entries and trace") {
  const Operator p00 = outer_product(ket0(), ket0());
  CHECK(std::abs(p00.at(0, 0) - cdouble{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(p00.at(0, 1)) < 1e-15);
  CHECK(std::abs(p00.at(1, 0)) < 1e-15);
  CHECK(std::abs(p00.at(1, 1)) < 1e-15);

  const Operator zero_plus = outer_product(ket0(), ket_plus());
  CHECK(std::abs(zero_plus.at(0, 0) - cdouble{kInvSqrt2, 0.0}) < 1e-15);
  CHECK(std::abs(zero_plus.at(0, 1) - cdouble{kInvSqrt2, 0.0}) < 1e-15);
  CHECK(std::abs(zero_plus.at(1, 0)) < 1e-15);
  CHECK(std::abs(zero_plus.at(1, 1)) < 1e-15);
}

TEST_CASE("trace of outer product equals reversed inner product") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Ket a = random_ket(5, Rng::derive(21, s));
    const Ket b = random_ket(5, Rng::derive(23, s));
    CHECK(std::abs(trace(outer_product(a, b)) - inner_product(b, a)) < 1e-12);
  }
}

TEST_CASE("hermitian_eig on known matrices") {
  const EigResult id = hermitian_eig(Operator::identity(2));
  CHECK(id.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

  Operator diag(2);
  diag.at(0, 0) = 0.0;
  diag.at(1, 1) = 2.0;
  const EigResult d = hermitian_eig(diag);
  CHECK(d.eigenvalues[0] == doctest::Approx(0.0));
  CHECK(d.eigenvalues[1] == doctest::Approx(2.0));

  // rho rho^dagger for rho = sqrt(2) |0><+| is [[2, 0], [0, 0]]
  const Operator rho = cdouble{std::sqrt(2.0), 0.0} * outer_product(ket0(), ket_plus());
  const EigResult r = hermitian_eig(rho * adjoint(rho));
  CHECK(r.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig reconstructs the operator") {
  for (int dim : {2, 3, 5, 8}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Operator h = hermitian_from_seed(dim, Rng::derive(31, s * 10 + dim));
      const EigResult eig = hermitian_eig(h);
      Operator rebuilt(dim);
      for (int i = 0; i < dim; ++i) {
        rebuilt += cdouble{eig.eigenvalues[static_cast<std::size_t>(i)], 0.0} *
                   outer_product(eig.eigenvectors[i], eig.eigenvectors[i]);
      }
      CHECK(max_abs_diff(rebuilt, h) < 1e-9);
      CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
    }
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  Operator bad(2);
  bad.at(0, 1) = 1.0;  // missing conjugate partner
  CHECK_THROWS_AS(hermitian_eig(bad), NumericError);
}

TEST_CASE("log_on_support on known matrices") {
  const Operator zero = log_on_support(Operator::identity(4));
  CHECK(max_abs_diff(zero, Operator(4)) < 1e-12);

  Operator diag_e(2);
  diag_e.at(0, 0) = std::exp(1.0);
  const Operator log_e = log_on_support(diag_e);
  CHECK(std::abs(log_e.at(0, 0) - cdouble{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(log_e.at(1, 1)) < 1e-12);

  Operator two(2);
  two.at(0, 0) = 2.0;
  const Operator log_two = log_on_support(two);
  CHECK(std::abs(log_two.at(0, 0) - cdouble{std::log(2.0), 0.0}) < 1e-12);
  CHECK(std::abs(log_two.at(1, 1)) < 1e-12);
}

TEST_CASE("log_on_support round-trips an exponentiated diagonal") {
  Operator m(3);
  m.at(0, 0) = std::exp(0.5);
  m.at(1, 1) = std::exp(-1.25);
  m.at(2, 2) = std::exp(2.0);
  const Operator lg = log_on_support(m);
  CHECK(std::abs(lg.at(0, 0) - cdouble{0.5, 0.0}) < 1e-9);
  CHECK(std::abs(lg.at(1, 1) - cdouble{-1.25, 0.0}) < 1e-9);
  CHECK(std::abs(lg.at(2, 2) - cdouble{2.0, 0.0}) < 1e-9);
}

TEST_CASE("log_on_support rejects a genuinely negative eigenvalue") {
  Operator neg(2);
  neg.at(0, 0) = -0.5;
  neg.at(1, 1) = 1.0;
  CHECK_THROWS_AS(log_on_support(neg), NumericError);
}

TEST_CASE("singular_values on known matrices") {
  const std::vector<double> id3 = singular_values(Operator::identity(3));
  for (double s : id3) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));

  // two-state matrix for psi=|0>, phi=|+>: [[1, 1], [0, 0]], singular values (sqrt 2, 0)
  Operator ts(2);
  ts.at(0, 0) = 1.0;
  ts.at(0, 1) = 1.0;
  const std::vector<double> sv = singular_values(ts);
  CHECK(sv[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sv[1] == doctest::Approx(0.0));

  Operator herm(2);
  herm.at(0, 0) = -1.0;
  herm.at(1, 1) = 3.0;
  const std::vector<double> hv = singular_values(herm);
  CHECK(hv[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(hv[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("singular values match |eigenvalues| for Hermitian operators") {
  for (int dim : {2, 4, 8}) {
    for (std::uint64_t s = 0; s < 34; ++s) {
      const Operator h = hermitian_from_seed(dim, Rng::derive(41, s * 8 + dim));
      const EigResult eig = hermitian_eig(h);
      std::vector<double> abs_eigs;
      for (double lam : eig.eigenvalues) abs_eigs.push_back(std::abs(lam));
      std::sort(abs_eigs.rbegin(), abs_eigs.rend());
      const std::vector<double> sv = singular_values(h);
      for (std::size_t i = 0; i < sv.size(); ++i) {
        CHECK(std::abs(sv[i] - abs_eigs[i]) < 1e-9);
      }
    }
  }
}

TEST_CASE("random_orthonormal_basis is reproducible and orthonormal") {
  const OrthonormalBasis a = random_orthonormal_basis(2, 1);
  const OrthonormalBasis b = random_orthonormal_basis(2, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(a[i][j] == b[i][j]);  // bit-identical

  const OrthonormalBasis big = random_orthonormal_basis(4, 7);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      CHECK(std::abs(inner_product(big[i], big[j]) - cdouble{target, 0.0}) < 1e-9);
    }
  }

  CHECK_THROWS_AS(random_orthonormal_basis(1, 3), DimensionError);
}

TEST_CASE("Haar first-moment oracle at d=2") {
  // E |<e0|k0>|^2 = 1/d for Haar-distributed bases.
  const int draws = 100000;
  double acc = 0.0;
  for (int t = 0; t < draws; ++t) {
    const OrthonormalBasis basis = random_orthonormal_basis(2, Rng::derive(99, static_cast<std::uint64_t>(t)));
    acc += std::norm(basis[0][0]);
  }
  CHECK(acc / draws == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("Ket invariants") {
  CHECK_THROWS_AS(Ket({1.0}), DimensionError);
  CHECK_THROWS_AS(Ket({1.0, 1.0}), NumericError);        // unnormalized
  CHECK_THROWS_AS(Ket::normalized({0.0, 0.0}), NumericError);
}

TEST_CASE("OrthonormalBasis rejects non-orthonormal sets") {
  CHECK_THROWS_AS(OrthonormalBasis({ket0(), ket0()}), BasisError);
  CHECK_THROWS_AS(OrthonormalBasis({ket0(), ket_plus()}), BasisError);
  CHECK_NOTHROW(OrthonormalBasis({ket0(), ket1()}));
}
