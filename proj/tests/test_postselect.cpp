#include <cmath>
#include <complex>

#include "doctest.h"
#include "qpost/postselect.hpp"
#include "qpost/rng.hpp"
#include "qpost/three_box.hpp"

using namespace qpost;

namespace {

Ket ket0() { return Ket({1.0, 0.0}); }
Ket ket_plus() { return Ket::normalized({1.0, 1.0}); }

OrthonormalBasis circular() {
  return OrthonormalBasis({Ket::normalized({cdouble{1.0, 0.0}, cdouble{0.0, 1.0}}),
                           Ket::normalized({cdouble{1.0, 0.0}, cdouble{0.0, -1.0}})});
}

}  // namespace

TEST_CASE("two_state_density with equal states is the pure density operator") {
  const TwoStateDensity tsd(ket0(), ket0());
  CHECK(max_abs_diff(tsd.matrix(), outer_product(ket0(), ket0())) < 1e-15);
  CHECK(std::abs(trace(tsd.matrix()) - cdouble{1.0, 0.0}) < 1e-12);
}

TEST_CASE("two_state_density of |0> and |+> is [[1,1],[0,0]]") {
  const TwoStateDensity tsd(ket0(), ket_plus());
  CHECK(std::abs(tsd.matrix().at(0, 0) - cdouble{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(tsd.matrix().at(0, 1) - cdouble{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(tsd.matrix().at(1, 0)) < 1e-15);
  CHECK(std::abs(tsd.matrix().at(1, 1)) < 1e-15);
}

TEST_CASE("three-box two-state density has trace one and overlap 1/3") {
  const TwoStateDensity tsd(three_box::psi(), three_box::phi());
  CHECK(std::abs(trace(tsd.matrix()) - cdouble{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(tsd.overlap() - cdouble{1.0 / 3.0, 0.0}) < 1e-15);
}

TEST_CASE("two-state densities are trace one and rank one") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const int dim = 2 + static_cast<int>(s % 5);
    const Ket psi = random_ket(dim, Rng::derive(401, s));
    const Ket phi = random_ket(dim, Rng::derive(403, s));
    if (std::abs(inner_product(phi, psi)) <= kOverlapTol) continue;
    const TwoStateDensity tsd(psi, phi);
    CHECK(std::abs(trace(tsd.matrix()) - cdouble{1.0, 0.0}) < 1e-9);
    const std::vector<double> sv = singular_values(tsd.matrix());
    CHECK(sv[1] < 1e-9);  // second singular value vanishes
  }
}

TEST_CASE("two_state_density rejects orthogonal selections") {
  CHECK_THROWS_AS(TwoStateDensity(ket0(), Ket({0.0, 1.0})), OrthogonalityError);
}

TEST_CASE("decomposition route agrees with the direct construction") {
  // three-box states over the box basis
  const TwoStateDensity via_decomp = two_state_from_decomposition(
      three_box::psi(), three_box::phi(), three_box::box_basis());
  const TwoStateDensity direct(three_box::psi(), three_box::phi());
  CHECK(max_abs_diff(via_decomp.matrix(), direct.matrix()) < 1e-10);

  // d=2 case over the circular basis
  const TwoStateDensity qubit = two_state_from_decomposition(ket0(), ket_plus(), circular());
  CHECK(std::abs(qubit.matrix().at(0, 0) - cdouble{1.0, 0.0}) < 1e-10);
  CHECK(std::abs(qubit.matrix().at(0, 1) - cdouble{1.0, 0.0}) < 1e-10);
  CHECK(std::abs(qubit.matrix().at(1, 0)) < 1e-10);
}

TEST_CASE("decomposition route equals direct route on random instances") {
  int tested = 0;
  std::uint64_t s = 0;
  while (tested < 100) {
    ++s;
    const int dim = 2 + static_cast<int>(s % 5);
    const Ket psi = random_ket(dim, Rng::derive(501, s));
    const Ket phi = random_ket(dim, Rng::derive(503, s));
    const OrthonormalBasis h = random_orthonormal_basis(dim, Rng::derive(505, s));
    if (std::abs(inner_product(phi, psi)) <= 1e-3) continue;
    bool skip = false;
    for (int k = 0; k < dim; ++k) {
      if (std::abs(inner_product(phi, h[k])) <= 1e-3) skip = true;
    }
    if (skip) continue;

    const TwoStateDensity via_decomp = two_state_from_decomposition(psi, phi, h);
    const TwoStateDensity direct(psi, phi);
    CHECK(max_abs_diff(via_decomp.matrix(), direct.matrix()) < 1e-10);
    ++tested;
  }
}

TEST_CASE("decomposition route rejects a basis ket orthogonal to phi") {
  // phi = |0>, basis = computational: <phi|1> = 0
  const OrthonormalBasis comp({Ket({1.0, 0.0}), Ket({0.0, 1.0})});
  CHECK_THROWS_AS(two_state_from_decomposition(ket_plus(), ket0(), comp),
                  OrthogonalityError);
}

TEST_CASE("three-box weak values are (1, 1, -1)") {
  const TwoStateDensity tsd(three_box::psi(), three_box::phi());
  const cdouble a = weak_value(tsd, three_box::box_projector(0));
  const cdouble b = weak_value(tsd, three_box::box_projector(1));
  const cdouble c = weak_value(tsd, three_box::box_projector(2));
  CHECK(std::abs(a - cdouble{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(b - cdouble{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(c - cdouble{-1.0, 0.0}) < 1e-12);
}

TEST_CASE("weak value without post-selection is the expectation value") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Ket psi = random_ket(3, Rng::derive(601, s));
    const OrthonormalBasis h = random_orthonormal_basis(3, Rng::derive(603, s));
    const TwoStateDensity tsd(psi, psi);
    for (int k = 0; k < 3; ++k) {
      const cdouble wv = weak_value(tsd, outer_product(h[k], h[k]));
      CHECK(std::abs(wv.imag()) < 1e-12);
      CHECK(wv.real() >= -1e-12);
      CHECK(wv.real() <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("weak value of the identity is exactly one") {
  const TwoStateDensity tsd(three_box::psi(), three_box::phi());
  const cdouble wv = weak_value(tsd, Operator::identity(3));
  CHECK(std::abs(wv - cdouble{1.0, 0.0}) < 1e-14);
}

TEST_CASE("weak values agree between bra-ket and trace routes") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const int dim = 2 + static_cast<int>(s % 4);
    const Ket psi = random_ket(dim, Rng::derive(701, s));
    const Ket phi = random_ket(dim, Rng::derive(703, s));
    if (std::abs(inner_product(phi, psi)) <= 1e-3) continue;
    const TwoStateDensity tsd(psi, phi);
    const OrthonormalBasis h = random_orthonormal_basis(dim, Rng::derive(705, s));
    for (int k = 0; k < dim; ++k) {
      const Operator pi = outer_product(h[k], h[k]);
      const cdouble bra_ket = weak_value(tsd, pi);
      const cdouble trace_form = trace_product(tsd.matrix(), pi);
      CHECK(std::abs(bra_ket - trace_form) < 1e-11);
    }
  }
}

TEST_CASE("weak values of a complete projector set sum to one") {
  // three-box instance: 1 + 1 - 1 = 1
  const TwoStateDensity tsd3(three_box::psi(), three_box::phi());
  cdouble total3{0.0, 0.0};
  for (int k = 0; k < 3; ++k) total3 += weak_value(tsd3, three_box::box_projector(k));
  CHECK(std::abs(total3 - cdouble{1.0, 0.0}) < 1e-12);

  for (std::uint64_t s = 0; s < 100; ++s) {
    const int dim = 2 + static_cast<int>(s % 5);
    const Ket psi = random_ket(dim, Rng::derive(801, s));
    const Ket phi = random_ket(dim, Rng::derive(803, s));
    if (std::abs(inner_product(phi, psi)) <= kOverlapTol) continue;
    const TwoStateDensity tsd(psi, phi);
    const OrthonormalBasis h = random_orthonormal_basis(dim, Rng::derive(805, s));
    cdouble total{0.0, 0.0};
    for (int k = 0; k < dim; ++k) total += weak_value(tsd, outer_product(h[k], h[k]));
    CHECK(std::abs(total - cdouble{1.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("weak_value is linear in the operator") {
  Rng rng(909);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Ket psi = random_ket(3, Rng::derive(901, s));
    const Ket phi = random_ket(3, Rng::derive(903, s));
    if (std::abs(inner_product(phi, psi)) <= 1e-3) continue;
    const TwoStateDensity tsd(psi, phi);
    const OrthonormalBasis h = random_orthonormal_basis(3, Rng::derive(905, s));
    const Operator p0 = outer_product(h[0], h[0]);
    const Operator p1 = outer_product(h[1], h[1]);
    const cdouble c0{rng.normal(), rng.normal()};
    const cdouble c1{rng.normal(), rng.normal()};
    const Operator combo = c0 * p0 + c1 * p1;
    const cdouble lhs = weak_value(tsd, combo);
    const cdouble rhs = c0 * weak_value(tsd, p0) + c1 * weak_value(tsd, p1);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("postselection probabilities of the three-box states") {
  CHECK(postselection_probability(three_box::psi(), three_box::phi()) ==
        doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(postselection_probability(three_box::psi(), three_box::phi_double_prime()) ==
        doctest::Approx(0.8293).epsilon(1e-3));
  const Ket psi = random_ket(4, 2);
  CHECK(postselection_probability(psi, psi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mixture over the three-box post-selection basis rebuilds |psi><psi|") {
  const Operator rho = mixture_reconstruct(three_box::psi(), three_box::postselection_basis());
  const Operator expected = outer_product(three_box::psi(), three_box::psi());
  CHECK(max_abs_diff(rho, expected) < 1e-10);
}

TEST_CASE("mixture with a basis containing psi keeps only that term") {
  const OrthonormalBasis comp({Ket({1.0, 0.0}), Ket({0.0, 1.0})});
  const Operator rho = mixture_reconstruct(ket0(), comp);
  CHECK(max_abs_diff(rho, outer_product(ket0(), ket0())) < 1e-12);
}

TEST_CASE("mixture identity holds on random instances") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int dim = 2 + static_cast<int>(s % 4);
    const Ket psi = random_ket(dim, Rng::derive(1001, s));
    const OrthonormalBasis basis = random_orthonormal_basis(dim, Rng::derive(1003, s));
    const Operator rho = mixture_reconstruct(psi, basis);
    CHECK(max_abs_diff(rho, outer_product(psi, psi)) < 1e-10);
  }
}

TEST_CASE("weak_value rejects mismatched dimensions") {
  const TwoStateDensity tsd(ket0(), ket_plus());
  CHECK_THROWS_AS(weak_value(tsd, Operator::identity(3)), DimensionError);
}
