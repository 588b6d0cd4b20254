#include "qpost/three_box.hpp"

#include <cmath>

namespace qpost::three_box {

namespace {
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

Ket psi() { return Ket::normalized({kInvSqrt3, kInvSqrt3, kInvSqrt3}); }

Ket phi() { return Ket::normalized({kInvSqrt3, kInvSqrt3, -kInvSqrt3}); }

Ket phi_prime() {
  return Ket::normalized({kInvSqrt3, (-3.0 - kSqrt3) / 6.0, (-3.0 + kSqrt3) / 6.0});
}

Ket phi_double_prime() {
  return Ket::normalized({kInvSqrt3, (3.0 - kSqrt3) / 6.0, (3.0 + kSqrt3) / 6.0});
}

OrthonormalBasis box_basis() {
  return OrthonormalBasis({Ket({1.0, 0.0, 0.0}), Ket({0.0, 1.0, 0.0}), Ket({0.0, 0.0, 1.0})});
}

OrthonormalBasis postselection_basis() {
  return OrthonormalBasis({phi(), phi_prime(), phi_double_prime()});
}

Operator box_projector(int box) {
  if (box < 0 || box > 2) throw DimensionError("box index must be 0, 1, or 2");
  Operator p(3);
  p.at(box, box) = 1.0;
  return p;
}

}  // namespace qpost::three_box
