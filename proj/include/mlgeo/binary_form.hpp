#pragma once

#include <vector>

#include "mlgeo/rational.hpp"

namespace mlgeo {

// Integer binary form of degree n in (p,u); coeff[i] multiplies p^(n-i)u^i.
// Carries ML bidegrees B_X and sectional ML degrees S_X.
struct BinaryForm {
  std::vector<Int> coeff;  // length degree()+1

  BinaryForm() = default;
  explicit BinaryForm(std::vector<Int> c) : coeff(std::move(c)) {}
  static BinaryForm fromLongs(const std::vector<long>& c);

  int degree() const { return static_cast<int>(coeff.size()) - 1; }

  bool operator==(const BinaryForm& o) const { return coeff == o.coeff; }

  // Leading = coefficient of the pure p power, trailing = last nonzero.
  Int leading() const;
  Int trailingNonzero() const;

  std::string str() const;
};

// B(p,u) = (u*S(p,u-p) - p*S(p,0)) / (u-p).  Exact integer division; a
// nonzero remainder means the input was not a sectional ML form and throws.
BinaryForm involutionBfromS(const BinaryForm& S);

// S(p,u) = (u*B(p,u+p) + p*B(p,0)) / (u+p).  Inverse of involutionBfromS.
BinaryForm involutionSfromB(const BinaryForm& B);

}  // namespace mlgeo
