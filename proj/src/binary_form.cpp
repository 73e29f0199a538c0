#include "mlgeo/binary_form.hpp"

#include <sstream>

namespace mlgeo {

BinaryForm BinaryForm::fromLongs(const std::vector<long>& c) {
  std::vector<Int> v;
  v.reserve(c.size());
  for (long x : c) v.emplace_back(x);
  return BinaryForm(std::move(v));
}

Int BinaryForm::leading() const { return coeff.empty() ? Int(0) : coeff.front(); }

Int BinaryForm::trailingNonzero() const {
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it)
    if (*it != 0) return *it;
  return Int(0);
}

std::string BinaryForm::str() const {
  std::ostringstream os;
  int n = degree();
  bool first = true;
  for (int i = 0; i <= n; ++i) {
    if (coeff[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << coeff[i].get_str();
    if (n - i > 0) os << "*p" << (n - i > 1 ? "^" + std::to_string(n - i) : "");
    if (i > 0) os << "*u" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// coeff[i] of p^(n-i)u^i, dehomogenized at p=1: polynomial in u with the same
// coefficient list. Shift u -> u+s (s = +-1) by binomial expansion.
std::vector<Int> shiftU(const std::vector<Int>& c, int s) {
  int n = static_cast<int>(c.size()) - 1;
  std::vector<Int> out(c.size(), Int(0));
  // Pascal row built incrementally: (u+s)^i
  std::vector<Int> pow{Int(1)};
  for (int i = 0; i <= n; ++i) {
    if (c[i] != 0)
      for (int j = 0; j <= i; ++j) out[j] += c[i] * pow[j];
    // multiply pow by (u+s)
    std::vector<Int> nxt(pow.size() + 1, Int(0));
    for (std::size_t j = 0; j < pow.size(); ++j) {
      nxt[j] += pow[j] * s;
      nxt[j + 1] += pow[j];
    }
    pow = std::move(nxt);
  }
  return out;
}

// Divide polynomial (ascending coeffs) by (u - r) with r = +-1; throws if the
// division leaves a remainder.
std::vector<Int> divideLinear(const std::vector<Int>& c, int r, const char* what) {
  int n = static_cast<int>(c.size()) - 1;
  std::vector<Int> q(n, Int(0));
  Int carry(0);
  for (int i = n; i >= 1; --i) {
    carry = c[i] + carry * r;
    q[i - 1] = carry;
  }
  Int rem = c[0] + carry * r;
  if (rem != 0) throw input_error(std::string("non-exact division in ") + what);
  return q;
}

}  // namespace

BinaryForm involutionBfromS(const BinaryForm& S) {
  int n = S.degree();
  if (n < 0) throw input_error("empty binary form");
  // u*S(1,u-1) - S(1,0), then divide by (u-1); result ascending in u has
  // degree n, and index i is the coefficient of p^(n-i)u^i again.
  std::vector<Int> g = shiftU(S.coeff, -1);
  std::vector<Int> num(n + 2, Int(0));
  for (int i = 0; i <= n; ++i) num[i + 1] = g[i];
  num[0] -= S.coeff[0];
  std::vector<Int> b = divideLinear(num, 1, "involutionBfromS");
  return BinaryForm(std::move(b));
}

BinaryForm involutionSfromB(const BinaryForm& B) {
  int n = B.degree();
  if (n < 0) throw input_error("empty binary form");
  std::vector<Int> g = shiftU(B.coeff, +1);
  std::vector<Int> num(n + 2, Int(0));
  for (int i = 0; i <= n; ++i) num[i + 1] = g[i];
  num[0] += B.coeff[0];
  std::vector<Int> s = divideLinear(num, -1, "involutionSfromB");
  return BinaryForm(std::move(s));
}

}  // namespace mlgeo
