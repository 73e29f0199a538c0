#include "doctest.h"

#include "mlgeo/binary_form.hpp"
#include "mlgeo/poly.hpp"
#include "mlgeo/rng.hpp"

using namespace mlgeo;

namespace {

QPoly randomPoly(Rng& rng, int nvars, int maxDeg, int nterms) {
  QPoly p(nvars);
  for (int t = 0; t < nterms; ++t) {
    std::vector<int> e(nvars);
    for (int i = 0; i < nvars; ++i) e[i] = static_cast<int>(rng.intIn(0, maxDeg));
    p.add_term(e, rat_of(rng.intIn(-9, 9)));
  }
  return p;
}

BinaryForm randomForm(Rng& rng, int deg) {
  std::vector<Int> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(rng.intIn(-50, 50));
  if (c[0] == 0) c[0] = 1;
  return BinaryForm(std::move(c));
}

}  // namespace

TEST_CASE("eval on fixed points") {
  QPoly hw = parsePoly("4*p0*p2 - p1^2", 3);
  CHECK(hw.eval({rat_of(1), rat_of(2), rat_of(1)}) == 0);

  QPoly s = parsePoly("p0 + p1 + p2", 3);
  CHECK(s.eval({rat_of(1), rat_of(1), rat_of(1)}) == 3);

  // det of generic 3x3 matrix as a polynomial in 9 vars, at the identity
  auto v = [](int i, int j) { return QPoly::variable(9, 3 * i + j); };
  QPoly det(9);
  int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}, {1, 0, 2}, {0, 2, 1}};
  for (int k = 0; k < 6; ++k) {
    QPoly t = v(0, perm[k][0]) * v(1, perm[k][1]) * v(2, perm[k][2]);
    det += (k < 3) ? t : -t;
  }
  std::vector<Rat> id(9, 0);
  id[0] = id[4] = id[8] = 1;
  CHECK(det.eval(id) == 1);

  CHECK_THROWS_AS(s.eval({rat_of(1)}), input_error);
}

TEST_CASE("diff basics") {
  QPoly hw = parsePoly("4*p0*p2 - p1^2", 3);
  CHECK(hw.diff(1) == parsePoly("-2*p1", 3));
  CHECK(parsePoly("p0*p1*p2", 3).diff(0) == parsePoly("p1*p2", 3));
  CHECK(QPoly::constant(3, rat_of(7)).diff(0).isZero());
}

TEST_CASE("ring axioms on random samples") {
  Rng rng(31);
  for (int it = 0; it < 40; ++it) {
    QPoly a = randomPoly(rng, 3, 3, 4);
    QPoly b = randomPoly(rng, 3, 3, 4);
    QPoly c = randomPoly(rng, 3, 3, 4);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("Leibniz rule on random pairs") {
  Rng rng(77);
  for (int it = 0; it < 25; ++it) {
    QPoly a = randomPoly(rng, 4, 3, 4);
    QPoly b = randomPoly(rng, 4, 3, 4);
    int v = static_cast<int>(rng.intIn(0, 3));
    CHECK((a * b).diff(v) == a.diff(v) * b + a * b.diff(v));
  }
}

TEST_CASE("poly text round trip") {
  Rng rng(5);
  for (int it = 0; it < 20; ++it) {
    QPoly a = randomPoly(rng, 4, 4, 5);
    CHECK(parsePoly(printPoly(a), 4) == a);
  }
  CHECK(parsePoly("3/4*p1^2 - p0*p2", 3) ==
        QPoly::variable(3, 1) * QPoly::variable(3, 1).scaled(rat_of(3, 4)) -
            QPoly::variable(3, 0) * QPoly::variable(3, 2));
}

TEST_CASE("involution maps paper pairs to each other") {
  struct Pair {
    std::vector<long> B, S;
  };
  // (B,S) catalog: Grassmannian of lines in 3-space, secant of the rational
  // normal quartic, symmetric 3x3 determinant, 3x3 determinant, toric
  // fourfold, generic 2-plane in P^4.
  std::vector<Pair> pairs = {
      {{4, 6, 6, 6, 2, 0}, {4, 20, 24, 12, 2, 0}},
      {{12, 15, 12, 3, 0}, {12, 30, 18, 3, 0}},
      {{6, 12, 15, 12, 3, 0}, {6, 42, 48, 21, 3, 0}},
      {{10, 24, 33, 38, 39, 33, 12, 3, 0}, {10, 182, 436, 518, 351, 138, 30, 3, 0}},
      {{3, 3, 3, 3, 3, 0}, {3, 12, 18, 12, 3, 0}},
      {{6, 3, 1, 0, 0}, {6, 4, 1, 0, 0}},
      // 5-dimensional toric cell of the 2x2x2 nonnegative-rank-2 model
      {{1, 2, 3, 3, 3, 3, 0, 0}, {1, 14, 30, 30, 15, 3, 0, 0}},
  };
  for (auto& [b, s] : pairs) {
    BinaryForm B = BinaryForm::fromLongs(b);
    BinaryForm S = BinaryForm::fromLongs(s);
    CHECK(involutionBfromS(S) == B);
    CHECK(involutionSfromB(B) == S);
  }
}

TEST_CASE("involution identity and inverse pair") {
  // degree-0 variety: a single point model
  for (int n = 1; n <= 6; ++n) {
    std::vector<Int> c(n + 1, Int(0));
    c[0] = 1;
    BinaryForm pn(c);
    CHECK(involutionBfromS(pn) == pn);
    CHECK(involutionSfromB(pn) == pn);
  }

  Rng rng(99);
  for (int it = 0; it < 100; ++it) {
    int deg = static_cast<int>(rng.intIn(1, 10));
    BinaryForm S = randomForm(rng, deg);
    CHECK(involutionSfromB(involutionBfromS(S)) == S);
    CHECK(involutionBfromS(involutionSfromB(S)) == S);
  }
}

TEST_CASE("malformed involution input is rejected") {
  BinaryForm empty;
  CHECK_THROWS_AS(involutionBfromS(empty), input_error);
  CHECK_THROWS_AS(involutionSfromB(empty), input_error);
}

TEST_CASE("homogeneity and restriction helpers") {
  QPoly hw = parsePoly("4*p0*p2 - p1^2", 3);
  CHECK(hw.isHomogeneous());
  CHECK(hw.totalDegree() == 2);
  CHECK(!parsePoly("p0^2 + p1", 2).isHomogeneous());
  CHECK(hw.restrictZero(0) == parsePoly("-p0^2", 2));
  CHECK(!hw.divisibleByVar(0));
  CHECK(parsePoly("p0*p1 + p0^2", 2).divisibleByVar(0));
}
