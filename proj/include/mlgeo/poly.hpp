#pragma once

#include <map>
#include <string>
#include <vector>

#include "mlgeo/rational.hpp"

namespace mlgeo {

// Sparse multivariate polynomial with dense per-term exponent vectors.
// Models here have at most ~16 variables, so a plain exponent vector beats
// any packed encoding. Invariant: no zero coefficients are stored and every
// exponent vector has length nvars.
template <typename C>
class Poly {
 public:
  using Exp = std::vector<int>;
  using TermMap = std::map<Exp, C>;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly zero(int nvars) { return Poly(nvars); }

  static Poly constant(int nvars, const C& c) {
    Poly p(nvars);
    p.add_term(Exp(nvars, 0), c);
    return p;
  }

  static Poly variable(int nvars, int i) {
    Poly p(nvars);
    Exp e(nvars, 0);
    e.at(i) = 1;
    p.add_term(e, C(1));
    return p;
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t termCount() const { return terms_.size(); }

  void add_term(const Exp& e, const C& c) {
    if (static_cast<int>(e.size()) != nvars_) throw input_error("exponent arity mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!(c == C(0))) terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == C(0)) terms_.erase(it);
    }
  }

  Poly operator-() const {
    Poly r(nvars_);
    for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    requireSameArity(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    requireSameArity(o);
    for (auto& [e, c] : o.terms_) add_term(e, C(0) - c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.requireSameArity(b);
    Poly r(a.nvars_);
    Exp e(a.nvars_);
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const C& c) const {
    Poly r(nvars_);
    if (c == C(0)) return r;
    for (auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
  }

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  // Formal partial derivative.
  Poly diff(int v) const {
    if (v < 0 || v >= nvars_) throw input_error("diff: variable index out of range");
    Poly r(nvars_);
    for (auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      Exp d = e;
      d[v] -= 1;
      r.add_term(d, c * C(e[v]));
    }
    return r;
  }

  // Plain term-by-term evaluation; exact whenever C is exact.
  C eval(const std::vector<C>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw input_error("eval: point arity mismatch");
    C acc(0);
    for (auto& [e, c] : terms_) {
      C t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      acc += t;
    }
    return acc;
  }

  int totalDegree() const {
    int d = -1;
    for (auto& [e, c] : terms_) {
      int s = 0;
      for (int v : e) s += v;
      if (s > d) d = s;
    }
    return d;  // -1 for the zero polynomial
  }

  bool isHomogeneous() const {
    int d = -2;
    for (auto& [e, c] : terms_) {
      int s = 0;
      for (int v : e) s += v;
      if (d == -2) d = s;
      else if (s != d) return false;
    }
    return true;
  }

  // Substitute variable v := 0 and drop it; remaining variables keep their
  // relative order. Used when slicing by a coordinate hyperplane.
  Poly restrictZero(int v) const {
    Poly r(nvars_ - 1);
    for (auto& [e, c] : terms_) {
      if (e[v] != 0) continue;
      Exp d;
      d.reserve(nvars_ - 1);
      for (int i = 0; i < nvars_; ++i)
        if (i != v) d.push_back(e[i]);
      r.add_term(d, c);
    }
    return r;
  }

  // Substitute variable v by a polynomial in the same ring.
  Poly substitute(int v, const Poly& g) const {
    Poly r(nvars_);
    for (auto& [e, c] : terms_) {
      Exp d = e;
      d[v] = 0;
      Poly t(nvars_);
      t.add_term(d, c);
      for (int k = 0; k < e[v]; ++k) t *= g;
      r += t;
    }
    return r;
  }

  // Append extra trailing variables (exponent 0 everywhere).
  Poly widened(int extra) const {
    Poly r(nvars_ + extra);
    for (auto& [e, c] : terms_) {
      Exp d = e;
      d.resize(nvars_ + extra, 0);
      r.terms_.emplace(d, c);
    }
    return r;
  }

  bool divisibleByVar(int v) const {
    if (terms_.empty()) return false;
    for (auto& [e, c] : terms_)
      if (e[v] == 0) return false;
    return true;
  }

 private:
  void requireSameArity(const Poly& o) const {
    if (nvars_ != o.nvars_) throw input_error("polynomial arity mismatch");
  }

  int nvars_;
  TermMap terms_;
};

using QPoly = Poly<Rat>;
using CPoly = Poly<cd>;

CPoly toComplex(const QPoly& p);

// Text form: sums of "c * p0^a0 * ... * pn^an" with rational c. Variable
// names are <prefix><index>; the parser accepts p, x and u prefixes.
QPoly parsePoly(const std::string& text, int nvars);
std::string printPoly(const QPoly& p, const std::string& prefix = "p");

}  // namespace mlgeo
