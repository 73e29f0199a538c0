#include "mlgeo/poly.hpp"

#include <cctype>
#include <sstream>

namespace mlgeo {

CPoly toComplex(const QPoly& p) {
  CPoly r(p.nvars());
  for (auto& [e, c] : p.terms()) r.add_term(e, rat_complex(c));
  return r;
}

namespace {

struct Lexer {
  const std::string& s;
  std::size_t i = 0;

  void skipWs() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skipWs();
    return i >= s.size();
  }
  char peek() {
    skipWs();
    return i < s.size() ? s[i] : '\0';
  }
  char take() {
    skipWs();
    return s[i++];
  }
};

long long parseInt(Lexer& lx) {
  lx.skipWs();
  std::size_t start = lx.i;
  while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) ++lx.i;
  if (lx.i == start) throw input_error("expected integer in polynomial at '" + lx.s.substr(start) + "'");
  return std::stoll(lx.s.substr(start, lx.i - start));
}

}  // namespace

QPoly parsePoly(const std::string& text, int nvars) {
  QPoly out(nvars);
  Lexer lx{text};
  bool first = true;
  while (!lx.done()) {
    Rat sign = 1;
    char c = lx.peek();
    if (c == '+' || c == '-') {
      lx.take();
      if (c == '-') sign = -1;
    } else if (!first) {
      throw input_error("expected '+' or '-' between terms");
    }
    first = false;

    Rat coef = sign;
    bool sawCoef = false;
    std::vector<int> exp(nvars, 0);
    bool sawVar = false;

    while (true) {
      char p = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(p))) {
        long long num = parseInt(lx);
        long long den = 1;
        if (lx.peek() == '/') {
          lx.take();
          den = parseInt(lx);
        }
        coef *= rat_of(num, den);
        sawCoef = true;
      } else if (p == 'p' || p == 'x' || p == 'u') {
        lx.take();
        long long idx = parseInt(lx);
        if (idx < 0 || idx >= nvars) throw input_error("variable index out of range in polynomial");
        int e = 1;
        if (lx.peek() == '^') {
          lx.take();
          e = static_cast<int>(parseInt(lx));
        }
        exp[static_cast<int>(idx)] += e;
        sawVar = true;
      } else if (p == '*') {
        lx.take();
        continue;
      } else {
        break;
      }
    }
    if (!sawCoef && !sawVar) throw input_error("empty term in polynomial");
    out.add_term(exp, coef);
  }
  return out;
}

std::string printPoly(const QPoly& p, const std::string& prefix) {
  if (p.isZero()) return "0";
  std::ostringstream os;
  // map's lex order over exponent vectors gives a canonical, stable layout
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;

    bool hasVar = false;
    for (int v : e)
      if (v > 0) hasVar = true;

    if (!hasVar || a != 1) os << rat_str(a);
    bool needStar = !hasVar || a != 1;
    for (int i = 0; i < p.nvars(); ++i) {
      if (e[i] == 0) continue;
      if (needStar) os << "*";
      needStar = true;
      os << prefix << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace mlgeo
