#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace mlgeo {

// Exact arbitrary-precision rational scalar. Construction, matroid work and
// Horn formulas stay in Rat; conversion to complex<double> is explicit and
// one-way (tracking only).
using Rat = mpq_class;
using Int = mpz_class;
using cd = std::complex<double>;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat rat_of(long num, long den = 1) {
  if (den == 0) throw input_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "3", "-3", "3/4", "-3/4".
inline Rat rat_parse(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw input_error("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_double(const Rat& r) { return r.get_d(); }

inline cd rat_complex(const Rat& r) { return cd(r.get_d(), 0.0); }

}  // namespace mlgeo
