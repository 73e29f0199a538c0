#pragma once

#include <cstdint>
#include <random>

#include "mlgeo/rational.hpp"

namespace mlgeo {

// All randomness in the toolkit funnels through one of these, seeded
// explicitly. No ambient entropy anywhere: "generic data" claims must be
// replayable from the seed in the report.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  long intIn(long lo, long hi) {  // inclusive
    std::uniform_int_distribution<long> d(lo, hi);
    return d(gen_);
  }

  double realIn(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(gen_);
  }

  // Nonzero integer in [-bound,bound].
  long nonzeroInt(long bound) {
    long v = 0;
    while (v == 0) v = intIn(-bound, bound);
    return v;
  }

  Rat rational(long bound) { return rat_of(nonzeroInt(bound), intIn(1, bound)); }

  // Uniform point on the unit circle.
  cd unitComplex() {
    double t = realIn(0.0, 6.283185307179586);
    return cd(std::cos(t), std::sin(t));
  }

  // Complex number of modulus in [0.5, 1.5], generic angle.
  cd genericComplex() { return unitComplex() * realIn(0.5, 1.5); }

  Rng fork() { return Rng(gen_() ^ 0x9e3779b97f4a7c15ull); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace mlgeo
