#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mlgeo/binary_form.hpp"
#include "mlgeo/tracker.hpp"

namespace mlgeo {

// Exact rational linear algebra used across the combinatorial side.
int rationalRank(std::vector<std::vector<Rat>> M);
std::vector<std::vector<Rat>> rationalKernel(const std::vector<std::vector<Rat>>& M);
bool inRowSpace(const std::vector<std::vector<Rat>>& M, const std::vector<Rat>& v);

// Linear model X in P^n spanned by the rows of a (d+1) x (n+1) matrix.
struct LinearModel {
  std::vector<std::vector<Rat>> basis;

  int n() const { return static_cast<int>(basis.at(0).size()) - 1; }
  int dim() const { return static_cast<int>(basis.size()) - 1; }
  void validate() const;  // full row rank, ones vector not in the row space
};

// Matroid of n+2 vectors with an exact rank oracle (rational elimination,
// memoized on subsets). Ground size is capped at 20 bits of mask.
class Matroid {
 public:
  explicit Matroid(std::vector<std::vector<Rat>> vectors);

  int groundSize() const { return static_cast<int>(vectors_.size()); }
  int rank() const { return rankOf((1u << groundSize()) - 1); }
  int rankOf(std::uint32_t subset) const;
  bool isLoop(int e) const { return rankOf(1u << e) == 0; }
  bool hasLoops() const;

  // All circuits (minimal dependent subsets) as bitmasks.
  std::vector<std::uint32_t> circuits() const;

 private:
  std::vector<std::vector<Rat>> vectors_;
  mutable std::unordered_map<std::uint32_t, int> rankMemo_;
};

struct CharPoly {
  std::vector<Int> coeff;  // ascending in q: coeff[i] * q^i
  bool operator==(const CharPoly& o) const { return coeff == o.coeff; }
  Int eval(long q) const;
  std::string str() const;
};

struct HVector {
  std::vector<Int> h;  // h_0..h_d
  bool operator==(const HVector& o) const { return h == o.h; }
};

// Matroid of the n+2 restricted hyperplane normals: the n+1 coordinates and
// their sum, all restricted to X.
Matroid arrangementMatroid(const LinearModel& model);

// Deletion-contraction with memoization on (ground set, contraction flat).
CharPoly characteristicPolynomial(const Matroid& M);

// Brute-force Whitney-sum oracle, kept independent of the recursion above.
CharPoly charPolyWhitneyOracle(const Matroid& M);

struct FHVectors {
  std::vector<Int> f;  // f_{-1}..f_{rank-1} (face counts by cardinality)
  HVector h;
};

// Enumerate the broken circuit complex for the given ground ordering and
// convert f -> h through the Hilbert-series substitution.
FHVectors brokenCircuitHVector(const Matroid& M, const std::vector<int>& ordering);

// B_X(p,u) = (h_0 u^d + h_1 p u^(d-1) + ... + h_d p^d) * p^(n-d).
BinaryForm linearMlBidegree(const LinearModel& model);

// All critical points of the likelihood on a linear model via the rank
// condition u in p * (Xperp + 1), tracked numerically.
SolutionSet mleLinear(const LinearModel& model, const DataVector& u, const TrackerConfig& cfg,
                      std::uint64_t seed = 271828);

CriticalSystem buildLinearRankConditionSystem(const LinearModel& model, const DataVector& u,
                                              Rng& rng);

}  // namespace mlgeo
