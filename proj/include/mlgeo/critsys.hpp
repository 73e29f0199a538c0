#pragma once

#include <string>
#include <vector>

#include "mlgeo/poly.hpp"
#include "mlgeo/rng.hpp"

namespace mlgeo {

// A model X in P^n given by homogeneous generators.
struct VarietySpec {
  int n = 0;      // ambient projective dimension
  int codim = 0;  // claimed codimension
  std::vector<QPoly> generators;  // each in n+1 variables p_0..p_n
  enum class SingularPolicy { FilterBySpecJacobian, None };
  SingularPolicy singularPolicy = SingularPolicy::FilterBySpecJacobian;

  int dim() const { return n - codim; }
  void validate() const;
  // Input-boundary checks: additionally rejects generators divisible by a
  // coordinate or by the coordinate sum (the model would sit inside H).
  void validateStrict() const;
};

// Data vector u_0..u_n, typically positive integers.
struct DataVector {
  std::vector<Rat> u;

  int n() const { return static_cast<int>(u.size()) - 1; }
  Rat sum() const;
  // Generic data: integers uniform in [lo, hi], seeded.
  static DataVector genericInts(Rng& rng, int n, long lo = 1000, long hi = 1000000);
  static DataVector zeros(int n) { return DataVector{std::vector<Rat>(n + 1, Rat(0))}; }
};

enum class UnknownRole { PCoord, Multiplier, TorusCoord, RankParam };

// Square polynomial system whose isolated solutions off the distinguished
// arrangement are the likelihood critical points. Equations live in the ring
// with the unknowns first and the data entries appended as parameters, and
// they are linear in the parameters; this is what makes straight-line
// parameter homotopies exact coefficient interpolations.
struct CriticalSystem {
  int nUnknowns = 0;
  int nParams = 0;
  std::vector<QPoly> equations;    // nUnknowns of them, in nUnknowns+nParams vars
  std::vector<UnknownRole> roles;  // per unknown
  std::vector<std::string> unknownNames;
  std::vector<std::vector<int>> variableGroups;  // partition for multihomogeneous starts
  std::string provenance;
  int chartEquation = -1;  // index of the affine-chart equation, or -1
  std::vector<Rat> uValue;  // the data this system was built for (length nParams)

  // How to map a raw solution to homogeneous coordinates of the model point.
  enum class Extract { Coordinates, Polynomials, ToricMonomials };
  Extract extract = Extract::Coordinates;
  std::vector<int> coordIndex;             // Extract::Coordinates
  std::vector<QPoly> extractPolys;         // Extract::Polynomials (in unknowns only)
  std::vector<std::vector<int>> toricExp;  // Extract::ToricMonomials, column i = exponent of p_i
  std::vector<Rat> toricCoef;

  // Classification support: polynomials in p_0..p_n that genuine model points
  // must satisfy, and the rank their Jacobian must have there.
  std::vector<QPoly> membershipPolys;
  int specJacobianRank = 0;  // 0 disables the rank filter
  int ambientN = 0;
  // Projective models get H-boundary classification and scale-invariant
  // dedup; plain affine systems (used in tests) skip both.
  bool projectiveModel = false;

  int modelPointLength() const { return ambientN + 1; }
  void requireSquare() const;
  std::vector<cd> extractModelPoint(const std::vector<cd>& solution) const;
};

// Lagrange/implicit formulation: u is constrained to the row span of the
// scaled Jacobian via multipliers. Accepts a hypersurface, a complete
// intersection (codim == #generators), or an over-described variety, which
// gets replaced by seeded random degree-equalized combinations of its
// generators; spurious points on the extra components are filtered by the
// membership check during classification.
CriticalSystem buildLagrangeSystem(const VarietySpec& spec, const DataVector& u, Rng& rng);

// Plane-curve determinant formulation for a trivariate homogeneous f, with
// denominators cleared.
CriticalSystem buildPlaneCurveSystem(const QPoly& f, const DataVector& u, Rng& rng,
                                     VarietySpec::SingularPolicy policy =
                                         VarietySpec::SingularPolicy::FilterBySpecJacobian);

// Parametrized rank-r critical system for m x n matrices.
CriticalSystem buildRankSystem(int m, int n, int r, const std::vector<std::vector<Rat>>& U);

// Symmetric analogue for n x n symmetric matrices of rank <= r.
CriticalSystem buildSymmetricRankSystem(int n, int r, const std::vector<std::vector<Rat>>& U);

// Torus-coordinate critical system of a toric model (A, c); A is
// (d+1) x (n+1) with last row all ones (redundant rows are reduced away).
CriticalSystem buildToricSystem(const std::vector<std::vector<long>>& A,
                                const std::vector<Rat>& c, const DataVector& u);

// Row-reduce an integer matrix with an all-ones row to full row rank by
// selecting a row subset; the ones row is kept. Used by the toric builders.
std::vector<std::vector<long>> reduceToricRows(const std::vector<std::vector<long>>& A);

}  // namespace mlgeo
