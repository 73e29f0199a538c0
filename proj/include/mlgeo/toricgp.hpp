#pragma once

#include "mlgeo/mldeg.hpp"

namespace mlgeo {

// Toric model given by an integer matrix A with all-ones last row and a
// scaling vector c. Redundant rows of A are reduced away on construction.
struct ToricModel {
  std::vector<std::vector<long>> A;  // (d+1) x (n+1), reduced, ones row last
  std::vector<Rat> c;                // nonzero scalings c_0..c_n

  ToricModel(std::vector<std::vector<long>> A_, std::vector<Rat> c_);

  int d() const { return static_cast<int>(A.size()) - 1; }
  int n() const { return static_cast<int>(A.at(0).size()) - 1; }
  std::vector<long> aTilde(int col) const;  // column with the ones entry dropped
};

struct BirchResult {
  std::vector<double> pHat;   // point in the simplex
  std::vector<double> logX;   // optimizer in log coordinates
  double gradientNorm = 0.0;
  int iterations = 0;
  std::vector<double> objectiveTrace;
};

// MLE of a toric model with positive c and positive data, via damped Newton
// with Armijo backtracking on the convex geometric program in y = log x.
BirchResult birchMle(const ToricModel& model, const DataVector& u, double tol = 1e-12,
                     int maxIters = 200);

// Off-boundary solution count of the torus critical system, mode over trials.
MLReport toricMlDegree(const ToricModel& model, const TrackerConfig& cfg, int trials = 3,
                       std::uint64_t seed = 271828);

// Normalized lattice volume of conv(A) divided by the index of the affine
// lattice spanned by the column differences, so the value equals the degree
// of the toric variety. Supports d <= 3.
long normalizedVolume(const std::vector<std::vector<long>>& A);

// Smith normal form diagonal of an integer matrix (elementary divisors).
std::vector<long> smithDiagonal(std::vector<std::vector<long>> M);

}  // namespace mlgeo
