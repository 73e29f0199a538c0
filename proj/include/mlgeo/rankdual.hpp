#pragma once

#include <Eigen/Dense>

#include "mlgeo/mldeg.hpp"

namespace mlgeo {

using CMat = Eigen::MatrixXcd;
using RMat = std::vector<std::vector<Rat>>;

// Critical point of the likelihood on a rank variety, normalized to have
// entry sum one.
struct MatrixPoint {
  CMat P;
  double residual = 0.0;
  bool real = false;      // all imaginary parts below tolerance
  bool positive = false;  // real with positive entries
};

struct RankCriticalResult {
  std::vector<MatrixPoint> points;
  PathStats stats;
  long rawSolutions = 0;
};

// All rank-r critical points of ell_U, via the block parametrization and a
// multihomogeneous ab-initio solve (or a parameter homotopy from a cached
// generic complex preprocessing run when supplied).
RankCriticalResult rankCriticalPoints(int m, int n, int r, const RMat& U,
                                      const TrackerConfig& cfg,
                                      const PreprocessResult* preprocessed = nullptr);

RankCriticalResult symmetricRankCriticalPoints(int n, int r, const RMat& U,
                                               const TrackerConfig& cfg);

// Entrywise u_ij u_i+ u_+j / u_++^3.
RMat omegaMatrix(const RMat& U);

struct DualityPairing {
  bool perfect = false;
  std::vector<int> match;  // match[i] = index in the dual list
  double maxResidual = 0.0;
  bool realityPreserved = true;
};

// Match rank-r points against rank-(m-r+1) points by the Hadamard identity
// P * Q = Omega_U. A failure to find a perfect matching is reported, not
// thrown; it is a finding about the data, not a bug.
DualityPairing dualityPairing(const std::vector<MatrixPoint>& solsR,
                              const std::vector<MatrixPoint>& solsS, const RMat& U, double tol);

// Tangent-space orthogonality test of Proposition-style criticality: factor P
// rank-revealingly and test both one-sided products of the dlog matrix.
bool verifyCriticalRank(const CMat& P, const RMat& U, int r, double tol);

struct EMResult {
  Eigen::MatrixXd A;       // m x r, columns in the simplex
  Eigen::VectorXd lambda;  // r mixture weights
  Eigen::MatrixXd B;       // r x n, rows in the simplex
  Eigen::MatrixXd P;       // fitted distribution
  std::vector<double> logLikTrace;
  int iterations = 0;
  bool converged = false;
};

// EM for the rank-r mixture model. Seeded positive random initialization when
// no explicit init triple is given.
EMResult emMixture(const RMat& U, int r, int maxIters = 2000, double tol = 1e-10,
                   std::uint64_t seed = 271828,
                   const EMResult* init = nullptr);

double logLikelihood(const RMat& U, const Eigen::MatrixXd& P);

// Numerical rank via the relative singular value gap used everywhere here.
int numericalRank(const CMat& P, double gapTol = 1e-6);

// Membership of a nonnegative 2x2x2 tensor (indexed [i][j][k], entries
// summing to 1) in the nonnegative-rank-2 set: the nine supermodularity
// inequalities must hold after some swap of the two labels per axis.
bool supermodular222(const std::vector<std::vector<std::vector<double>>>& P);

}  // namespace mlgeo
