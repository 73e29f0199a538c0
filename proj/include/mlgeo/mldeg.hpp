#pragma once

#include "mlgeo/binary_form.hpp"
#include "mlgeo/tracker.hpp"

namespace mlgeo {

struct MLReport {
  long mlDegree = 0;
  std::vector<long> perTrialCounts;
  long pathFailures = 0;
  bool stable = false;  // all trials agree
  std::vector<std::uint64_t> seedsUsed;
};

// Count likelihood critical points for fresh generic data, once per trial;
// the reported degree is the mode of the per-trial counts.
MLReport mlDegree(const VarietySpec& spec, const TrackerConfig& cfg, int trials = 3,
                  std::uint64_t seed = 271828);

// Critical points for one concrete data vector.
SolutionSet mleSolve(const VarietySpec& spec, const DataVector& u, const TrackerConfig& cfg,
                     std::uint64_t seed = 271828);

struct SectionalResult {
  BinaryForm S;
  std::vector<long> sliceDegrees;  // s_0..s_d
  bool stable = true;
};

// s_i = ML degree of X cut by i generic hyperplanes; assembled as
// (s_0 p^d + s_1 p^(d-1) u + ... + s_d u^d) * p^(n-d).
SectionalResult sectionalMLDegree(const VarietySpec& spec, const TrackerConfig& cfg,
                                  std::uint64_t seed = 271828);

struct BidegreeResult {
  BinaryForm B;
  SectionalResult sectional;
  bool viaInvolution = true;       // conjecture-derived unless cross-checked
  bool linearCrossChecked = false; // linear models have a theorem-backed route
  bool crossCheckAgrees = true;
};

BidegreeResult mlBidegree(const VarietySpec& spec, const TrackerConfig& cfg,
                          std::uint64_t seed = 271828);

// Exact ML degree of a generic complete intersection of the given degrees in
// P^n: the complete homogeneous sum D times the product of the degrees.
Int genericCiMlDegree(int n, const std::vector<int>& degrees);

struct PlaneCurveReport {
  int d = 0;            // degree of the curve
  long a = 0;           // #(X cap H), counted exactly
  long formulaMLdeg = 0;  // d^2 - 3d + a
};

// Exact count of X cap H for a smooth trivariate curve: restrict f to each of
// the four lines of the arrangement, count distinct roots by squarefree
// degree, and correct for the six pairwise corner points.
PlaneCurveReport planeCurveFormula(const QPoly& f, bool checkSmooth = false);

// Numeric smoothness probe for plane curves (common zero of the partials).
bool planeCurveIsSmooth(const QPoly& f, const TrackerConfig& cfg, std::uint64_t seed = 271828);

struct SplitCheckResult {
  long mlTotal = 0;
  long mlSlice = 0;     // ML degree of X cap {p_k = 0} inside P^(n-1)
  long mlDataZero = 0;  // off-H count for generic data with u_k = 0
  bool holds = false;
  bool stable = true;
};

// Restriction/deletion split check on coordinate k.
SplitCheckResult restrictionSplitCheck(const VarietySpec& spec, const TrackerConfig& cfg,
                                       int coordIndex, std::uint64_t seed = 271828);

// Same check routed through the parametrized rank builders, for m x n rank-r
// models where the Lagrange route in P^(mn-1) would be needlessly heavy.
SplitCheckResult rankSplitCheck(int m, int n, int r, const TrackerConfig& cfg,
                                std::uint64_t seed = 271828);

// Shared helper: off-H regular count for a prepared critical system.
long countOffHRegular(const CriticalSystem& sys, const TrackerConfig& cfg, long* failures = nullptr);

}  // namespace mlgeo
