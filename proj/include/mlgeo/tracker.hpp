#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlgeo/critsys.hpp"

namespace mlgeo {

struct TrackerConfig {
  std::uint64_t seed = 271828;
  double initialStep = 0.05;
  double minStep = 1e-7;
  double maxStep = 0.25;
  double correctorTol = 1e-9;
  double endpointTol = 1e-10;
  int maxNewtonIters = 3;       // corrector steps per accept
  double boundaryTau = 1e-8;    // relative threshold for "on H"
  double singularCondThreshold = 1e10;
  double dedupTol = 1e-6;       // cluster radius on normalized model points
  enum class Start { Auto, TotalDegree, Multihomogeneous };
  Start startKind = Start::Auto;
  long maxPaths = 200000;       // total-degree path cap
  int threads = 0;              // 0: LG_THREADS env or hardware concurrency

  void validate() const;
};

enum class PointClass { OffHRegular, OnH, Singular, AtInfinity };

std::string pointClassName(PointClass c);

struct TrackedPoint {
  std::vector<cd> coords;       // raw unknowns
  std::vector<cd> modelPoint;   // extracted homogeneous coordinates
  double residual = 0.0;
  double cond = 0.0;            // condition estimate of the system Jacobian
  PointClass cls = PointClass::Singular;
  int cluster = -1;             // multiplicity cluster id; -1 for at-infinity
};

struct PathStats {
  long tracked = 0;
  long converged = 0;
  long failed = 0;
};

struct SolutionSet {
  std::vector<TrackedPoint> points;  // canonically sorted
  PathStats pathStats;

  long countClass(PointClass c) const;
  // Number of distinct off-H regular points (clusters).
  long distinctOffHRegular() const;
  std::vector<std::vector<cd>> offHRegularModelPoints() const;
  std::vector<std::vector<cd>> offHRegularCoords() const;
};

struct path_overflow_error : std::runtime_error {
  long totalDegreeCount;
  explicit path_overflow_error(long n)
      : std::runtime_error("total-degree path count " + std::to_string(n) +
                           " exceeds the cap; use a multihomogeneous start"),
        totalDegreeCount(n) {}
};

// Multihomogeneous Bezout data for a system's variable groups.
struct MultihomStart {
  long pathCount = 0;
  long totalDegreeCount = 0;
  std::vector<std::vector<int>> groupDegrees;  // per equation, per group
};

MultihomStart multihomStart(const CriticalSystem& sys);

// Track every start solution of the chosen start system to t=0, refine,
// classify against H and the singular filters, deduplicate and sort.
SolutionSet solve(const CriticalSystem& sys, const TrackerConfig& cfg);

struct RefineResult {
  std::vector<cd> point;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Newton refinement of an approximate solution of the system at its own data.
RefineResult refine(const std::vector<cd>& point, const CriticalSystem& sys, double tol,
                    int maxIters = 50);

// Walk the solutions of sys from data u0 (complex, generic) to data u1. The
// equations are linear in the data, so the segment homotopy is exact.
// solutions0 are the raw solution vectors at u0.
SolutionSet parameterHomotopy(const CriticalSystem& sys, const std::vector<cd>& u0,
                              const std::vector<std::vector<cd>>& solutions0,
                              const std::vector<cd>& u1, const TrackerConfig& cfg);

// Ab-initio solve at a seeded generic complex data vector; returns the raw
// nonsingular finite solutions for later parameter homotopies.
struct PreprocessResult {
  std::vector<cd> u0;
  std::vector<std::vector<cd>> solutions;
  PathStats stats;
};
PreprocessResult preprocessGenericData(const CriticalSystem& sys, const TrackerConfig& cfg);

}  // namespace mlgeo
