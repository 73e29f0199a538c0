#pragma once

#include <optional>

#include "mlgeo/mldeg.hpp"

namespace mlgeo {

// Model of ML degree one: the MLE coordinates are alternating products of the
// linear forms x_j = sum_i B[i][j] u_i, with exponents given by the columns
// of B and scalings c.
struct HornModel {
  std::vector<std::vector<int>> B;  // B[i] = exponent column of p_i, length m
  std::vector<Rat> c;               // c_0..c_n
  std::optional<VarietySpec> implicitSpec;

  int m() const { return B.empty() ? 0 : static_cast<int>(B.front().size()); }
  int n() const { return static_cast<int>(B.size()) - 1; }
};

struct resonance_error : std::runtime_error {
  int formIndex;
  resonance_error(int j)
      : std::runtime_error("data lies on the exceptional locus: linear form " +
                           std::to_string(j) + " vanishes"),
        formIndex(j) {}
};

// Exact rational MLE evaluation; throws resonance_error when a linear form
// vanishes at u.
std::vector<Rat> hornMle(const HornModel& model, const std::vector<Rat>& u);

// Extract (B, c) from a scaled discriminant: the input divided by the pivot
// term (pivot exponent and its coefficient) must read 1 - sum c_i x^{b_i}.
HornModel parseScaledDiscriminant(const QPoly& laurent, const std::vector<int>& pivotExp,
                                  const Rat& pivotCoef);

struct HornVerification {
  bool ok = true;
  int trialsRun = 0;
  std::vector<Rat> witnessU;  // filled when ok == false
  std::string reason;
};

// For random positive data: sum-to-one exactly, implicit membership exactly,
// and (when an implicit spec is present) agreement with the unique off-H
// point found by the tracker on a subset of the trials.
HornVerification verifyMlDegreeOne(const HornModel& model, int trials, const TrackerConfig& cfg,
                                   std::uint64_t seed = 271828, int trackerTrials = 1);

}  // namespace mlgeo
