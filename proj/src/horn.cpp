#include "mlgeo/horn.hpp"

#include <algorithm>

namespace mlgeo {

std::vector<Rat> hornMle(const HornModel& model, const std::vector<Rat>& u) {
  const int n = model.n();
  const int m = model.m();
  if (static_cast<int>(u.size()) != n + 1) throw input_error("data vector arity mismatch");

  // linear forms x_j = sum_i B[i][j] u_i
  std::vector<Rat> x(m, Rat(0));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i <= n; ++i) x[j] += Rat(model.B[i][j]) * u[i];
  for (int j = 0; j < m; ++j)
    if (x[j] == 0) throw resonance_error(j);

  std::vector<Rat> p(n + 1);
  for (int k = 0; k <= n; ++k) {
    Rat v = model.c[k];
    for (int j = 0; j < m; ++j) {
      int e = model.B[k][j];
      for (int t = 0; t < e; ++t) v *= x[j];
      for (int t = 0; t < -e; ++t) v /= x[j];
    }
    p[k] = v;
  }
  return p;
}

HornModel parseScaledDiscriminant(const QPoly& laurent, const std::vector<int>& pivotExp,
                                  const Rat& pivotCoef) {
  if (pivotCoef == 0) throw input_error("pivot coefficient must be nonzero");
  const int m = laurent.nvars();
  if (static_cast<int>(pivotExp.size()) != m) throw input_error("pivot exponent arity mismatch");

  // Divide by the pivot term; the constant of the result must be exactly 1.
  bool sawPivot = false;
  std::vector<std::pair<std::vector<int>, Rat>> shifted;
  for (auto& [e, c] : laurent.terms()) {
    std::vector<int> d(m);
    bool isPivot = true;
    for (int v = 0; v < m; ++v) {
      d[v] = e[v] - pivotExp[v];
      if (d[v] != 0) isPivot = false;
    }
    Rat q = c / pivotCoef;
    if (isPivot) {
      if (q != 1) throw input_error("constant term is not 1 after dividing by the pivot");
      sawPivot = true;
      continue;
    }
    shifted.emplace_back(std::move(d), std::move(q));
  }
  if (!sawPivot) throw input_error("pivot term absent from the input");

  // 1 - sum c_k x^{b_k}: descending lex order of the shifted exponents, which
  // matches the natural reading order of the discriminant.
  std::sort(shifted.begin(), shifted.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  HornModel model;
  for (auto& [e, q] : shifted) {
    model.B.push_back(e);
    model.c.push_back(-q);
  }
  return model;
}

HornVerification verifyMlDegreeOne(const HornModel& model, int trials, const TrackerConfig& cfg,
                                   std::uint64_t seed, int trackerTrials) {
  HornVerification out;
  Rng rng(seed);
  const int n = model.n();
  for (int t = 0; t < trials; ++t) {
    std::vector<Rat> u(n + 1);
    for (auto& ui : u) ui = Rat(rng.intIn(1, 1000));
    std::vector<Rat> p;
    try {
      p = hornMle(model, u);
    } catch (const resonance_error& e) {
      continue;  // positive data can hit the locus only for special models
    }
    out.trialsRun += 1;

    Rat s = 0;
    for (const auto& pk : p) s += pk;
    if (s != 1) {
      out.ok = false;
      out.witnessU = u;
      out.reason = "coordinates do not sum to one";
      return out;
    }
    if (model.implicitSpec) {
      for (const auto& g : model.implicitSpec->generators)
        if (g.eval(p) != 0) {
          out.ok = false;
          out.witnessU = u;
          out.reason = "MLE violates an implicit equation";
          return out;
        }
    }

    if (model.implicitSpec && t < trackerTrials) {
      Rng chartRng(seed ^ 0x7777u);
      CriticalSystem sys = buildLagrangeSystem(*model.implicitSpec, DataVector{u}, chartRng);
      TrackerConfig tc = cfg;
      SolutionSet ss = solve(sys, tc);
      auto pts = ss.offHRegularModelPoints();
      if (pts.size() != 1) {
        out.ok = false;
        out.witnessU = u;
        out.reason = "tracker found " + std::to_string(pts.size()) + " off-H points";
        return out;
      }
      // compare projectively with the exact MLE
      std::vector<cd> exact;
      for (const auto& pk : p) exact.push_back(rat_complex(pk));
      const auto& got = pts[0];
      cd ratio(0, 0);
      double scale = 0;
      for (std::size_t i = 0; i < got.size(); ++i)
        if (std::abs(exact[i]) > scale) {
          scale = std::abs(exact[i]);
          ratio = got[i] / exact[i];
        }
      double err = 0;
      for (std::size_t i = 0; i < got.size(); ++i)
        err = std::max(err, std::abs(got[i] - ratio * exact[i]));
      if (err > 1e-6 * std::abs(ratio)) {
        out.ok = false;
        out.witnessU = u;
        out.reason = "tracker point does not match the closed form";
        return out;
      }
    }
  }
  return out;
}

}  // namespace mlgeo
