#include "mlgeo/mldeg.hpp"

#include <algorithm>
#include <optional>

#include "mlgeo/linmatroid.hpp"
#include "mlgeo/rankdual.hpp"

namespace mlgeo {

namespace {

long modeOf(const std::vector<long>& values) {
  std::vector<long> v = values;
  std::sort(v.begin(), v.end());
  long best = v[0];
  int bestRun = 0, run = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    run = (i > 0 && v[i] == v[i - 1]) ? run + 1 : 1;
    if (run > bestRun) {
      bestRun = run;
      best = v[i];
    }
  }
  return best;
}

bool allEqual(const std::vector<long>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

CriticalSystem buildForSpec(const VarietySpec& spec, const DataVector& u, Rng& rng) {
  if (spec.n == 2 && spec.generators.size() == 1 && spec.codim == 1)
    return buildPlaneCurveSystem(spec.generators[0], u, rng, spec.singularPolicy);
  return buildLagrangeSystem(spec, u, rng);
}

std::vector<cd> ratToComplexVec(const std::vector<Rat>& v) {
  std::vector<cd> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(rat_complex(r));
  return out;
}

}  // namespace

long countOffHRegular(const CriticalSystem& sys, const TrackerConfig& cfg, long* failures) {
  SolutionSet ss = solve(sys, cfg);
  if (failures) *failures += ss.pathStats.failed;
  return ss.distinctOffHRegular();
}

// Preprocess once at generic complex data, then answer each trial with a
// short parameter homotopy: the separation between solving the system once
// and walking the fibration to each fresh data vector.
MLReport mlDegree(const VarietySpec& spec, const TrackerConfig& cfg, int trials,
                  std::uint64_t seed) {
  if (trials < 1) throw input_error("need at least one trial");
  MLReport rep;
  Rng rng(seed);
  DataVector u0 = DataVector::genericInts(rng, spec.n);
  CriticalSystem sys = buildForSpec(spec, u0, rng);

  TrackerConfig pc = cfg;
  pc.seed = seed ^ 0x51a7eb01dull;
  PreprocessResult pre = preprocessGenericData(sys, pc);
  rep.pathFailures += pre.stats.failed;

  for (int t = 0; t < trials; ++t) {
    std::uint64_t trialSeed = rng.raw();
    Rng trialRng(trialSeed);
    DataVector ut = DataVector::genericInts(trialRng, spec.n);
    TrackerConfig tc = cfg;
    tc.seed = trialSeed;
    SolutionSet ss = parameterHomotopy(sys, pre.u0, pre.solutions, ratToComplexVec(ut.u), tc);
    rep.perTrialCounts.push_back(ss.distinctOffHRegular());
    rep.pathFailures += ss.pathStats.failed;
    rep.seedsUsed.push_back(trialSeed);
  }
  rep.mlDegree = modeOf(rep.perTrialCounts);
  rep.stable = allEqual(rep.perTrialCounts);
  return rep;
}

SolutionSet mleSolve(const VarietySpec& spec, const DataVector& u, const TrackerConfig& cfg,
                     std::uint64_t seed) {
  Rng rng(seed);
  CriticalSystem sys = buildForSpec(spec, u, rng);
  return solve(sys, cfg);
}

SectionalResult sectionalMLDegree(const VarietySpec& spec, const TrackerConfig& cfg,
                                  std::uint64_t seed) {
  spec.validate();
  const int d = spec.dim();
  SectionalResult res;
  Rng rng(seed ^ 0x5ec710Eull);

  for (int i = 0; i <= d; ++i) {
    if (i == 0) {
      MLReport r = mlDegree(spec, cfg, 3, rng.raw());
      res.sliceDegrees.push_back(r.mlDegree);
      res.stable = res.stable && r.stable;
      continue;
    }
    // each s_i is the mode over three independent slice draws
    std::vector<long> draws;
    bool stable = true;
    for (int rep = 0; rep < 3; ++rep) {
      VarietySpec sliced = spec;
      sliced.codim += i;
      for (int k = 0; k < i; ++k) {
        QPoly h(spec.n + 1);
        for (int v = 0; v <= spec.n; ++v)
          h += QPoly::variable(spec.n + 1, v).scaled(rat_of(rng.nonzeroInt(99)));
        sliced.generators.push_back(h);
      }
      MLReport r = mlDegree(sliced, cfg, 3, rng.raw());
      draws.push_back(r.mlDegree);
      stable = stable && r.stable;
    }
    res.sliceDegrees.push_back(modeOf(draws));
    res.stable = res.stable && stable && allEqual(draws);
  }

  std::vector<Int> coeff(spec.n + 1, Int(0));
  for (int i = 0; i <= d; ++i) coeff[i] = Int(res.sliceDegrees[i]);
  res.S = BinaryForm(std::move(coeff));
  return res;
}

BidegreeResult mlBidegree(const VarietySpec& spec, const TrackerConfig& cfg, std::uint64_t seed) {
  BidegreeResult out;
  out.sectional = sectionalMLDegree(spec, cfg, seed);
  out.B = involutionBfromS(out.sectional.S);
  out.viaInvolution = true;

  bool allLinear = !spec.generators.empty();
  for (const auto& g : spec.generators)
    if (g.totalDegree() != 1) allLinear = false;
  if (allLinear) {
    // theorem-backed route through the arrangement matroid
    std::vector<std::vector<Rat>> forms;
    for (const auto& g : spec.generators) {
      std::vector<Rat> row(spec.n + 1, Rat(0));
      for (auto& [e, c] : g.terms())
        for (int v = 0; v <= spec.n; ++v)
          if (e[v] == 1) row[v] = c;
      forms.push_back(std::move(row));
    }
    LinearModel lm{rationalKernel(forms)};
    out.linearCrossChecked = true;
    out.crossCheckAgrees = (linearMlBidegree(lm) == out.B);
  }
  return out;
}

Int genericCiMlDegree(int n, const std::vector<int>& degrees) {
  const int r = static_cast<int>(degrees.size());
  if (r < 1 || r > n) throw input_error("need 1 <= r <= n generators");
  // D = sum over i_1+...+i_r <= n-r of prod d_j^{i_j}
  std::vector<Int> acc{Int(1)};  // acc[s] = sum over tuples with total s, built factor by factor
  acc.resize(n - r + 1, Int(0));
  for (int j = 0; j < r; ++j) {
    std::vector<Int> nxt(n - r + 1, Int(0));
    for (int s = 0; s <= n - r; ++s) {
      if (acc[s] == 0) continue;
      Int p(1);
      for (int i = 0; s + i <= n - r; ++i) {
        nxt[s + i] += acc[s] * p;
        p *= degrees[j];
      }
    }
    acc = std::move(nxt);
  }
  Int D(0);
  for (const auto& v : acc) D += v;
  for (int j = 0; j < r; ++j) D *= degrees[j];
  return D;
}

namespace {

using UniPoly = std::vector<Rat>;  // ascending

int uniDeg(const UniPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

UniPoly uniTrim(UniPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

UniPoly uniDiff(const UniPoly& p) {
  UniPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
  return uniTrim(d);
}

UniPoly uniMod(UniPoly a, const UniPoly& b) {
  int db = uniDeg(b);
  while (true) {
    a = uniTrim(a);
    int da = uniDeg(a);
    if (da < db) return a;
    Rat f = a[da] / b[db];
    for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
  }
}

UniPoly uniGcd(UniPoly a, UniPoly b) {
  a = uniTrim(a);
  b = uniTrim(b);
  while (!b.empty()) {
    UniPoly r = uniMod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// distinct projective roots of a binary form given by ascending coefficients
// c_j of s^(D-j) t^j
long distinctProjectiveRoots(const std::vector<Rat>& c) {
  UniPoly q(c.begin(), c.end());
  q = uniTrim(q);
  if (q.empty()) throw input_error("zero restriction");
  long extra = (uniDeg(UniPoly(c.begin(), c.end())) < static_cast<int>(c.size()) - 1) ? 1 : 0;
  int dq = uniDeg(q);
  if (dq == 0) return extra;
  UniPoly g = uniGcd(q, uniDiff(q));
  return dq - std::max(0, uniDeg(g)) + extra;
}

// restriction of a trivariate form to a parametrized line p = s*a + t*b
std::vector<Rat> restrictToLine(const QPoly& f, const std::array<std::array<int, 3>, 2>& dirs) {
  const int D = f.totalDegree();
  std::vector<Rat> out(D + 1, Rat(0));
  // expand f(s*a + t*b) by evaluating the substitution term by term
  // p_v = a_v s + b_v t; each exponent contributes a binomial expansion
  for (auto& [e, coef] : f.terms()) {
    // polynomial in (s,t): product over v of (a_v s + b_v t)^(e_v)
    std::vector<Rat> acc{coef};  // ascending in t
    for (int v = 0; v < 3; ++v) {
      Rat av(dirs[0][v]), bv(dirs[1][v]);
      for (int k = 0; k < e[v]; ++k) {
        std::vector<Rat> nxt(acc.size() + 1, Rat(0));
        for (std::size_t i = 0; i < acc.size(); ++i) {
          nxt[i] += acc[i] * av;
          nxt[i + 1] += acc[i] * bv;
        }
        acc = std::move(nxt);
      }
    }
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] += acc[i];
  }
  return out;
}

}  // namespace

PlaneCurveReport planeCurveFormula(const QPoly& f, bool checkSmooth) {
  if (f.nvars() != 3 || f.isZero() || !f.isHomogeneous())
    throw input_error("plane curve formula needs a homogeneous trivariate form");
  if (checkSmooth) {
    TrackerConfig cfg;
    if (!planeCurveIsSmooth(f, cfg)) throw input_error("curve is singular");
  }
  PlaneCurveReport rep;
  rep.d = f.totalDegree();

  // the four lines of H, parametrized by two spanning points each
  std::array<std::array<std::array<int, 3>, 2>, 4> lines = {{
      {{{0, 1, 0}, {0, 0, 1}}},    // p0 = 0
      {{{1, 0, 0}, {0, 0, 1}}},    // p1 = 0
      {{{1, 0, 0}, {0, 1, 0}}},    // p2 = 0
      {{{1, 0, -1}, {0, 1, -1}}},  // p_+ = 0
  }};
  long a = 0;
  for (const auto& L : lines) {
    auto c = restrictToLine(f, L);
    bool allZero = true;
    for (const auto& v : c)
      if (v != 0) allZero = false;
    if (allZero) throw input_error("model invalid: f vanishes on a line of H");
    a += distinctProjectiveRoots(c);
  }

  // corner points lie on two lines each; subtract the double counting
  const std::array<std::array<long, 3>, 6> corners = {{{0, 0, 1},
                                                       {0, 1, 0},
                                                       {1, 0, 0},
                                                       {0, 1, -1},
                                                       {1, 0, -1},
                                                       {1, -1, 0}}};
  for (const auto& pt : corners) {
    std::vector<Rat> p{Rat(pt[0]), Rat(pt[1]), Rat(pt[2])};
    if (f.eval(p) == 0) a -= 1;
  }

  rep.a = a;
  if (rep.a > 4L * rep.d) throw input_error("impossible intersection count");
  rep.formulaMLdeg = static_cast<long>(rep.d) * rep.d - 3L * rep.d + rep.a;
  return rep;
}

bool planeCurveIsSmooth(const QPoly& f, const TrackerConfig& cfg, std::uint64_t seed) {
  if (f.totalDegree() <= 1) return true;
  // common zero of the partials, probed on a generic chart
  std::vector<QPoly> parts;
  for (int v = 0; v < 3; ++v)
    if (!f.diff(v).isZero()) parts.push_back(f.diff(v));
  if (parts.size() < 2) return false;  // f is a power of a coordinate-like form

  Rng rng(seed ^ 0x500d);
  CriticalSystem sys;
  sys.nUnknowns = 3;
  sys.nParams = 0;
  sys.provenance = "plane-curve-smoothness";
  sys.ambientN = 2;
  sys.projectiveModel = false;
  const int total = 3;
  sys.equations.push_back(parts[0]);
  sys.equations.push_back(parts[1]);
  QPoly chart = QPoly::variable(total, 0) - QPoly::constant(total, 1);
  for (int i = 1; i < 3; ++i) chart += QPoly::variable(total, i).scaled(rng.rational(40));
  sys.chartEquation = 2;
  sys.equations.push_back(chart);
  for (int i = 0; i < 3; ++i) {
    sys.roles.push_back(UnknownRole::PCoord);
    sys.unknownNames.push_back("p" + std::to_string(i));
    sys.coordIndex.push_back(i);
  }
  sys.variableGroups = {{0, 1, 2}};
  sys.extract = CriticalSystem::Extract::Coordinates;
  sys.requireSquare();

  TrackerConfig tc = cfg;
  tc.seed = seed;
  SolutionSet ss = solve(sys, tc);
  std::vector<CPoly> others;
  for (std::size_t v = 2; v < parts.size(); ++v) others.push_back(toComplex(parts[v]));
  for (const auto& p : ss.points) {
    if (p.cls == PointClass::AtInfinity || p.residual > 1e-8) continue;
    bool allVanish = true;
    for (auto& g : others) {
      double scale = 0;
      for (const auto& xi : p.coords) scale = std::max(scale, std::abs(xi));
      if (std::abs(g.eval(p.coords)) > 1e-6 * std::max(1.0, scale)) allVanish = false;
    }
    if (allVanish) return false;  // genuine singular point (possibly on H)
  }
  return true;
}

SplitCheckResult restrictionSplitCheck(const VarietySpec& spec, const TrackerConfig& cfg,
                                       int coordIndex, std::uint64_t seed) {
  if (coordIndex < 0 || coordIndex > spec.n) throw input_error("coordinate index out of range");
  SplitCheckResult res;
  Rng rng(seed ^ 0x511CE);

  MLReport total = mlDegree(spec, cfg, 3, rng.raw());
  res.mlTotal = total.mlDegree;
  res.stable = total.stable;

  // slice: substitute p_k = 0 and work in P^(n-1)
  VarietySpec sliced;
  sliced.n = spec.n - 1;
  sliced.codim = spec.codim;
  sliced.singularPolicy = spec.singularPolicy;
  for (const auto& g : spec.generators) {
    QPoly r = g.restrictZero(coordIndex);
    if (!r.isZero()) sliced.generators.push_back(r);
  }
  if (static_cast<int>(sliced.generators.size()) < sliced.codim)
    throw input_error("slice drops too many generators");
  MLReport slice = mlDegree(sliced, cfg, 3, rng.raw());
  res.mlSlice = slice.mlDegree;
  res.stable = res.stable && slice.stable;

  // data-zero count: u_k exactly zero, other coordinates generic
  {
    std::vector<long> counts;
    DataVector u0 = DataVector::genericInts(rng, spec.n);
    u0.u[coordIndex] = 0;
    Rng sysRng(rng.raw());
    CriticalSystem sys = buildForSpec(spec, u0, sysRng);
    TrackerConfig pc = cfg;
    pc.seed = rng.raw();
    PreprocessResult pre = preprocessGenericData(sys, pc);
    for (int t = 0; t < 3; ++t) {
      Rng tr(rng.raw());
      DataVector ut = DataVector::genericInts(tr, spec.n);
      ut.u[coordIndex] = 0;
      TrackerConfig tc = cfg;
      tc.seed = tr.raw();
      SolutionSet ss = parameterHomotopy(sys, pre.u0, pre.solutions, ratToComplexVec(ut.u), tc);
      counts.push_back(ss.distinctOffHRegular());
    }
    res.mlDataZero = modeOf(counts);
    res.stable = res.stable && allEqual(counts);
  }

  res.holds = (res.mlTotal == res.mlSlice + res.mlDataZero);
  return res;
}

namespace {

// All (r+1)x(r+1) minors of the generic m x n matrix as a VarietySpec.
VarietySpec minorsSpec(int m, int n, int r) {
  VarietySpec spec;
  spec.n = m * n - 1;
  spec.codim = (m - r) * (n - r);
  spec.singularPolicy = VarietySpec::SingularPolicy::FilterBySpecJacobian;
  const int total = m * n;
  auto entry = [&](int i, int j) { return QPoly::variable(total, i * n + j); };

  std::vector<int> rowsSel, colsSel;
  std::function<void(int, int)> recRows = [&](int startR, int needR) {
    if (needR == 0) {
      std::function<void(int, int)> recCols = [&](int startC, int needC) {
        if (needC == 0) {
          // determinant of the selected (r+1)x(r+1) submatrix
          const int k = r + 1;
          std::vector<int> perm(k);
          for (int i = 0; i < k; ++i) perm[i] = i;
          QPoly det(total);
          do {
            int inv = 0;
            for (int a = 0; a < k; ++a)
              for (int b = a + 1; b < k; ++b)
                if (perm[a] > perm[b]) ++inv;
            QPoly term = QPoly::constant(total, (inv % 2 == 0) ? 1 : -1);
            for (int a = 0; a < k; ++a) term *= entry(rowsSel[a], colsSel[perm[a]]);
            det += term;
          } while (std::next_permutation(perm.begin(), perm.end()));
          spec.generators.push_back(det);
          return;
        }
        for (int c = startC; c <= n - needC; ++c) {
          colsSel.push_back(c);
          recCols(c + 1, needC - 1);
          colsSel.pop_back();
        }
      };
      recCols(0, r + 1);
      return;
    }
    for (int rr = startR; rr <= m - needR; ++rr) {
      rowsSel.push_back(rr);
      recRows(rr + 1, needR - 1);
      rowsSel.pop_back();
    }
  };
  recRows(0, r + 1);
  return spec;
}

}  // namespace

SplitCheckResult rankSplitCheck(int m, int n, int r, const TrackerConfig& cfg,
                                std::uint64_t seed) {
  SplitCheckResult res;
  Rng rng(seed ^ 0xbeefl);

  auto randomU = [&](Rng& g, bool zeroLast) {
    RMat U(m, std::vector<Rat>(n));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) U[i][j] = Rat(g.intIn(1000, 1000000));
    if (zeroLast) U[m - 1][n - 1] = 0;
    return U;
  };

  {
    std::vector<long> counts;
    for (int t = 0; t < 3; ++t) {
      Rng g(rng.raw());
      TrackerConfig tc = cfg;
      tc.seed = g.raw();
      auto rc = rankCriticalPoints(m, n, r, randomU(g, false), tc);
      counts.push_back(static_cast<long>(rc.points.size()));
    }
    res.mlTotal = modeOf(counts);
    res.stable = allEqual(counts);
  }
  {
    std::vector<long> counts;
    for (int t = 0; t < 3; ++t) {
      Rng g(rng.raw());
      TrackerConfig tc = cfg;
      tc.seed = g.raw();
      auto rc = rankCriticalPoints(m, n, r, randomU(g, true), tc);
      counts.push_back(static_cast<long>(rc.points.size()));
    }
    res.mlDataZero = modeOf(counts);
    res.stable = res.stable && allEqual(counts);
  }
  {
    // ML degree of the slice (last matrix coordinate set to zero), via the
    // implicit minors description
    VarietySpec spec = minorsSpec(m, n, r);
    VarietySpec sliced;
    sliced.n = spec.n - 1;
    sliced.codim = spec.codim;
    sliced.singularPolicy = spec.singularPolicy;
    for (const auto& g : spec.generators) {
      QPoly rr = g.restrictZero(spec.n);
      if (!rr.isZero()) sliced.generators.push_back(rr);
    }
    MLReport slice = mlDegree(sliced, cfg, 3, rng.raw());
    res.mlSlice = slice.mlDegree;
    res.stable = res.stable && slice.stable;
  }
  res.holds = (res.mlTotal == res.mlSlice + res.mlDataZero);
  return res;
}

}  // namespace mlgeo
