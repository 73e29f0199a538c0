#include "mlgeo/tracker.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <thread>

namespace mlgeo {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

void TrackerConfig::validate() const {
  if (!(0 < minStep && minStep <= initialStep && initialStep <= maxStep && maxStep < 1))
    throw input_error("step sizes must satisfy 0 < min <= initial <= max < 1");
  if (correctorTol <= 0 || endpointTol <= 0 || boundaryTau <= 0 || dedupTol <= 0)
    throw input_error("tolerances must be positive");
  if (maxNewtonIters < 1) throw input_error("need at least one corrector iteration");
}

std::string pointClassName(PointClass c) {
  switch (c) {
    case PointClass::OffHRegular: return "offH_regular";
    case PointClass::OnH: return "onH";
    case PointClass::Singular: return "singular";
    case PointClass::AtInfinity: return "atInfinity";
  }
  return "?";
}

long SolutionSet::countClass(PointClass c) const {
  long k = 0;
  for (const auto& p : points)
    if (p.cls == c) ++k;
  return k;
}

long SolutionSet::distinctOffHRegular() const {
  long best = -1;
  for (const auto& p : points)
    if (p.cls == PointClass::OffHRegular && p.cluster > best) best = p.cluster;
  // cluster ids are contiguous per class (assigned in sorted order)
  long count = 0;
  std::vector<int> seen;
  for (const auto& p : points)
    if (p.cls == PointClass::OffHRegular) {
      if (std::find(seen.begin(), seen.end(), p.cluster) == seen.end()) {
        seen.push_back(p.cluster);
        ++count;
      }
    }
  return count;
}

std::vector<std::vector<cd>> SolutionSet::offHRegularModelPoints() const {
  std::vector<std::vector<cd>> out;
  std::vector<int> seen;
  for (const auto& p : points)
    if (p.cls == PointClass::OffHRegular &&
        std::find(seen.begin(), seen.end(), p.cluster) == seen.end()) {
      seen.push_back(p.cluster);
      out.push_back(p.modelPoint);
    }
  return out;
}

std::vector<std::vector<cd>> SolutionSet::offHRegularCoords() const {
  std::vector<std::vector<cd>> out;
  std::vector<int> seen;
  for (const auto& p : points)
    if (p.cls == PointClass::OffHRegular &&
        std::find(seen.begin(), seen.end(), p.cluster) == seen.end()) {
      seen.push_back(p.cluster);
      out.push_back(p.coords);
    }
  return out;
}

namespace {

double normInf(const VectorXcd& v) {
  double m = 0;
  for (int i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

bool allFinite(const VectorXcd& v) {
  for (int i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Compiled numeric system: shared monomial table for the equations and their
// Jacobian, evaluated through per-variable power tables.

struct CompiledSystem {
  int n = 0;  // unknowns
  struct Term {
    cd coef;
    int mono;
  };
  std::vector<std::vector<std::pair<int, int>>> monos;  // (var, exp) lists
  std::vector<std::vector<Term>> eqs;                   // n polynomials
  std::vector<std::vector<Term>> jac;                   // n*n, row-major (eq, var)
  std::vector<int> maxExp;                              // per variable
  std::vector<int> totalDeg;                            // per equation

  void build(const std::vector<CPoly>& polys) {
    n = static_cast<int>(polys.size());
    std::map<std::vector<int>, int> monoIds;
    maxExp.assign(n, 0);
    auto monoId = [&](const std::vector<int>& e) {
      auto it = monoIds.find(e);
      if (it != monoIds.end()) return it->second;
      int id = static_cast<int>(monos.size());
      monoIds.emplace(e, id);
      std::vector<std::pair<int, int>> sparse;
      for (int v = 0; v < static_cast<int>(e.size()); ++v)
        if (e[v] > 0) {
          sparse.emplace_back(v, e[v]);
          maxExp[v] = std::max(maxExp[v], e[v]);
        }
      monos.push_back(std::move(sparse));
      return id;
    };

    auto compilePoly = [&](const CPoly& p, double scale) {
      std::vector<Term> out;
      out.reserve(p.termCount());
      for (auto& [e, c] : p.terms()) out.push_back({c / scale, monoId(e)});
      return out;
    };

    for (const auto& p : polys) {
      if (p.isZero()) throw input_error("zero equation in system");
      double scale = 0;
      for (auto& [e, c] : p.terms()) scale = std::max(scale, std::abs(c));
      eqs.push_back(compilePoly(p, scale));
      totalDeg.push_back(p.totalDegree());
      for (int v = 0; v < n; ++v) jac.push_back(compilePoly(p.diff(v), scale));
    }
  }

  // Workspace sized for this system.
  struct Ws {
    std::vector<std::vector<cd>> pow;
    std::vector<cd> mono;
  };
  Ws makeWs() const {
    Ws w;
    w.pow.resize(n);
    for (int v = 0; v < n; ++v) w.pow[v].resize(maxExp[v] + 1);
    w.mono.resize(monos.size());
    return w;
  }

  void evalTables(const VectorXcd& x, Ws& w) const {
    for (int v = 0; v < n; ++v) {
      w.pow[v][0] = cd(1, 0);
      for (int k = 1; k <= maxExp[v]; ++k) w.pow[v][k] = w.pow[v][k - 1] * x[v];
    }
    for (std::size_t m = 0; m < monos.size(); ++m) {
      cd val(1, 0);
      for (auto [v, e] : monos[m]) val *= w.pow[v][e];
      w.mono[m] = val;
    }
  }

  void evalWithJac(const VectorXcd& x, Ws& w, VectorXcd& F, MatrixXcd& J) const {
    evalTables(x, w);
    for (int i = 0; i < n; ++i) {
      cd acc(0, 0);
      for (const Term& t : eqs[i]) acc += t.coef * w.mono[t.mono];
      F[i] = acc;
      for (int v = 0; v < n; ++v) {
        cd a(0, 0);
        for (const Term& t : jac[i * n + v]) a += t.coef * w.mono[t.mono];
        J(i, v) = a;
      }
    }
  }

  void evalOnly(const VectorXcd& x, Ws& w, VectorXcd& F) const {
    evalTables(x, w);
    for (int i = 0; i < n; ++i) {
      cd acc(0, 0);
      for (const Term& t : eqs[i]) acc += t.coef * w.mono[t.mono];
      F[i] = acc;
    }
  }
};

// Substitute the data parameters into the parametric equations.
std::vector<CPoly> substituteData(const CriticalSystem& sys, const std::vector<cd>& uVals) {
  if (static_cast<int>(uVals.size()) != sys.nParams)
    throw input_error("parameter vector arity mismatch");
  std::vector<CPoly> out;
  out.reserve(sys.equations.size());
  for (const auto& eq : sys.equations) {
    CPoly r(sys.nUnknowns);
    for (auto& [e, c] : eq.terms()) {
      cd coef = rat_complex(c);
      for (int j = 0; j < sys.nParams; ++j)
        for (int k = 0; k < e[sys.nUnknowns + j]; ++k) coef *= uVals[j];
      std::vector<int> d(e.begin(), e.begin() + sys.nUnknowns);
      r.add_term(d, coef);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<cd> ratToComplex(const std::vector<Rat>& v) {
  std::vector<cd> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(rat_complex(r));
  return out;
}

// ---------------------------------------------------------------------------
// Linear-product start systems (total-degree starts are the special case of
// one factor bundle per equation in a single variable).

struct ProductStart {
  struct Factor {
    std::vector<std::pair<int, cd>> lin;  // (var, coefficient)
    cd constant;
  };
  // factors[i][g] = the factor bundle of equation i for group g
  std::vector<std::vector<std::vector<Factor>>> factors;
  std::vector<std::vector<int>> groups;
  int n = 0;
  long pathCount = 0;

  cd evalFactor(const Factor& f, const VectorXcd& x) const {
    cd v = f.constant;
    for (auto& [var, c] : f.lin) v += c * x[var];
    return v;
  }

  void evalWithJac(const VectorXcd& x, VectorXcd& G, MatrixXcd& J) const {
    J.setZero();
    for (std::size_t i = 0; i < factors.size(); ++i) {
      // gather all factors of this equation
      cd prod(1, 0);
      std::vector<cd> vals;
      std::vector<const Factor*> fs;
      for (const auto& bundle : factors[i])
        for (const auto& f : bundle) {
          cd v = evalFactor(f, x);
          vals.push_back(v);
          fs.push_back(&f);
          prod *= v;
        }
      G[static_cast<int>(i)] = prod;
      // prefix/suffix products for the derivative
      std::size_t k = vals.size();
      std::vector<cd> pre(k + 1, cd(1, 0)), suf(k + 1, cd(1, 0));
      for (std::size_t a = 0; a < k; ++a) pre[a + 1] = pre[a] * vals[a];
      for (std::size_t a = k; a-- > 0;) suf[a] = suf[a + 1] * vals[a];
      for (std::size_t a = 0; a < k; ++a) {
        cd rest = pre[a] * suf[a + 1];
        for (auto& [var, c] : fs[a]->lin) J(static_cast<int>(i), var) += rest * c;
      }
    }
  }
};

// Multidegree of a compiled polynomial with respect to variable groups.
std::vector<int> groupDegrees(const CPoly& p, const std::vector<std::vector<int>>& groups) {
  std::vector<int> d(groups.size(), 0);
  for (auto& [e, c] : p.terms()) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      int s = 0;
      for (int v : groups[g]) s += e[v];
      d[g] = std::max(d[g], s);
    }
  }
  return d;
}

long multihomCount(const std::vector<std::vector<int>>& degs,
                   const std::vector<std::vector<int>>& groups) {
  // DP over equations; state = how many equations each group has absorbed.
  std::vector<int> quota;
  quota.reserve(groups.size());
  for (const auto& g : groups) quota.push_back(static_cast<int>(g.size()));
  std::vector<int> radix(quota.size());
  long stateCount = 1;
  for (std::size_t g = 0; g < quota.size(); ++g) {
    radix[g] = static_cast<int>(stateCount);
    stateCount *= quota[g] + 1;
  }
  std::vector<long> dp(stateCount, 0), nxt(stateCount);
  dp[0] = 1;
  for (const auto& eqDeg : degs) {
    std::fill(nxt.begin(), nxt.end(), 0L);
    for (long s = 0; s < stateCount; ++s) {
      if (dp[s] == 0) continue;
      long base = dp[s];
      long rem = s;
      std::vector<int> used(quota.size());
      for (std::size_t g = 0; g < quota.size(); ++g) {
        used[g] = static_cast<int>((s / radix[g]) % (quota[g] + 1));
      }
      for (std::size_t g = 0; g < quota.size(); ++g) {
        if (eqDeg[g] == 0 || used[g] == quota[g]) continue;
        nxt[s + radix[g]] += base * eqDeg[g];
      }
      (void)rem;
    }
    dp.swap(nxt);
  }
  return dp[stateCount - 1];
}

ProductStart makeLinearProductStart(const std::vector<CPoly>& target,
                                    const std::vector<std::vector<int>>& groups, Rng& rng) {
  ProductStart st;
  st.n = static_cast<int>(target.size());
  st.groups = groups;
  std::vector<std::vector<int>> degs;
  for (const auto& p : target) degs.push_back(groupDegrees(p, groups));
  st.factors.resize(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    st.factors[i].resize(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (int k = 0; k < degs[i][g]; ++k) {
        ProductStart::Factor f;
        f.constant = rng.genericComplex();
        for (int v : groups[g]) f.lin.emplace_back(v, rng.genericComplex());
        st.factors[i][g].push_back(std::move(f));
      }
    }
  }
  st.pathCount = multihomCount(degs, groups);
  return st;
}

ProductStart makeTotalDegreeStart(const std::vector<CPoly>& target, Rng& rng) {
  // G_i = x_i^{d_i} - beta_i as a product of linear factors; groups are the
  // singletons so that the generic enumeration below applies unchanged.
  ProductStart st;
  st.n = static_cast<int>(target.size());
  st.groups.resize(st.n);
  for (int v = 0; v < st.n; ++v) st.groups[v] = {v};
  st.factors.resize(st.n);
  long count = 1;
  for (int i = 0; i < st.n; ++i) {
    st.factors[i].resize(st.n);
    int d = target[i].totalDegree();
    if (d <= 0) throw input_error("constant equation in system");
    cd beta = rng.genericComplex();
    double mod = std::pow(std::abs(beta), 1.0 / d);
    double arg = std::arg(beta) / d;
    for (int k = 0; k < d; ++k) {
      double a = arg + 6.283185307179586 * k / d;
      ProductStart::Factor f;
      f.lin.emplace_back(i, cd(1, 0));
      f.constant = -cd(mod * std::cos(a), mod * std::sin(a));
      st.factors[i][i].push_back(std::move(f));
    }
    count *= d;
  }
  st.pathCount = count;
  return st;
}

// Enumerate all start solutions of a linear-product system: assign each
// equation's factor to one group so that group g receives exactly |g|
// equations, then solve the per-group linear systems.
void enumerateStartSolutions(const ProductStart& st, std::vector<VectorXcd>& out) {
  const std::size_t nEq = st.factors.size();
  const std::size_t nG = st.groups.size();
  std::vector<int> quota(nG);
  for (std::size_t g = 0; g < nG; ++g) quota[g] = static_cast<int>(st.groups[g].size());
  std::vector<std::pair<int, int>> choice(nEq);  // (group, factor index)

  // per-group linear solves at the leaves
  std::vector<Eigen::PartialPivLU<MatrixXcd>> lus;
  VectorXcd x(st.n);

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nEq) {
      // solve each group's system
      VectorXcd sol(st.n);
      for (std::size_t g = 0; g < nG; ++g) {
        int k = quota[g];
        if (k == 0) continue;
        MatrixXcd A(k, k);
        VectorXcd b(k);
        int row = 0;
        for (std::size_t e = 0; e < nEq; ++e) {
          if (choice[e].first != static_cast<int>(g)) continue;
          const auto& f = st.factors[e][g][choice[e].second];
          for (int cidx = 0; cidx < k; ++cidx) A(row, cidx) = cd(0, 0);
          for (auto& [var, c] : f.lin) {
            // var's position inside the group
            for (int cidx = 0; cidx < k; ++cidx)
              if (st.groups[g][cidx] == var) A(row, cidx) = c;
          }
          b(row) = -f.constant;
          ++row;
        }
        VectorXcd y = A.partialPivLu().solve(b);
        for (int cidx = 0; cidx < k; ++cidx) sol[st.groups[g][cidx]] = y[cidx];
      }
      out.push_back(sol);
      return;
    }
    for (std::size_t g = 0; g < nG; ++g) {
      if (quota[g] == 0) continue;
      int nf = static_cast<int>(st.factors[i][g].size());
      if (nf == 0) continue;
      // count check: can the remaining equations still fill the other groups?
      quota[g] -= 1;
      for (int k = 0; k < nf; ++k) {
        choice[i] = {static_cast<int>(g), k};
        rec(i + 1);
      }
      quota[g] += 1;
    }
  };
  rec(0);
}

// ---------------------------------------------------------------------------
// Homotopy tracking

struct Homotopy {
  const CompiledSystem* target = nullptr;
  const CompiledSystem* startCompiled = nullptr;  // parameter homotopy
  const ProductStart* startProduct = nullptr;     // ab-initio
  cd gamma{1, 0};
};

struct TrackWs {
  CompiledSystem::Ws wsF, wsG;
  VectorXcd F, G, H, rhs, dx, k1, k2, k3, k4, xTmp;
  MatrixXcd JF, JG, JH;

  explicit TrackWs(const CompiledSystem& tgt) {
    int n = tgt.n;
    wsF = tgt.makeWs();
    F.resize(n); G.resize(n); H.resize(n); rhs.resize(n); dx.resize(n);
    k1.resize(n); k2.resize(n); k3.resize(n); k4.resize(n); xTmp.resize(n);
    JF.resize(n, n); JG.resize(n, n); JH.resize(n, n);
  }
};

enum class PathStatus { Converged, AtInfinity, Failed };

struct PathResult {
  PathStatus status = PathStatus::Failed;
  VectorXcd x;
  double residual = 1e300;
  bool refined = false;
};

constexpr double kDivergeNorm = 1e8;

// Evaluate H, JH and (F - gamma G) at (x, t).
bool evalHomotopy(const Homotopy& hom, const VectorXcd& x, double t, TrackWs& ws, bool wantHt) {
  hom.target->evalWithJac(x, ws.wsF, ws.F, ws.JF);
  if (hom.startCompiled) {
    hom.startCompiled->evalWithJac(x, ws.wsG, ws.G, ws.JG);
  } else {
    hom.startProduct->evalWithJac(x, ws.G, ws.JG);
  }
  cd a(1 - t, 0), b = cd(t, 0) * hom.gamma;
  ws.H = a * ws.F + b * ws.G;
  ws.JH = a * ws.JF + b * ws.JG;
  if (wantHt) ws.rhs = ws.F - hom.gamma * ws.G;
  return allFinite(ws.H);
}

bool davidenkoSlope(const Homotopy& hom, const VectorXcd& x, double t, TrackWs& ws,
                    VectorXcd& slope) {
  if (!evalHomotopy(hom, x, t, ws, true)) return false;
  slope = ws.JH.partialPivLu().solve(ws.rhs);
  return allFinite(slope);
}

bool newtonCorrect(const Homotopy& hom, VectorXcd& x, double t, double tol, int iters,
                   TrackWs& ws) {
  for (int it = 0; it < iters; ++it) {
    if (!evalHomotopy(hom, x, t, ws, false)) return false;
    ws.dx = ws.JH.partialPivLu().solve(ws.H);
    if (!allFinite(ws.dx)) return false;
    x -= ws.dx;
    if (normInf(ws.dx) <= tol * std::max(1.0, normInf(x))) return true;
  }
  return false;
}

PathResult trackOne(const Homotopy& hom, const VectorXcd& x0, const TrackerConfig& cfg,
                    TrackWs& ws) {
  PathResult res;
  VectorXcd x = x0;
  double t = 1.0, h = cfg.initialStep;
  int accepts = 0;
  const int maxIters = 100000;

  for (int iter = 0; iter < maxIters; ++iter) {
    if (!allFinite(x)) {
      res.status = PathStatus::Failed;
      res.x = x0;
      return res;
    }
    if (normInf(x) > kDivergeNorm) {
      res.status = PathStatus::AtInfinity;
      res.x = x;
      return res;
    }
    if (t <= 1e-14) break;

    double step = std::min(h, t);
    double s = -step;
    bool ok = davidenkoSlope(hom, x, t, ws, ws.k1);
    if (ok) {
      ws.xTmp = x + (s / 2) * ws.k1;
      ok = davidenkoSlope(hom, ws.xTmp, t + s / 2, ws, ws.k2);
    }
    if (ok) {
      ws.xTmp = x + (s / 2) * ws.k2;
      ok = davidenkoSlope(hom, ws.xTmp, t + s / 2, ws, ws.k3);
    }
    if (ok) {
      ws.xTmp = x + s * ws.k3;
      ok = davidenkoSlope(hom, ws.xTmp, t + s, ws, ws.k4);
    }
    if (ok) {
      ws.xTmp = x + (s / 6) * (ws.k1 + 2 * ws.k2 + 2 * ws.k3 + ws.k4);
      ok = allFinite(ws.xTmp) && normInf(ws.xTmp) < 10 * kDivergeNorm;
    }
    if (ok) ok = newtonCorrect(hom, ws.xTmp, t - step, cfg.correctorTol, cfg.maxNewtonIters, ws);

    if (ok) {
      x = ws.xTmp;
      t -= step;
      if (++accepts >= 5) {
        h = std::min(cfg.maxStep, 2 * h);
        accepts = 0;
      }
    } else {
      h *= 0.5;
      accepts = 0;
      if (h < cfg.minStep) {
        if (t < 1e-4 && normInf(x) < kDivergeNorm) break;  // endpoint candidate
        res.status = PathStatus::Failed;
        res.x = x;
        return res;
      }
    }
  }

  // Newton refinement on the target system itself.
  VectorXcd xr = x;
  double best = 1e300;
  for (int it = 0; it < 50; ++it) {
    hom.target->evalWithJac(xr, ws.wsF, ws.F, ws.JF);
    double r = normInf(ws.F);
    if (r < best) best = r;
    if (r <= cfg.endpointTol) break;
    ws.dx = ws.JF.partialPivLu().solve(ws.F);
    if (!allFinite(ws.dx)) break;
    double nd = normInf(ws.dx);
    xr -= ws.dx;
    if (!allFinite(xr) || normInf(xr) > kDivergeNorm) {
      xr = x;
      break;
    }
    if (nd <= 1e-16 * std::max(1.0, normInf(xr))) break;
  }
  hom.target->evalWithJac(xr, ws.wsF, ws.F, ws.JF);
  res.x = xr;
  res.residual = normInf(ws.F);
  res.refined = res.residual <= cfg.endpointTol;
  if (!res.refined && res.residual > 1e-4) {
    // never got near a finite solution of the target
    res.status = normInf(xr) > 1e6 ? PathStatus::AtInfinity : PathStatus::Failed;
    return res;
  }
  res.status = PathStatus::Converged;
  return res;
}

int threadBudget(const TrackerConfig& cfg) {
  int t = cfg.threads > 0 ? cfg.threads
                          : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (const char* env = std::getenv("LG_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) t = std::min(t, cap);
  }
  return t;
}

std::vector<PathResult> trackAll(const Homotopy& hom, const std::vector<VectorXcd>& starts,
                                 const TrackerConfig& cfg) {
  std::vector<PathResult> results(starts.size());
  int nThreads = std::min<long>(threadBudget(cfg), std::max<long>(1, starts.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    TrackWs ws(*hom.target);
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= starts.size()) return;
      results[i] = trackOne(hom, starts[i], cfg, ws);
    }
  };
  if (nThreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nThreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

// ---------------------------------------------------------------------------
// Endpoint classification and deduplication

struct Classifier {
  const CriticalSystem* sys;
  const TrackerConfig* cfg;
  std::vector<CPoly> membership;
  std::vector<std::vector<CPoly>> membershipJac;  // per poly, per p-variable
  bool projective;

  Classifier(const CriticalSystem& s, const TrackerConfig& c) : sys(&s), cfg(&c) {
    for (const auto& m : s.membershipPolys) {
      membership.push_back(toComplex(m));
      std::vector<CPoly> row;
      for (int v = 0; v < m.nvars(); ++v) row.push_back(toComplex(m.diff(v)));
      membershipJac.push_back(std::move(row));
    }
    projective = s.projectiveModel;
  }

  PointClass classify(const std::vector<cd>& q, double residual, double cond) const {
    double scale = 0;
    for (const auto& v : q) scale = std::max(scale, std::abs(v));
    if (!(scale > 0) || !std::isfinite(scale)) return PointClass::OnH;

    if (projective) {
      double minRel = 1e300;
      cd sum(0, 0);
      for (const auto& v : q) {
        minRel = std::min(minRel, std::abs(v) / scale);
        sum += v;
      }
      if (minRel < cfg->boundaryTau || std::abs(sum) / scale < cfg->boundaryTau)
        return PointClass::OnH;
    }
    if (residual > cfg->endpointTol) return PointClass::Singular;
    if (!(cond < cfg->singularCondThreshold)) return PointClass::Singular;

    if (!membership.empty()) {
      std::vector<cd> qn(q);
      for (auto& v : qn) v /= scale;
      for (const auto& m : membership)
        if (std::abs(m.eval(qn)) > 1e-6) return PointClass::Singular;
      if (sys->specJacobianRank > 0) {
        int np = static_cast<int>(qn.size());
        MatrixXcd J(static_cast<int>(membership.size()), np);
        for (std::size_t i = 0; i < membership.size(); ++i)
          for (int v = 0; v < np; ++v) J(static_cast<int>(i), v) = membershipJac[i][v].eval(qn);
        Eigen::JacobiSVD<MatrixXcd> svd(J);
        auto sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
          if (sv[i] > 1e-8 * std::max(1.0, sv[0])) ++rank;
        if (rank < sys->specJacobianRank) return PointClass::Singular;
      }
    }
    return PointClass::OffHRegular;
  }

  // Normalized representative used for dedup and canonical sorting.
  std::vector<cd> canonical(const std::vector<cd>& q) const {
    std::vector<cd> out = q;
    if (!projective) return out;
    int best = 0;
    double bestAbs = -1;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (std::abs(q[i]) > bestAbs) {
        bestAbs = std::abs(q[i]);
        best = static_cast<int>(i);
      }
    if (bestAbs > 0) {
      cd pivot = q[best];
      for (auto& v : out) v /= pivot;
    }
    return out;
  }
};

double pointDistance(const std::vector<cd>& a, const std::vector<cd>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool lexLess(const std::vector<cd>& a, const std::vector<cd>& b) {
  auto round9 = [](double x) { return std::round(x * 1e9); };
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    double ar = round9(a[i].real()), br = round9(b[i].real());
    if (ar != br) return ar < br;
    double ai = round9(a[i].imag()), bi = round9(b[i].imag());
    if (ai != bi) return ai < bi;
  }
  return a.size() < b.size();
}

SolutionSet assembleSolutionSet(const CriticalSystem& sys, const CompiledSystem& compiled,
                                const std::vector<PathResult>& results,
                                const TrackerConfig& cfg) {
  Classifier cls(sys, cfg);
  SolutionSet out;
  out.pathStats.tracked = static_cast<long>(results.size());

  struct Work {
    TrackedPoint tp;
    std::vector<cd> canon;
  };
  std::vector<Work> finite;

  CompiledSystem::Ws ws = compiled.makeWs();
  VectorXcd F(compiled.n);
  MatrixXcd J(compiled.n, compiled.n);

  for (const auto& r : results) {
    if (r.status == PathStatus::Failed) {
      out.pathStats.failed += 1;
      continue;
    }
    out.pathStats.converged += 1;
    if (r.status == PathStatus::AtInfinity) {
      TrackedPoint tp;
      tp.coords.assign(r.x.data(), r.x.data() + r.x.size());
      tp.modelPoint = {};
      tp.residual = r.residual;
      tp.cond = 0;
      tp.cls = PointClass::AtInfinity;
      tp.cluster = -1;
      out.points.push_back(std::move(tp));
      continue;
    }

    VectorXcd x = r.x;
    compiled.evalWithJac(x, ws, F, J);
    Eigen::JacobiSVD<MatrixXcd> svd(J);
    auto sv = svd.singularValues();
    double cond = (sv[sv.size() - 1] > 0) ? sv[0] / sv[sv.size() - 1] : 1e300;

    Work w;
    w.tp.coords.assign(x.data(), x.data() + x.size());
    w.tp.modelPoint = sys.extractModelPoint(w.tp.coords);
    w.tp.residual = r.residual;
    w.tp.cond = cond;
    w.tp.cls = cls.classify(w.tp.modelPoint, r.residual, cond);
    w.canon = cls.canonical(w.tp.modelPoint);
    finite.push_back(std::move(w));
  }

  // canonical order, then tolerance clustering per class
  std::sort(finite.begin(), finite.end(),
            [&](const Work& a, const Work& b) { return lexLess(a.canon, b.canon); });

  std::vector<int> clusterOf(finite.size(), -1);
  int nextCluster = 0;
  for (std::size_t i = 0; i < finite.size(); ++i) {
    if (clusterOf[i] >= 0) continue;
    clusterOf[i] = nextCluster;
    for (std::size_t j = i + 1; j < finite.size(); ++j) {
      if (clusterOf[j] >= 0) continue;
      if (finite[j].tp.cls != finite[i].tp.cls) continue;
      if (pointDistance(finite[i].canon, finite[j].canon) < cfg.dedupTol) clusterOf[j] = nextCluster;
    }
    ++nextCluster;
  }
  for (std::size_t i = 0; i < finite.size(); ++i) {
    finite[i].tp.cluster = clusterOf[i];
    out.points.push_back(std::move(finite[i].tp));
  }
  return out;
}

}  // namespace

MultihomStart multihomStart(const CriticalSystem& sys) {
  sys.requireSquare();
  if (sys.variableGroups.empty()) throw input_error("system has no variable groups");
  for (const auto& g : sys.variableGroups)
    if (g.empty()) throw input_error("empty variable group");
  auto polys = substituteData(sys, ratToComplex(sys.uValue));
  MultihomStart ms;
  ms.totalDegreeCount = 1;
  for (const auto& p : polys) {
    ms.groupDegrees.push_back(groupDegrees(p, sys.variableGroups));
    ms.totalDegreeCount *= std::max(0, p.totalDegree());
  }
  ms.pathCount = multihomCount(ms.groupDegrees, sys.variableGroups);
  return ms;
}

namespace {

SolutionSet solveWithData(const CriticalSystem& sys, const std::vector<cd>& uVals,
                          const TrackerConfig& cfg) {
  cfg.validate();
  sys.requireSquare();
  auto polys = substituteData(sys, uVals);
  CompiledSystem compiled;
  compiled.build(polys);

  Rng rng(cfg.seed ^ 0xabcdef12345678ull);
  cd gamma = rng.unitComplex();

  long tdCount = 1;
  for (const auto& p : polys) tdCount *= std::max(0, p.totalDegree());
  bool useMhom;
  switch (cfg.startKind) {
    case TrackerConfig::Start::TotalDegree:
      if (tdCount > cfg.maxPaths) throw path_overflow_error(tdCount);
      useMhom = false;
      break;
    case TrackerConfig::Start::Multihomogeneous:
      useMhom = true;
      break;
    case TrackerConfig::Start::Auto: {
      if (sys.variableGroups.size() > 1) {
        long mc = multihomCount(
            [&] {
              std::vector<std::vector<int>> d;
              for (const auto& p : polys) d.push_back(groupDegrees(p, sys.variableGroups));
              return d;
            }(),
            sys.variableGroups);
        useMhom = mc < tdCount || tdCount > cfg.maxPaths;
      } else {
        if (tdCount > cfg.maxPaths) throw path_overflow_error(tdCount);
        useMhom = false;
      }
      break;
    }
  }

  ProductStart start = useMhom ? makeLinearProductStart(polys, sys.variableGroups, rng)
                               : makeTotalDegreeStart(polys, rng);
  std::vector<VectorXcd> starts;
  starts.reserve(start.pathCount);
  enumerateStartSolutions(start, starts);

  Homotopy hom;
  hom.target = &compiled;
  hom.startProduct = &start;
  hom.gamma = gamma;
  auto results = trackAll(hom, starts, cfg);
  return assembleSolutionSet(sys, compiled, results, cfg);
}

}  // namespace

SolutionSet solve(const CriticalSystem& sys, const TrackerConfig& cfg) {
  return solveWithData(sys, ratToComplex(sys.uValue), cfg);
}

RefineResult refine(const std::vector<cd>& point, const CriticalSystem& sys, double tol,
                    int maxIters) {
  auto polys = substituteData(sys, ratToComplex(sys.uValue));
  CompiledSystem compiled;
  compiled.build(polys);
  auto ws = compiled.makeWs();
  VectorXcd x(compiled.n);
  for (int i = 0; i < compiled.n; ++i) x[i] = point.at(i);
  VectorXcd F(compiled.n), dx(compiled.n);
  MatrixXcd J(compiled.n, compiled.n);

  RefineResult res;
  for (int it = 0; it < maxIters; ++it) {
    compiled.evalWithJac(x, ws, F, J);
    res.residual = normInf(F);
    res.iterations = it;
    if (res.residual <= tol) {
      res.converged = true;
      break;
    }
    dx = J.partialPivLu().solve(F);
    if (!allFinite(dx)) break;
    x -= dx;
    if (!allFinite(x) || normInf(x) > kDivergeNorm) break;
  }
  compiled.evalWithJac(x, ws, F, J);
  res.residual = normInf(F);
  res.converged = res.residual <= tol;
  res.point.assign(x.data(), x.data() + x.size());
  return res;
}

namespace {

SolutionSet parameterHomotopyImpl(const CriticalSystem& sys, const std::vector<cd>& u0,
                                  const std::vector<std::vector<cd>>& solutions0,
                                  const std::vector<cd>& u1, const TrackerConfig& cfg,
                                  int depth);

}  // namespace

SolutionSet parameterHomotopy(const CriticalSystem& sys, const std::vector<cd>& u0,
                              const std::vector<std::vector<cd>>& solutions0,
                              const std::vector<cd>& u1, const TrackerConfig& cfg) {
  return parameterHomotopyImpl(sys, u0, solutions0, u1, cfg, 0);
}

namespace {

SolutionSet parameterHomotopyImpl(const CriticalSystem& sys, const std::vector<cd>& u0,
                                  const std::vector<std::vector<cd>>& solutions0,
                                  const std::vector<cd>& u1, const TrackerConfig& cfg,
                                  int depth) {
  cfg.validate();
  auto polys1 = substituteData(sys, u1);
  auto polys0 = substituteData(sys, u0);
  CompiledSystem target, start;
  target.build(polys1);
  start.build(polys0);

  std::vector<VectorXcd> starts;
  starts.reserve(solutions0.size());
  for (const auto& s : solutions0) {
    VectorXcd x(static_cast<int>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) x[static_cast<int>(i)] = s[i];
    starts.push_back(std::move(x));
  }

  Homotopy hom;
  hom.target = &target;
  hom.startCompiled = &start;
  hom.gamma = cd(1, 0);  // the start data itself is generically complex
  auto results = trackAll(hom, starts, cfg);

  // Path-crossing probe: two distinct starts landing on one regular endpoint
  // means the segment passed too close to the discriminant; reroute once
  // through a fresh complex waypoint.
  auto crossed = [&](const SolutionSet& ss) {
    std::map<int, int> clusterSize;
    for (const auto& p : ss.points)
      if (p.cls == PointClass::OffHRegular && p.cond < 1e8) clusterSize[p.cluster]++;
    for (auto& [c, n] : clusterSize)
      if (n > 1) return true;
    return false;
  };

  SolutionSet ss = assembleSolutionSet(sys, target, results, cfg);
  if (crossed(ss) && depth < 1) {
    Rng rng(cfg.seed ^ (0x5eedbeefull + depth));
    std::vector<cd> w(u0.size());
    for (auto& v : w) v = rng.genericComplex() * 1000.0;
    SolutionSet mid = parameterHomotopyImpl(sys, u0, solutions0, w, cfg, depth + 1);
    std::vector<std::vector<cd>> midSols;
    for (const auto& p : mid.points)
      if (p.cls != PointClass::AtInfinity && p.residual <= cfg.endpointTol)
        midSols.push_back(p.coords);
    return parameterHomotopyImpl(sys, w, midSols, u1, cfg, depth + 1);
  }
  return ss;
}

}  // namespace

PreprocessResult preprocessGenericData(const CriticalSystem& sys, const TrackerConfig& cfg) {
  Rng rng(cfg.seed ^ 0x9e3779b9ull);
  std::vector<cd> u0(sys.nParams);
  for (auto& v : u0) v = rng.genericComplex() * 1000.0;

  SolutionSet ss = solveWithData(sys, u0, cfg);
  PreprocessResult pre;
  pre.u0 = u0;
  pre.stats = ss.pathStats;
  std::vector<int> seen;
  for (const auto& p : ss.points) {
    if (p.cls == PointClass::AtInfinity) continue;
    if (p.residual > cfg.endpointTol) continue;
    if (!(p.cond < cfg.singularCondThreshold)) continue;
    if (std::find(seen.begin(), seen.end(), p.cluster) != seen.end()) continue;
    seen.push_back(p.cluster);
    pre.solutions.push_back(p.coords);
  }
  return pre;
}

}  // namespace mlgeo
