#include "mlgeo/linmatroid.hpp"

#include <algorithm>
#include <bit>

namespace mlgeo {

int rationalRank(std::vector<std::vector<Rat>> M) {
  if (M.empty()) return 0;
  const int rows = static_cast<int>(M.size());
  const int cols = static_cast<int>(M[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (M[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(M[rank], M[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || M[r][c] == 0) continue;
      Rat f = M[r][c] / M[rank][c];
      for (int k = c; k < cols; ++k) M[r][k] -= f * M[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Rat>> rationalKernel(const std::vector<std::vector<Rat>>& Min) {
  // Kernel of the map v -> M v.
  auto M = Min;
  const int rows = static_cast<int>(M.size());
  const int cols = rows ? static_cast<int>(M[0].size()) : 0;
  std::vector<int> pivotCol;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (M[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(M[rank], M[pivot]);
    Rat lead = M[rank][c];
    for (int k = 0; k < cols; ++k) M[rank][k] /= lead;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || M[r][c] == 0) continue;
      Rat f = M[r][c];
      for (int k = 0; k < cols; ++k) M[r][k] -= f * M[rank][k];
    }
    pivotCol.push_back(c);
    ++rank;
  }
  std::vector<std::vector<Rat>> basis;
  for (int c = 0; c < cols; ++c) {
    if (std::find(pivotCol.begin(), pivotCol.end(), c) != pivotCol.end()) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[c] = 1;
    for (int r = 0; r < rank; ++r) v[pivotCol[r]] = -M[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool inRowSpace(const std::vector<std::vector<Rat>>& M, const std::vector<Rat>& v) {
  auto aug = M;
  aug.push_back(v);
  return rationalRank(aug) == rationalRank(M);
}

void LinearModel::validate() const {
  if (basis.empty()) throw input_error("empty linear model basis");
  const int cols = static_cast<int>(basis[0].size());
  for (const auto& row : basis)
    if (static_cast<int>(row.size()) != cols) throw input_error("ragged basis matrix");
  if (rationalRank(basis) != static_cast<int>(basis.size()))
    throw input_error("linear model basis must have full row rank");
  if (inRowSpace(basis, std::vector<Rat>(cols, Rat(1))))
    throw input_error("model contains the all-ones vector");
}

Matroid::Matroid(std::vector<std::vector<Rat>> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.size() > 20) throw input_error("ground set too large");
}

int Matroid::rankOf(std::uint32_t subset) const {
  auto it = rankMemo_.find(subset);
  if (it != rankMemo_.end()) return it->second;
  std::vector<std::vector<Rat>> sel;
  for (int e = 0; e < groundSize(); ++e)
    if (subset & (1u << e)) sel.push_back(vectors_[e]);
  int r = rationalRank(std::move(sel));
  rankMemo_.emplace(subset, r);
  return r;
}

bool Matroid::hasLoops() const {
  for (int e = 0; e < groundSize(); ++e)
    if (isLoop(e)) return true;
  return false;
}

std::vector<std::uint32_t> Matroid::circuits() const {
  const int n = groundSize();
  const int r = rank();
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int size = std::popcount(mask);
    if (size > r + 1) continue;
    if (rankOf(mask) != size - 1) continue;  // dependent with corank exactly 1
    bool minimal = true;
    for (int e = 0; e < n && minimal; ++e)
      if (mask & (1u << e)) {
        std::uint32_t sub = mask & ~(1u << e);
        if (rankOf(sub) != size - 1) minimal = false;  // proper subset dependent
      }
    if (minimal) out.push_back(mask);
  }
  return out;
}

Int CharPoly::eval(long q) const {
  Int acc(0), p(1);
  for (const auto& c : coeff) {
    acc += c * p;
    p *= q;
  }
  return acc;
}

std::string CharPoly::str() const {
  std::string s;
  for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i) {
    if (coeff[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += coeff[i].get_str();
    if (i > 0) s += "*q^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Matroid arrangementMatroid(const LinearModel& model) {
  model.validate();
  const int n1 = model.n() + 1;
  const int d1 = model.dim() + 1;
  std::vector<std::vector<Rat>> ground;
  std::vector<Rat> sum(d1, Rat(0));
  for (int i = 0; i < n1; ++i) {
    std::vector<Rat> col(d1);
    bool zero = true;
    for (int a = 0; a < d1; ++a) {
      col[a] = model.basis[a][i];
      if (col[a] != 0) zero = false;
    }
    if (zero) throw input_error("degenerate model: a coordinate vanishes on X");
    for (int a = 0; a < d1; ++a) sum[a] += col[a];
    ground.push_back(std::move(col));
  }
  bool zero = true;
  for (const auto& v : sum)
    if (v != 0) zero = false;
  if (zero) throw input_error("degenerate model: p_+ vanishes on X");
  ground.push_back(std::move(sum));
  Matroid M(std::move(ground));
  if (M.rank() != d1) throw input_error("arrangement matroid rank deficiency");
  return M;
}

namespace {

using ZPoly = std::vector<Int>;  // ascending coefficients

ZPoly zAdd(const ZPoly& a, const ZPoly& b, int sign) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  while (r.size() > 1 && r.back() == 0) r.pop_back();
  return r;
}

ZPoly zMulQminus1(const ZPoly& a) {
  ZPoly r(a.size() + 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i + 1] += a[i];
    r[i] -= a[i];
  }
  while (r.size() > 1 && r.back() == 0) r.pop_back();
  return r;
}

struct DCContext {
  const Matroid* M;
  std::unordered_map<std::uint64_t, ZPoly> memo;

  std::uint32_t closure(std::uint32_t S) const {
    int r = M->rankOf(S);
    std::uint32_t cl = S;
    for (int e = 0; e < M->groundSize(); ++e) {
      if (cl & (1u << e)) continue;
      if (M->rankOf(S | (1u << e)) == r) cl |= 1u << e;
    }
    return cl;
  }

  // chi of the minor (restrict to R, contract the closed set C)
  ZPoly chi(std::uint32_t R, std::uint32_t C) {
    if (R == 0) return ZPoly{Int(1)};
    std::uint64_t key = (static_cast<std::uint64_t>(R) << 32) | C;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const int rC = M->rankOf(C);
    ZPoly result;
    // loops first
    bool hasLoop = false;
    int pick = -1;
    for (int e = 0; e < M->groundSize(); ++e) {
      if (!(R & (1u << e))) continue;
      if (M->rankOf(C | (1u << e)) == rC) {
        hasLoop = true;
        break;
      }
      if (pick < 0) pick = e;
    }
    if (hasLoop) {
      result = ZPoly{Int(0)};
    } else {
      std::uint32_t e = 1u << pick;
      int rkR = M->rankOf(R | C) - rC;
      int rkDel = M->rankOf((R & ~e) | C) - rC;
      if (rkDel < rkR) {
        // coloop: chi = (q-1) * chi of the contraction
        result = zMulQminus1(chi(R & ~e, closure(C | e)));
      } else {
        result = zAdd(chi(R & ~e, C), chi(R & ~e, closure(C | e)), -1);
      }
    }
    memo.emplace(key, result);
    return result;
  }
};

}  // namespace

CharPoly characteristicPolynomial(const Matroid& M) {
  if (M.hasLoops()) throw input_error("characteristic polynomial needs a loopless matroid");
  DCContext ctx{&M, {}};
  std::uint32_t full = (1u << M.groundSize()) - 1;
  return CharPoly{ctx.chi(full, 0)};
}

CharPoly charPolyWhitneyOracle(const Matroid& M) {
  const int n = M.groundSize();
  const int r = M.rank();
  std::vector<Int> coeff(r + 1, Int(0));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int s = std::popcount(mask);
    int corank = r - M.rankOf(mask);
    if (s % 2 == 0)
      coeff[corank] += 1;
    else
      coeff[corank] -= 1;
  }
  return CharPoly{coeff};
}

FHVectors brokenCircuitHVector(const Matroid& M, const std::vector<int>& ordering) {
  const int n = M.groundSize();
  const int rank = M.rank();
  if (static_cast<int>(ordering.size()) != n) throw input_error("ordering must list every element");

  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[ordering[i]] = i;

  // broken circuits as masks over positions
  std::vector<std::uint32_t> bc;
  for (std::uint32_t circ : M.circuits()) {
    std::uint32_t posMask = 0;
    int minPos = n;
    for (int e = 0; e < n; ++e)
      if (circ & (1u << e)) {
        posMask |= 1u << pos[e];
        minPos = std::min(minPos, pos[e]);
      }
    bc.push_back(posMask & ~(1u << minPos));
  }

  // count faces of each size by DFS over positions
  std::vector<long> faceCount(rank + 1, 0);  // faceCount[k] = #faces of cardinality k
  faceCount[0] = 1;
  std::vector<std::uint32_t> bcByMax(n, 0);
  std::vector<std::vector<std::uint32_t>> bcOfMax(n);
  for (std::uint32_t b : bc) {
    int hi = 31 - std::countl_zero(b);
    bcOfMax[hi].push_back(b);
  }

  std::function<void(int, std::uint32_t, int)> rec = [&](int from, std::uint32_t face, int size) {
    if (size == rank) return;  // faces have at most `rank` vertices
    for (int p = from; p < n; ++p) {
      std::uint32_t cand = face | (1u << p);
      bool bad = false;
      for (std::uint32_t b : bcOfMax[p])
        if ((cand & b) == b) {
          bad = true;
          break;
        }
      if (bad) continue;
      faceCount[size + 1] += 1;
      rec(p + 1, cand, size + 1);
    }
  };
  rec(0, 0, 0);

  // numerator of sum_i f_{i-1} z^i (1-z)^{rank-i}
  std::vector<Int> num(rank + 1, Int(0));
  for (int i = 0; i <= rank; ++i) {
    // (1-z)^{rank-i} expanded, shifted by z^i
    Int f(faceCount[i]);
    Int binom(1);
    int m = rank - i;
    for (int j = 0; j <= m; ++j) {
      if (j > 0) binom = binom * (m - j + 1) / j;
      Int term = f * binom;
      if (j % 2 == 1) term = -term;
      num[i + j] += term;
    }
  }
  if (num[rank] != 0)
    throw input_error("broken circuit complex h-polynomial has unexpected top coefficient");
  FHVectors out;
  out.f.assign(faceCount.begin(), faceCount.end());
  out.h.h.assign(num.begin(), num.begin() + rank);
  for (const auto& hi : out.h.h)
    if (hi < 0) throw input_error("negative h-vector entry");
  return out;
}

BinaryForm linearMlBidegree(const LinearModel& model) {
  Matroid M = arrangementMatroid(model);
  std::vector<int> ordering(M.groundSize());
  for (int i = 0; i < M.groundSize(); ++i) ordering[i] = i;
  FHVectors fh = brokenCircuitHVector(M, ordering);
  const int d = model.dim();
  const int n = model.n();
  std::vector<Int> coeff(n + 1, Int(0));
  for (int i = 0; i <= d; ++i) coeff[i] = fh.h.h[d - i];  // coefficient of p^(n-i)u^i
  return BinaryForm(std::move(coeff));
}

CriticalSystem buildLinearRankConditionSystem(const LinearModel& model, const DataVector& u,
                                              Rng& rng) {
  model.validate();
  const int n = model.n();
  const int d = model.dim();
  if (u.n() != n) throw input_error("data vector arity mismatch");
  auto kernel = rationalKernel(model.basis);  // X^perp, n-d vectors
  const int nk = static_cast<int>(kernel.size());
  if (nk != n - d) throw input_error("kernel dimension mismatch");

  const int nUnknowns = (d + 1) + (nk + 1);  // y_0..y_d, mu_0..mu_{n-d}
  const int nParams = n + 1;
  const int total = nUnknowns + nParams;
  auto yVar = [&](int a) { return QPoly::variable(total, a); };
  auto muVar = [&](int k) { return QPoly::variable(total, d + 1 + k); };
  auto uPar = [&](int i) { return QPoly::variable(total, nUnknowns + i); };

  // p_i(y) = sum_a basis[a][i] y_a
  std::vector<QPoly> pOf(n + 1, QPoly(total));
  for (int i = 0; i <= n; ++i)
    for (int a = 0; a <= d; ++a) pOf[i] += yVar(a).scaled(model.basis[a][i]);

  CriticalSystem sys;
  sys.nUnknowns = nUnknowns;
  sys.nParams = nParams;
  sys.provenance = "linear-rank-condition";
  sys.ambientN = n;
  sys.projectiveModel = true;

  // u_i = p_i * (mu_0 + sum_k mu_k K_k[i])
  for (int i = 0; i <= n; ++i) {
    QPoly factor = muVar(0);
    for (int k = 0; k < nk; ++k) factor += muVar(1 + k).scaled(kernel[k][i]);
    sys.equations.push_back(pOf[i] * factor - uPar(i));
  }
  QPoly chart(total);
  for (int i = 0; i <= n; ++i) chart += pOf[i].scaled(i == 0 ? Rat(1) : rng.rational(40));
  chart -= QPoly::constant(total, 1);
  sys.chartEquation = static_cast<int>(sys.equations.size());
  sys.equations.push_back(chart);

  for (int a = 0; a <= d; ++a) {
    sys.roles.push_back(UnknownRole::PCoord);
    sys.unknownNames.push_back("y" + std::to_string(a));
  }
  for (int k = 0; k <= nk; ++k) {
    sys.roles.push_back(UnknownRole::Multiplier);
    sys.unknownNames.push_back("mu" + std::to_string(k));
  }
  std::vector<int> gy(d + 1), gm(nk + 1);
  for (int a = 0; a <= d; ++a) gy[a] = a;
  for (int k = 0; k <= nk; ++k) gm[k] = d + 1 + k;
  sys.variableGroups = {gy, gm};

  sys.extract = CriticalSystem::Extract::Polynomials;
  for (int i = 0; i <= n; ++i) {
    QPoly q(nUnknowns);
    for (auto& [e, c] : pOf[i].terms()) {
      std::vector<int> deq(e.begin(), e.begin() + nUnknowns);
      q.add_term(deq, c);
    }
    sys.extractPolys.push_back(q);
  }
  sys.uValue = u.u;
  sys.requireSquare();
  return sys;
}

SolutionSet mleLinear(const LinearModel& model, const DataVector& u, const TrackerConfig& cfg,
                      std::uint64_t seed) {
  Rng rng(seed);
  CriticalSystem sys = buildLinearRankConditionSystem(model, u, rng);
  return solve(sys, cfg);
}

}  // namespace mlgeo
