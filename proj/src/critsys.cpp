#include "mlgeo/critsys.hpp"

#include <algorithm>

#include "mlgeo/linmatroid.hpp"

namespace mlgeo {

void VarietySpec::validate() const {
  if (n < 1) throw input_error("ambient dimension must be at least 1");
  if (codim < 0 || codim > n) throw input_error("codimension out of range");
  if (codim > static_cast<int>(generators.size()))
    throw input_error("claimed codimension exceeds the number of generators");
  for (const auto& g : generators) {
    if (g.nvars() != n + 1) throw input_error("generator arity != n+1");
    if (g.isZero()) throw input_error("zero generator");
    if (!g.isHomogeneous()) throw input_error("generators must be homogeneous");
  }
}

void VarietySpec::validateStrict() const {
  validate();
  // sum of all variables, substituted for the last one to test p_+ divisibility
  QPoly minusOthers(n + 1);
  for (int i = 0; i < n; ++i) minusOthers -= QPoly::variable(n + 1, i);
  for (const auto& g : generators) {
    for (int i = 0; i <= n; ++i)
      if (g.divisibleByVar(i)) throw input_error("generator divisible by a coordinate");
    if (g.substitute(n, minusOthers).isZero())
      throw input_error("generator divisible by the coordinate sum");
  }
}

Rat DataVector::sum() const {
  Rat s = 0;
  for (const auto& x : u) s += x;
  return s;
}

DataVector DataVector::genericInts(Rng& rng, int n, long lo, long hi) {
  DataVector d;
  d.u.reserve(n + 1);
  for (int i = 0; i <= n; ++i) d.u.emplace_back(rng.intIn(lo, hi));
  return d;
}

void CriticalSystem::requireSquare() const {
  if (static_cast<int>(equations.size()) != nUnknowns)
    throw input_error("critical system is not square");
}

std::vector<cd> CriticalSystem::extractModelPoint(const std::vector<cd>& sol) const {
  std::vector<cd> q;
  switch (extract) {
    case Extract::Coordinates:
      q.reserve(coordIndex.size());
      for (int i : coordIndex) q.push_back(sol.at(i));
      break;
    case Extract::Polynomials:
      q.reserve(extractPolys.size());
      for (const auto& f : extractPolys) {
        CPoly fc = toComplex(f);
        q.push_back(fc.eval(sol));
      }
      break;
    case Extract::ToricMonomials: {
      q.reserve(toricExp.size());
      for (std::size_t i = 0; i < toricExp.size(); ++i) {
        cd v = rat_complex(toricCoef[i]);
        for (std::size_t j = 0; j < toricExp[i].size(); ++j) {
          int e = toricExp[i][j];
          cd x = sol.at(j);
          if (e > 0)
            for (int k = 0; k < e; ++k) v *= x;
          else if (e < 0) {
            if (std::abs(x) == 0.0) {
              v = cd(0, 0);
              break;
            }
            for (int k = 0; k < -e; ++k) v /= x;
          }
        }
        q.push_back(v);
      }
      break;
    }
  }
  return q;
}

namespace {

// Widen a polynomial in the p-ring to the (unknowns + params) ring of a
// system with layout [p..., lambda..., | u...].
QPoly liftP(const QPoly& g, int nUnknowns, int nParams) {
  QPoly out(nUnknowns + nParams);
  for (auto& [e, c] : g.terms()) {
    std::vector<int> d(nUnknowns + nParams, 0);
    std::copy(e.begin(), e.end(), d.begin());
    out.add_term(d, c);
  }
  return out;
}

QPoly varOf(int total, int i) { return QPoly::variable(total, i); }

}  // namespace

CriticalSystem buildLagrangeSystem(const VarietySpec& spec, const DataVector& u, Rng& rng) {
  spec.validate();
  if (u.n() != spec.n) throw input_error("data vector arity mismatch");
  const int n = spec.n;
  const int r = spec.codim;
  if (r > n) throw input_error("codimension exceeds ambient dimension");
  const int s = static_cast<int>(spec.generators.size());

  // Working generators: the spec's own when it is a complete intersection,
  // otherwise r seeded random degree-equalized combinations.
  std::vector<QPoly> gens;
  if (s == r) {
    gens = spec.generators;
  } else {
    int dmax = 0;
    for (const auto& g : spec.generators) dmax = std::max(dmax, g.totalDegree());
    QPoly ell(n + 1);
    for (int i = 0; i <= n; ++i) ell += QPoly::variable(n + 1, i).scaled(rat_of(rng.nonzeroInt(50)));
    for (int k = 0; k < r; ++k) {
      QPoly combo(n + 1);
      for (const auto& g : spec.generators) {
        QPoly lifted = g;
        for (int t = g.totalDegree(); t < dmax; ++t) lifted *= ell;
        combo += lifted.scaled(rat_of(rng.nonzeroInt(99)));
      }
      gens.push_back(combo);
    }
  }

  const int nUnknowns = (n + 1) + (r + 1);  // p_0..p_n, lambda_0..lambda_r
  const int nParams = n + 1;
  const int total = nUnknowns + nParams;
  auto lam = [&](int k) { return varOf(total, n + 1 + k); };
  auto uPar = [&](int i) { return varOf(total, nUnknowns + i); };
  auto pVar = [&](int i) { return varOf(total, i); };

  CriticalSystem sys;
  sys.nUnknowns = nUnknowns;
  sys.nParams = nParams;
  sys.provenance = "lagrange";
  sys.ambientN = n;

  std::vector<QPoly> liftedGens;
  for (const auto& g : gens) liftedGens.push_back(liftP(g, nUnknowns, nParams));

  // u_i = lambda_0 p_i + sum_k lambda_k p_i dg_k/dp_i
  for (int i = 0; i <= n; ++i) {
    QPoly eq = lam(0) * pVar(i) - uPar(i);
    for (int k = 0; k < r; ++k) {
      QPoly dgi = liftP(gens[k].diff(i), nUnknowns, nParams);
      eq += lam(k + 1) * pVar(i) * dgi;
    }
    sys.equations.push_back(eq);
  }
  for (const auto& g : liftedGens) sys.equations.push_back(g);

  // Generic affine chart with unit coefficient on p_0.
  QPoly chart = pVar(0) - QPoly::constant(total, 1);
  for (int i = 1; i <= n; ++i) chart += pVar(i).scaled(rng.rational(40));
  sys.chartEquation = static_cast<int>(sys.equations.size());
  sys.equations.push_back(chart);

  for (int i = 0; i <= n; ++i) {
    sys.roles.push_back(UnknownRole::PCoord);
    sys.unknownNames.push_back("p" + std::to_string(i));
    sys.coordIndex.push_back(i);
  }
  for (int k = 0; k <= r; ++k) {
    sys.roles.push_back(UnknownRole::Multiplier);
    sys.unknownNames.push_back("lam" + std::to_string(k));
  }
  std::vector<int> gp(n + 1), gl(r + 1);
  for (int i = 0; i <= n; ++i) gp[i] = i;
  for (int k = 0; k <= r; ++k) gl[k] = n + 1 + k;
  sys.variableGroups = {gp, gl};
  sys.extract = CriticalSystem::Extract::Coordinates;

  sys.membershipPolys = spec.generators;
  sys.specJacobianRank =
      (spec.singularPolicy == VarietySpec::SingularPolicy::FilterBySpecJacobian) ? r : 0;
  sys.uValue = u.u;
  sys.projectiveModel = true;
  sys.requireSquare();
  return sys;
}

CriticalSystem buildPlaneCurveSystem(const QPoly& f, const DataVector& u, Rng& rng,
                                     VarietySpec::SingularPolicy policy) {
  if (f.nvars() != 3) throw input_error("plane-curve builder needs a trivariate polynomial");
  if (!f.isHomogeneous() || f.isZero()) throw input_error("f must be homogeneous and nonzero");
  if (u.n() != 2) throw input_error("data vector arity mismatch");

  const int nUnknowns = 3, nParams = 3, total = 6;
  auto pVar = [&](int i) { return varOf(total, i); };
  auto uPar = [&](int i) { return varOf(total, 3 + i); };

  // Rows of the determinant: (1,1,1), (u_i/p_i) cleared by p_0 p_1 p_2, and
  // the gradient of f. Spurious roots land on H and are classified away.
  std::array<QPoly, 3> row1{QPoly::constant(total, 1), QPoly::constant(total, 1),
                            QPoly::constant(total, 1)};
  std::array<QPoly, 3> row2{uPar(0) * pVar(1) * pVar(2), uPar(1) * pVar(0) * pVar(2),
                            uPar(2) * pVar(0) * pVar(1)};
  std::array<QPoly, 3> row3{liftP(f.diff(0), 3, 3), liftP(f.diff(1), 3, 3),
                            liftP(f.diff(2), 3, 3)};
  QPoly det = row1[0] * (row2[1] * row3[2] - row2[2] * row3[1]) -
              row1[1] * (row2[0] * row3[2] - row2[2] * row3[0]) +
              row1[2] * (row2[0] * row3[1] - row2[1] * row3[0]);

  CriticalSystem sys;
  sys.nUnknowns = nUnknowns;
  sys.nParams = nParams;
  sys.provenance = "plane-curve";
  sys.ambientN = 2;
  sys.equations.push_back(liftP(f, 3, 3));
  sys.equations.push_back(det);
  QPoly chart = pVar(0) - QPoly::constant(total, 1);
  for (int i = 1; i <= 2; ++i) chart += pVar(i).scaled(rng.rational(40));
  sys.chartEquation = 2;
  sys.equations.push_back(chart);

  for (int i = 0; i < 3; ++i) {
    sys.roles.push_back(UnknownRole::PCoord);
    sys.unknownNames.push_back("p" + std::to_string(i));
    sys.coordIndex.push_back(i);
  }
  sys.variableGroups = {{0, 1, 2}};
  sys.extract = CriticalSystem::Extract::Coordinates;
  sys.membershipPolys = {f};
  sys.specJacobianRank = (policy == VarietySpec::SingularPolicy::FilterBySpecJacobian) ? 1 : 0;
  sys.uValue = u.u;
  sys.projectiveModel = true;
  sys.requireSquare();
  return sys;
}

namespace {

using PolyMat = std::vector<std::vector<QPoly>>;

PolyMat polyMatMul(const PolyMat& A, const PolyMat& B) {
  std::size_t m = A.size(), k = A.at(0).size(), n = B.at(0).size();
  if (B.size() != k) throw input_error("polynomial matrix shape mismatch");
  PolyMat C(m, std::vector<QPoly>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QPoly acc(A[0][0].nvars());
      for (std::size_t t = 0; t < k; ++t) acc += A[i][t] * B[t][j];
      C[i][j] = acc;
    }
  return C;
}

}  // namespace

CriticalSystem buildRankSystem(int m, int n, int r, const RMat& U) {
  if (m > n) throw input_error("rank builder expects m <= n");
  if (r < 1 || r > std::min(m, n)) throw input_error("rank out of range");
  if (static_cast<int>(U.size()) != m) throw input_error("data matrix shape mismatch");
  for (const auto& row : U)
    if (static_cast<int>(row.size()) != n) throw input_error("data matrix shape mismatch");

  const int nP1 = r * r, nR1 = r * (n - r), nL1 = (m - r) * r, nLam = (n - r) * (m - r);
  const int nUnknowns = nP1 + nR1 + nL1 + nLam;  // == m*n
  const int nParams = m * n;
  const int total = nUnknowns + nParams;

  auto P1v = [&](int i, int j) { return varOf(total, i * r + j); };
  auto R1v = [&](int i, int j) { return varOf(total, nP1 + i * (n - r) + j); };
  auto L1v = [&](int i, int j) { return varOf(total, nP1 + nR1 + i * r + j); };
  auto Lamv = [&](int i, int j) { return varOf(total, nP1 + nR1 + nL1 + i * (m - r) + j); };
  auto uPar = [&](int i, int j) { return varOf(total, nUnknowns + i * n + j); };

  PolyMat P1(r, std::vector<QPoly>(r)), R1(r, std::vector<QPoly>(std::max(n - r, 0))),
      L1(std::max(m - r, 0), std::vector<QPoly>(r)),
      Lam(std::max(n - r, 0), std::vector<QPoly>(std::max(m - r, 0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) P1[i][j] = P1v(i, j);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n - r; ++j) R1[i][j] = R1v(i, j);
  for (int i = 0; i < m - r; ++i)
    for (int j = 0; j < r; ++j) L1[i][j] = L1v(i, j);
  for (int i = 0; i < n - r; ++i)
    for (int j = 0; j < m - r; ++j) Lam[i][j] = Lamv(i, j);

  // P = (P1, P1 R1; L1 P1, L1 P1 R1), R = (R1; -I), L = (L1, -I)
  PolyMat P(m, std::vector<QPoly>(n, QPoly(total)));
  PolyMat P1R1 = (n - r > 0) ? polyMatMul(P1, R1) : PolyMat{};
  PolyMat L1P1 = (m - r > 0) ? polyMatMul(L1, P1) : PolyMat{};
  PolyMat L1P1R1 = (m - r > 0 && n - r > 0) ? polyMatMul(L1P1, R1) : PolyMat{};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      if (i < r && j < r) P[i][j] = P1[i][j];
      else if (i < r) P[i][j] = P1R1[i][j - r];
      else if (j < r) P[i][j] = L1P1[i - r][j];
      else P[i][j] = L1P1R1[i - r][j - r];
    }

  PolyMat R(n, std::vector<QPoly>(n - r, QPoly(total)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n - r; ++j) R[i][j] = R1[i][j];
  for (int i = 0; i < n - r; ++i) R[r + i][i] = QPoly::constant(total, -1);

  PolyMat L(std::max(m - r, 0), std::vector<QPoly>(m, QPoly(total)));
  for (int i = 0; i < m - r; ++i) {
    for (int j = 0; j < r; ++j) L[i][j] = L1[i][j];
    L[i][r + i] = QPoly::constant(total, -1);
  }

  PolyMat RLamL;
  if (n - r > 0 && m - r > 0) RLamL = polyMatMul(polyMatMul(R, Lam), L);  // n x m

  QPoly uSum(total);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) uSum += uPar(i, j);

  CriticalSystem sys;
  sys.nUnknowns = nUnknowns;
  sys.nParams = nParams;
  sys.provenance = "rank";
  sys.ambientN = m * n - 1;

  // P * (R Lam L)^T + u_++ P = U, entry by entry.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      QPoly eq = uSum * P[i][j] - uPar(i, j);
      if (!RLamL.empty()) eq += P[i][j] * RLamL[j][i];
      sys.equations.push_back(eq);
    }

  auto pushGroup = [&](int begin, int count) {
    if (count == 0) return;
    std::vector<int> g(count);
    for (int i = 0; i < count; ++i) g[i] = begin + i;
    sys.variableGroups.push_back(g);
  };
  pushGroup(0, nP1);
  pushGroup(nP1, nR1);
  pushGroup(nP1 + nR1, nL1);
  pushGroup(nP1 + nR1 + nL1, nLam);

  for (int i = 0; i < nUnknowns; ++i) {
    sys.roles.push_back(UnknownRole::RankParam);
    sys.unknownNames.push_back("w" + std::to_string(i));
  }

  sys.extract = CriticalSystem::Extract::Polynomials;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      // strip the parameter tail: extraction polynomials live in unknowns only
      QPoly q(nUnknowns);
      for (auto& [e, cval] : P[i][j].terms()) {
        std::vector<int> d(e.begin(), e.begin() + nUnknowns);
        q.add_term(d, cval);
      }
      sys.extractPolys.push_back(q);
    }

  sys.uValue.clear();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) sys.uValue.push_back(U[i][j]);
  sys.projectiveModel = true;
  sys.requireSquare();
  return sys;
}

CriticalSystem buildSymmetricRankSystem(int n, int r, const RMat& U) {
  if (r < 1 || r > n) throw input_error("rank out of range");
  if (static_cast<int>(U.size()) != n) throw input_error("data matrix shape mismatch");
  const int nCoord = n * (n + 1) / 2;
  const int nLamS = r * (r + 1) / 2;
  const int nL1 = (n - r) * r;
  const int nTheta = (n - r) * (n - r + 1) / 2;
  const int nUnknowns = nLamS + nL1 + nTheta;
  const int nParams = nCoord;
  const int total = nUnknowns + nParams;
  if (nUnknowns != nCoord) throw input_error("symmetric rank system is not square");

  auto upperIndex = [](int nn, int i, int j) {  // i <= j in an nn x nn matrix
    return i * nn - i * (i - 1) / 2 + (j - i);
  };
  auto lamS = [&](int i, int j) {
    int a = std::min(i, j), b = std::max(i, j);
    return varOf(total, upperIndex(r, a, b));
  };
  auto L1v = [&](int i, int j) { return varOf(total, nLamS + i * r + j); };
  auto thetaV = [&](int i, int j) {
    int a = std::min(i, j), b = std::max(i, j);
    return varOf(total, nLamS + nL1 + upperIndex(n - r, a, b));
  };
  auto uPar = [&](int i, int j) {
    int a = std::min(i, j), b = std::max(i, j);
    return varOf(total, nUnknowns + upperIndex(n, a, b));
  };

  // B = (I_r; L1), M = B LamS B^T, C = (L1, -I), N = C^T Theta C.
  PolyMat B(n, std::vector<QPoly>(r, QPoly(total)));
  for (int i = 0; i < r; ++i) B[i][i] = QPoly::constant(total, 1);
  for (int i = 0; i < n - r; ++i)
    for (int j = 0; j < r; ++j) B[r + i][j] = L1v(i, j);
  PolyMat LamS(r, std::vector<QPoly>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) LamS[i][j] = lamS(i, j);
  PolyMat Bt(r, std::vector<QPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) Bt[j][i] = B[i][j];
  PolyMat M = polyMatMul(polyMatMul(B, LamS), Bt);

  PolyMat N;
  if (n - r > 0) {
    PolyMat C(n - r, std::vector<QPoly>(n, QPoly(total)));
    for (int i = 0; i < n - r; ++i) {
      for (int j = 0; j < r; ++j) C[i][j] = L1v(i, j);
      C[i][r + i] = QPoly::constant(total, -1);
    }
    PolyMat Theta(n - r, std::vector<QPoly>(n - r));
    for (int i = 0; i < n - r; ++i)
      for (int j = 0; j < n - r; ++j) Theta[i][j] = thetaV(i, j);
    PolyMat Ct(n, std::vector<QPoly>(n - r));
    for (int i = 0; i < n - r; ++i)
      for (int j = 0; j < n; ++j) Ct[j][i] = C[i][j];
    N = polyMatMul(polyMatMul(Ct, Theta), C);
  }

  QPoly uSum(total);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) uSum += uPar(i, j);

  // p_ii = M_ii / 2, p_ij = M_ij (i < j); critical equations
  // p_ij N_ij + u_++ p_ij - u_ij = 0 over i <= j.
  CriticalSystem sys;
  sys.nUnknowns = nUnknowns;
  sys.nParams = nParams;
  sys.provenance = "symmetric-rank";
  sys.ambientN = nCoord - 1;

  auto pPoly = [&](int i, int j) {
    return (i == j) ? M[i][j].scaled(rat_of(1, 2)) : M[i][j];
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      QPoly eq = uSum * pPoly(i, j) - uPar(i, j);
      if (!N.empty()) eq += pPoly(i, j) * N[i][j];
      sys.equations.push_back(eq);
    }

  auto pushGroup = [&](int begin, int count) {
    if (count == 0) return;
    std::vector<int> g(count);
    for (int i = 0; i < count; ++i) g[i] = begin + i;
    sys.variableGroups.push_back(g);
  };
  pushGroup(0, nLamS);
  pushGroup(nLamS, nL1);
  pushGroup(nLamS + nL1, nTheta);

  for (int i = 0; i < nUnknowns; ++i) {
    sys.roles.push_back(UnknownRole::RankParam);
    sys.unknownNames.push_back("w" + std::to_string(i));
  }

  sys.extract = CriticalSystem::Extract::Polynomials;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      QPoly full = pPoly(i, j);
      QPoly q(nUnknowns);
      for (auto& [e, cval] : full.terms()) {
        std::vector<int> d(e.begin(), e.begin() + nUnknowns);
        q.add_term(d, cval);
      }
      sys.extractPolys.push_back(q);
    }

  sys.uValue.clear();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) sys.uValue.push_back(U[i][j]);
  sys.projectiveModel = true;
  sys.requireSquare();
  return sys;
}

std::vector<std::vector<long>> reduceToricRows(const std::vector<std::vector<long>>& A) {
  if (A.empty()) throw input_error("empty matrix");
  const int rows = static_cast<int>(A.size());
  const int cols = static_cast<int>(A[0].size());
  for (long x : A.back())
    if (x != 1) throw input_error("last row of A must be all ones");

  // Greedy row-subset selection keeping the ones row, exact arithmetic.
  std::vector<std::vector<Rat>> acc;
  std::vector<int> keep;
  auto tryAdd = [&](int ri) {
    std::vector<std::vector<Rat>> candidate = acc;
    std::vector<Rat> row(cols);
    for (int j = 0; j < cols; ++j) row[j] = Rat(A[ri][j]);
    candidate.push_back(row);
    if (rationalRank(candidate) == static_cast<int>(candidate.size())) {
      acc = std::move(candidate);
      keep.push_back(ri);
      return true;
    }
    return false;
  };
  tryAdd(rows - 1);
  for (int i = 0; i < rows - 1; ++i) tryAdd(i);

  std::sort(keep.begin(), keep.end());
  std::vector<std::vector<long>> out;
  for (int i : keep)
    if (i != rows - 1) out.push_back(A[i]);
  out.push_back(A[rows - 1]);  // ones row last
  return out;
}

CriticalSystem buildToricSystem(const std::vector<std::vector<long>>& Ain,
                                const std::vector<Rat>& c, const DataVector& u) {
  auto A = reduceToricRows(Ain);
  const int d = static_cast<int>(A.size()) - 1;
  const int n = static_cast<int>(A[0].size()) - 1;
  if (static_cast<int>(c.size()) != n + 1) throw input_error("scaling vector arity mismatch");
  if (u.n() != n) throw input_error("data vector arity mismatch");
  for (const auto& ci : c)
    if (ci == 0) throw input_error("zero entry in c");
  if (d < 1) throw input_error("toric model has no torus direction");

  const int nUnknowns = d, nParams = n + 1, total = d + n + 1;
  auto uPar = [&](int i) { return varOf(total, d + i); };

  // Column exponents with the ones row dropped; shift per equation so that
  // all monomials are polynomial (Laurent inputs are allowed).
  std::vector<std::vector<long>> aT(n + 1, std::vector<long>(d));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < d; ++j) aT[i][j] = A[j][i];

  CriticalSystem sys;
  sys.nUnknowns = nUnknowns;
  sys.nParams = nParams;
  sys.provenance = "toric";
  sys.ambientN = n;

  for (int j = 0; j < d; ++j) {
    // b_j f(x) - u_+ sum_i c_i a~_ij x^{a~_i}, with b_j = sum_i a~_ij u_i
    std::vector<long> minExp(d, 0);
    for (int i = 0; i <= n; ++i)
      for (int k = 0; k < d; ++k) minExp[k] = std::min(minExp[k], aT[i][k]);

    QPoly eq(total);
    for (int i = 0; i <= n; ++i) {
      std::vector<int> e(total, 0);
      for (int k = 0; k < d; ++k) e[k] = static_cast<int>(aT[i][k] - minExp[k]);
      // + b_j part: c_i x^{a~_i} * sum_l a~_lj u_l
      for (int l = 0; l <= n; ++l) {
        if (aT[l][j] == 0) continue;
        std::vector<int> et = e;
        et[d + l] += 1;
        eq.add_term(et, c[i] * Rat(aT[l][j]));
      }
      // - u_+ part: -a~_ij c_i x^{a~_i} u_l summed over l
      if (aT[i][j] != 0) {
        for (int l = 0; l <= n; ++l) {
          std::vector<int> et = e;
          et[d + l] += 1;
          eq.add_term(et, -c[i] * Rat(aT[i][j]));
        }
      }
    }
    sys.equations.push_back(eq);
  }

  for (int j = 0; j < d; ++j) {
    sys.roles.push_back(UnknownRole::TorusCoord);
    sys.unknownNames.push_back("x" + std::to_string(j + 1));
  }
  std::vector<int> g(d);
  for (int j = 0; j < d; ++j) g[j] = j;
  sys.variableGroups = {g};

  sys.extract = CriticalSystem::Extract::ToricMonomials;
  for (int i = 0; i <= n; ++i) {
    std::vector<int> col(d);
    for (int k = 0; k < d; ++k) col[k] = static_cast<int>(aT[i][k]);
    sys.toricExp.push_back(col);
    sys.toricCoef.push_back(c[i]);
  }
  sys.uValue = u.u;
  sys.projectiveModel = true;
  sys.requireSquare();
  return sys;
}

}  // namespace mlgeo
