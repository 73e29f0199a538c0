#include "mlgeo/rankdual.hpp"

#include <algorithm>
#include <cmath>

namespace mlgeo {

namespace {

Rat matrixSum(const RMat& U) {
  Rat s = 0;
  for (const auto& row : U)
    for (const auto& v : row) s += v;
  return s;
}

MatrixPoint makeMatrixPoint(const std::vector<cd>& entries, int m, int n, double residual) {
  MatrixPoint mp;
  mp.P.resize(m, n);
  double maxAbs = 0, maxIm = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      cd v = entries[i * n + j];
      mp.P(i, j) = v;
      maxAbs = std::max(maxAbs, std::abs(v));
      maxIm = std::max(maxIm, std::abs(v.imag()));
    }
  mp.residual = residual;
  mp.real = maxIm < 1e-7 * std::max(1.0, maxAbs);
  mp.positive = mp.real;
  if (mp.real)
    for (int i = 0; i < m && mp.positive; ++i)
      for (int j = 0; j < n; ++j)
        if (mp.P(i, j).real() <= 0) {
          mp.positive = false;
          break;
        }
  return mp;
}

}  // namespace

int numericalRank(const CMat& P, double gapTol) {
  Eigen::JacobiSVD<CMat> svd(P);
  auto sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > gapTol * sv[0]) ++r;
  return r;
}

RankCriticalResult rankCriticalPoints(int m, int n, int r, const RMat& U,
                                      const TrackerConfig& cfg,
                                      const PreprocessResult* preprocessed) {
  CriticalSystem sys = buildRankSystem(m, n, r, U);
  SolutionSet ss;
  if (preprocessed) {
    std::vector<cd> u1;
    for (const auto& row : U)
      for (const auto& v : row) u1.push_back(rat_complex(v));
    ss = parameterHomotopy(sys, preprocessed->u0, preprocessed->solutions, u1, cfg);
  } else {
    ss = solve(sys, cfg);
  }

  RankCriticalResult out;
  out.stats = ss.pathStats;
  std::vector<int> seen;
  for (const auto& p : ss.points) {
    if (p.cls != PointClass::OffHRegular) continue;
    if (std::find(seen.begin(), seen.end(), p.cluster) != seen.end()) continue;
    seen.push_back(p.cluster);
    out.rawSolutions += 1;
    MatrixPoint mp = makeMatrixPoint(p.modelPoint, m, n, p.residual);
    // normalize the entry sum to one (it already is, up to roundoff)
    cd s(0, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) s += mp.P(i, j);
    if (std::abs(s) > 0) mp.P /= s;
    if (numericalRank(mp.P) != r) continue;
    out.points.push_back(std::move(mp));
  }
  return out;
}

RankCriticalResult symmetricRankCriticalPoints(int n, int r, const RMat& U,
                                               const TrackerConfig& cfg) {
  CriticalSystem sys = buildSymmetricRankSystem(n, r, U);
  SolutionSet ss = solve(sys, cfg);

  RankCriticalResult out;
  out.stats = ss.pathStats;
  std::vector<int> seen;
  for (const auto& p : ss.points) {
    if (p.cls != PointClass::OffHRegular) continue;
    if (std::find(seen.begin(), seen.end(), p.cluster) != seen.end()) continue;
    seen.push_back(p.cluster);
    out.rawSolutions += 1;

    // assemble the symmetric matrix with doubled diagonal from the
    // coordinates (p_11, p_12, ..., p_nn)
    CMat M(n, n);
    int idx = 0;
    cd s(0, 0);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        cd v = p.modelPoint[idx++];
        s += v;
        M(i, j) = (i == j) ? 2.0 * v : v;
        M(j, i) = M(i, j);
      }
    if (std::abs(s) > 0) M /= s;
    MatrixPoint mp;
    mp.P = M;
    mp.residual = p.residual;
    double maxAbs = 0, maxIm = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        maxAbs = std::max(maxAbs, std::abs(M(i, j)));
        maxIm = std::max(maxIm, std::abs(M(i, j).imag()));
      }
    mp.real = maxIm < 1e-7 * std::max(1.0, maxAbs);
    mp.positive = mp.real;
    for (int i = 0; i < n && mp.positive; ++i)
      for (int j = 0; j < n; ++j)
        if (M(i, j).real() <= 0) mp.positive = false;
    if (numericalRank(mp.P) != r) continue;
    out.points.push_back(std::move(mp));
  }
  return out;
}

RMat omegaMatrix(const RMat& U) {
  const int m = static_cast<int>(U.size());
  const int n = static_cast<int>(U.at(0).size());
  Rat total = matrixSum(U);
  if (total == 0) throw input_error("zero data matrix");
  std::vector<Rat> rowSum(m, Rat(0)), colSum(n, Rat(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      rowSum[i] += U[i][j];
      colSum[j] += U[i][j];
    }
  RMat W(m, std::vector<Rat>(n));
  Rat cube = total * total * total;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) W[i][j] = U[i][j] * rowSum[i] * colSum[j] / cube;
  return W;
}

DualityPairing dualityPairing(const std::vector<MatrixPoint>& solsR,
                              const std::vector<MatrixPoint>& solsS, const RMat& U, double tol) {
  DualityPairing out;
  if (solsR.size() != solsS.size()) return out;
  const int k = static_cast<int>(solsR.size());
  if (k == 0) {
    out.perfect = true;
    return out;
  }
  const int m = static_cast<int>(U.size());
  const int n = static_cast<int>(U[0].size());
  RMat W = omegaMatrix(U);
  Eigen::MatrixXd omega(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) omega(i, j) = rat_double(W[i][j]);

  // residual of each candidate pair
  std::vector<std::vector<double>> res(k, std::vector<double>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      double worst = 0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
          worst = std::max(worst,
                           std::abs(solsR[a].P(i, j) * solsS[b].P(i, j) - cd(omega(i, j), 0)));
      res[a][b] = worst;
    }

  // bipartite matching on pairs below tolerance
  std::vector<int> matchL(k, -1), matchR(k, -1);
  std::function<bool(int, std::vector<bool>&)> tryKuhn = [&](int a, std::vector<bool>& used) {
    for (int b = 0; b < k; ++b) {
      if (res[a][b] >= tol || used[b]) continue;
      used[b] = true;
      if (matchR[b] < 0 || tryKuhn(matchR[b], used)) {
        matchL[a] = b;
        matchR[b] = a;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (int a = 0; a < k; ++a) {
    std::vector<bool> used(k, false);
    if (tryKuhn(a, used)) ++matched;
  }
  out.perfect = (matched == k);
  out.match = matchL;
  for (int a = 0; a < k; ++a)
    if (matchL[a] >= 0) {
      out.maxResidual = std::max(out.maxResidual, res[a][matchL[a]]);
      if (solsR[a].real != solsS[matchL[a]].real) out.realityPreserved = false;
    }
  return out;
}

bool verifyCriticalRank(const CMat& P, const RMat& U, int r, double tol) {
  const int m = static_cast<int>(P.rows());
  const int n = static_cast<int>(P.cols());
  Eigen::JacobiSVD<CMat> svd(P, Eigen::ComputeThinU | Eigen::ComputeThinV);
  auto sv = svd.singularValues();
  if (numericalRank(P) != r) throw input_error("matrix does not have a clean rank-r gap");

  CMat C = svd.matrixU().leftCols(r);   // column space basis
  CMat W = svd.matrixV().leftCols(r).adjoint();  // rows span the row space

  cd psum(0, 0);
  Rat usumR = matrixSum(U);
  double usum = rat_double(usumR);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) psum += P(i, j);

  CMat Z(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      Z(i, j) = cd(rat_double(U[i][j]), 0) / P(i, j) - cd(usum, 0) / psum;

  double scale = std::max(1.0, usum);
  // orthogonality with respect to the bilinear (not hermitian) pairing
  double left = (C.transpose() * Z).cwiseAbs().maxCoeff() / scale;
  double right = (Z * W.transpose()).cwiseAbs().maxCoeff() / scale;
  return left < tol && right < tol;
}

double logLikelihood(const RMat& U, const Eigen::MatrixXd& P) {
  const int m = static_cast<int>(U.size());
  const int n = static_cast<int>(U[0].size());
  double ll = 0, usum = 0, psum = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      double u = rat_double(U[i][j]);
      usum += u;
      psum += P(i, j);
      if (u > 0) ll += u * std::log(P(i, j));  // 0*log(0) = 0 by convention
    }
  ll -= usum * std::log(psum);
  return ll;
}

EMResult emMixture(const RMat& U, int r, int maxIters, double tol, std::uint64_t seed,
                   const EMResult* init) {
  const int m = static_cast<int>(U.size());
  const int n = static_cast<int>(U[0].size());
  if (r < 1 || r > std::min(m, n)) throw input_error("mixture rank out of range");
  Eigen::MatrixXd Ud(m, n);
  double usum = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      Ud(i, j) = rat_double(U[i][j]);
      if (Ud(i, j) < 0) throw input_error("data must be nonnegative");
      usum += Ud(i, j);
    }
  if (usum <= 0) throw input_error("zero data matrix");

  EMResult res;
  if (init) {
    res.A = init->A;
    res.lambda = init->lambda;
    res.B = init->B;
    for (int l = 0; l < r; ++l) {
      if (res.lambda[l] <= 0) throw input_error("initialization must be strictly positive");
      for (int i = 0; i < m; ++i)
        if (res.A(i, l) <= 0) throw input_error("initialization must be strictly positive");
      for (int j = 0; j < n; ++j)
        if (res.B(l, j) <= 0) throw input_error("initialization must be strictly positive");
    }
  } else {
    Rng rng(seed);
    res.A.resize(m, r);
    res.B.resize(r, n);
    res.lambda.resize(r);
    for (int l = 0; l < r; ++l) {
      double s = 0;
      for (int i = 0; i < m; ++i) {
        res.A(i, l) = 0.1 + rng.realIn(0, 1);
        s += res.A(i, l);
      }
      for (int i = 0; i < m; ++i) res.A(i, l) /= s;
      s = 0;
      for (int j = 0; j < n; ++j) {
        res.B(l, j) = 0.1 + rng.realIn(0, 1);
        s += res.B(l, j);
      }
      for (int j = 0; j < n; ++j) res.B(l, j) /= s;
      res.lambda[l] = 1.0 / r;
    }
  }

  auto assemble = [&]() {
    res.P = res.A * res.lambda.asDiagonal() * res.B;
  };
  assemble();
  res.logLikTrace.push_back(logLikelihood(U, res.P));

  for (int it = 0; it < maxIters; ++it) {
    Eigen::MatrixXd Anew = Eigen::MatrixXd::Zero(m, r);
    Eigen::MatrixXd Bnew = Eigen::MatrixXd::Zero(r, n);
    Eigen::VectorXd lnew = Eigen::VectorXd::Zero(r);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        if (Ud(i, j) == 0) continue;
        double pij = res.P(i, j);
        for (int l = 0; l < r; ++l) {
          double w = Ud(i, j) * res.lambda[l] * res.A(i, l) * res.B(l, j) / pij;
          Anew(i, l) += w;
          Bnew(l, j) += w;
          lnew[l] += w;
        }
      }
    // renormalize: rows of the fit, then the mixture weights, then columns
    for (int l = 0; l < r; ++l) {
      if (lnew[l] <= 0) lnew[l] = 1e-300;
      for (int i = 0; i < m; ++i) Anew(i, l) /= lnew[l];
      for (int j = 0; j < n; ++j) Bnew(l, j) /= lnew[l];
    }
    Eigen::VectorXd lamNext = lnew / usum;

    double delta = (Anew - res.A).cwiseAbs().maxCoeff() +
                   (Bnew - res.B).cwiseAbs().maxCoeff() +
                   (lamNext - res.lambda).cwiseAbs().maxCoeff();
    res.A = Anew;
    res.B = Bnew;
    res.lambda = lamNext;
    assemble();
    res.logLikTrace.push_back(logLikelihood(U, res.P));
    res.iterations = it + 1;
    if (delta < tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

bool supermodular222(const std::vector<std::vector<std::vector<double>>>& P) {
  auto get = [&](int swapMask, int i, int j, int k) {
    if (swapMask & 1) i ^= 1;
    if (swapMask & 2) j ^= 1;
    if (swapMask & 4) k ^= 1;
    return P.at(i).at(j).at(k);
  };
  for (int s = 0; s < 8; ++s) {
    auto q = [&](int i, int j, int k) { return get(s, i, j, k); };
    // the nine binomial inequalities for one toric cell
    bool ok = q(0, 0, 0) * q(1, 1, 1) >= q(0, 0, 1) * q(1, 1, 0) &&
              q(0, 0, 0) * q(1, 1, 1) >= q(0, 1, 0) * q(1, 0, 1) &&
              q(0, 0, 0) * q(1, 1, 1) >= q(1, 0, 0) * q(0, 1, 1) &&
              q(0, 0, 1) * q(1, 1, 1) >= q(0, 1, 1) * q(1, 0, 1) &&
              q(0, 1, 0) * q(1, 1, 1) >= q(0, 1, 1) * q(1, 1, 0) &&
              q(1, 0, 0) * q(1, 1, 1) >= q(1, 0, 1) * q(1, 1, 0) &&
              q(0, 0, 0) * q(0, 1, 1) >= q(0, 0, 1) * q(0, 1, 0) &&
              q(0, 0, 0) * q(1, 0, 1) >= q(0, 0, 1) * q(1, 0, 0) &&
              q(0, 0, 0) * q(1, 1, 0) >= q(0, 1, 0) * q(1, 0, 0);
    if (ok) return true;
  }
  return false;
}

}  // namespace mlgeo
