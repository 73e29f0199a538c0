#include "mlgeo/toricgp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mlgeo {

ToricModel::ToricModel(std::vector<std::vector<long>> A_, std::vector<Rat> c_)
    : A(reduceToricRows(A_)), c(std::move(c_)) {
  if (static_cast<int>(c.size()) != n() + 1) throw input_error("scaling vector arity mismatch");
  for (const auto& ci : c)
    if (ci == 0) throw input_error("zero entry in c");
  if (d() < 1) throw input_error("toric model has no torus direction");
}

std::vector<long> ToricModel::aTilde(int col) const {
  std::vector<long> v(d());
  for (int j = 0; j < d(); ++j) v[j] = A[j][col];
  return v;
}

BirchResult birchMle(const ToricModel& model, const DataVector& u, double tol, int maxIters) {
  const int d = model.d(), n = model.n();
  for (const auto& ci : model.c)
    if (ci <= 0) throw input_error("birch MLE needs positive scalings c");
  if (u.n() != n) throw input_error("data vector arity mismatch");
  for (const auto& ui : u.u)
    if (ui <= 0) throw input_error("birch MLE needs positive data");

  Eigen::MatrixXd aT(n + 1, d);
  Eigen::VectorXd cv(n + 1), uv(n + 1);
  for (int i = 0; i <= n; ++i) {
    cv[i] = rat_double(model.c[i]);
    uv[i] = rat_double(u.u[i]);
    for (int j = 0; j < d; ++j) aT(i, j) = static_cast<double>(model.A[j][i]);
  }
  const double usum = uv.sum();
  Eigen::VectorXd b = aT.transpose() * uv;  // b = A~ u

  // objective usum*log f(e^y) - b.y, convex in y
  auto objective = [&](const Eigen::VectorXd& y, Eigen::VectorXd* grad, Eigen::MatrixXd* hess,
                       Eigen::VectorXd* weights) {
    Eigen::VectorXd w(n + 1);
    double f = 0;
    for (int i = 0; i <= n; ++i) {
      w[i] = cv[i] * std::exp(aT.row(i).dot(y));
      f += w[i];
    }
    double obj = usum * std::log(f) - b.dot(y);
    Eigen::VectorXd mean = aT.transpose() * w / f;
    if (grad) *grad = usum * mean - b;
    if (hess) {
      Eigen::MatrixXd second = Eigen::MatrixXd::Zero(d, d);
      for (int i = 0; i <= n; ++i)
        second += (w[i] / f) * aT.row(i).transpose() * aT.row(i);
      *hess = usum * (second - mean * mean.transpose());
    }
    if (weights) *weights = w / f;
    return obj;
  };

  BirchResult res;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd grad(d), wts(n + 1);
  Eigen::MatrixXd hess(d, d);
  double obj = objective(y, &grad, &hess, nullptr);
  res.objectiveTrace.push_back(obj);

  int it = 0;
  for (; it < maxIters; ++it) {
    res.gradientNorm = grad.norm();
    if (res.gradientNorm < tol) break;
    Eigen::VectorXd step = hess.ldlt().solve(-grad);
    if (!step.allFinite()) throw std::runtime_error("geometric program Hessian breakdown");
    double alpha = 1.0;
    double slope = grad.dot(step);
    double objNew = 0;
    Eigen::VectorXd yNew;
    while (true) {
      yNew = y + alpha * step;
      objNew = objective(yNew, nullptr, nullptr, nullptr);
      if (objNew <= obj + 1e-4 * alpha * slope) break;
      alpha *= 0.5;
      if (alpha < 1e-14) throw std::runtime_error("geometric program line search failed");
    }
    if (!(objNew < obj) && res.gradientNorm > tol)
      throw std::runtime_error("geometric program objective failed to decrease");
    y = yNew;
    obj = objective(y, &grad, &hess, nullptr);
    res.objectiveTrace.push_back(obj);
  }
  if (it == maxIters && res.gradientNorm >= tol)
    throw std::runtime_error("geometric program did not converge");

  objective(y, &grad, nullptr, &wts);
  res.gradientNorm = grad.norm();
  res.iterations = it;
  res.logX.assign(y.data(), y.data() + d);
  double s = wts.sum();
  res.pHat.resize(n + 1);
  for (int i = 0; i <= n; ++i) res.pHat[i] = wts[i] / s;
  return res;
}

MLReport toricMlDegree(const ToricModel& model, const TrackerConfig& cfg, int trials,
                       std::uint64_t seed) {
  MLReport rep;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::uint64_t trialSeed = rng.raw();
    Rng trialRng(trialSeed);
    DataVector u = DataVector::genericInts(trialRng, model.n());
    CriticalSystem sys = buildToricSystem(model.A, model.c, u);
    TrackerConfig tc = cfg;
    tc.seed = trialSeed;
    long fails = 0;
    rep.perTrialCounts.push_back(countOffHRegular(sys, tc, &fails));
    rep.pathFailures += fails;
    rep.seedsUsed.push_back(trialSeed);
  }
  std::vector<long> counts = rep.perTrialCounts;
  std::sort(counts.begin(), counts.end());
  long best = counts[0];
  int bestRun = 1, run = 1;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    run = (counts[i] == counts[i - 1]) ? run + 1 : 1;
    if (run > bestRun) {
      bestRun = run;
      best = counts[i];
    }
  }
  rep.mlDegree = best;
  rep.stable = std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) ==
               counts.end();
  return rep;
}

std::vector<long> smithDiagonal(std::vector<std::vector<long>> M) {
  if (M.empty() || M[0].empty()) return {};
  const int rows = static_cast<int>(M.size());
  const int cols = static_cast<int>(M[0].size());
  std::vector<long> diag;
  int top = 0, left = 0;
  while (top < rows && left < cols) {
    // find a nonzero pivot
    int pr = -1, pc = -1;
    long bestAbs = 0;
    for (int r = top; r < rows; ++r)
      for (int c = left; c < cols; ++c)
        if (M[r][c] != 0 && (bestAbs == 0 || std::llabs(M[r][c]) < bestAbs)) {
          bestAbs = std::llabs(M[r][c]);
          pr = r;
          pc = c;
        }
    if (pr < 0) break;
    std::swap(M[top], M[pr]);
    for (int r = 0; r < rows; ++r) std::swap(M[r][left], M[r][pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int r = top + 1; r < rows; ++r) {
        if (M[r][left] == 0) continue;
        long q = M[r][left] / M[top][left];
        for (int c = left; c < cols; ++c) M[r][c] -= q * M[top][c];
        if (M[r][left] != 0) {
          std::swap(M[top], M[r]);
          clean = false;
        }
      }
      for (int c = left + 1; c < cols; ++c) {
        if (M[top][c] == 0) continue;
        long q = M[top][c] / M[top][left];
        for (int r = top; r < rows; ++r) M[r][c] -= q * M[r][left];
        if (M[top][c] != 0) {
          for (int r = top; r < rows; ++r) std::swap(M[r][left], M[r][c]);
          clean = false;
        }
      }
    }
    diag.push_back(std::llabs(M[top][left]));
    ++top;
    ++left;
  }
  return diag;
}

namespace {

long long det3(const std::array<std::array<long, 3>, 3>& m) {
  return static_cast<long long>(m[0][0]) * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         static_cast<long long>(m[0][1]) * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         static_cast<long long>(m[0][2]) * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

long hullVolume1(const std::vector<std::vector<long>>& pts) {
  long lo = pts[0][0], hi = pts[0][0];
  for (const auto& p : pts) {
    lo = std::min(lo, p[0]);
    hi = std::max(hi, p[0]);
  }
  return hi - lo;
}

long hullVolume2(std::vector<std::vector<long>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return 0;
  auto cross = [](const std::vector<long>& o, const std::vector<long>& a,
                  const std::vector<long>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  // monotone chain
  std::vector<std::vector<long>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  std::size_t lower = hull.size() + 1;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (hull.size() >= lower && cross(hull[hull.size() - 2], hull.back(), *it) <= 0)
      hull.pop_back();
    hull.push_back(*it);
  }
  hull.pop_back();
  long area2 = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    area2 += a[0] * b[1] - a[1] * b[0];
  }
  return std::llabs(area2);
}

long hullVolume3(std::vector<std::vector<long>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int k = static_cast<int>(pts.size());
  if (k < 4) return 0;
  auto sub = [](const std::vector<long>& a, const std::vector<long>& b) {
    return std::array<long, 3>{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  };
  auto crossv = [](const std::array<long, 3>& a, const std::array<long, 3>& b) {
    return std::array<long, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                               a[0] * b[1] - a[1] * b[0]};
  };
  struct Plane {
    std::array<long, 3> n;
    long off;
    bool operator<(const Plane& o) const {
      if (n != o.n) return n < o.n;
      return off < o.off;
    }
  };
  std::vector<Plane> planes;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int l = j + 1; l < k; ++l) {
        auto nv = crossv(sub(pts[j], pts[i]), sub(pts[l], pts[i]));
        if (nv[0] == 0 && nv[1] == 0 && nv[2] == 0) continue;
        long off = nv[0] * pts[i][0] + nv[1] * pts[i][1] + nv[2] * pts[i][2];
        bool above = false, below = false;
        for (const auto& p : pts) {
          long s = nv[0] * p[0] + nv[1] * p[1] + nv[2] * p[2] - off;
          if (s > 0) above = true;
          if (s < 0) below = true;
        }
        if (above && below) continue;
        if (below) {  // normalize to outward (all points weakly below)
          for (auto& x : nv) x = -x;
          off = -off;
        }
        long g = 0;
        for (long x : nv) g = std::gcd(g, std::llabs(x));
        g = std::gcd(g, std::llabs(off));
        if (g > 1) {
          for (auto& x : nv) x /= g;
          off /= g;
        }
        planes.push_back({nv, off});
      }
  std::sort(planes.begin(), planes.end());
  planes.erase(std::unique(planes.begin(), planes.end(),
                           [](const Plane& a, const Plane& b) {
                             return a.n == b.n && a.off == b.off;
                           }),
               planes.end());

  const auto& v0 = pts[0];
  long long vol6 = 0;
  for (const auto& pl : planes) {
    std::vector<std::vector<long>> face;
    for (const auto& p : pts)
      if (pl.n[0] * p[0] + pl.n[1] * p[1] + pl.n[2] * p[2] == pl.off) face.push_back(p);
    if (face.size() < 3) continue;
    // order the face polygon around its centroid, exactly (scaled by |face|)
    int fc = static_cast<int>(face.size());
    std::array<long, 3> S{0, 0, 0};
    for (const auto& p : face)
      for (int t = 0; t < 3; ++t) S[t] += p[t];
    // drop the largest axis of the normal for 2D ordering
    int ax = 0;
    for (int t = 1; t < 3; ++t)
      if (std::llabs(pl.n[t]) > std::llabs(pl.n[ax])) ax = t;
    int u = (ax + 1) % 3, v = (ax + 2) % 3;
    auto angleLess = [&](const std::vector<long>& a, const std::vector<long>& b) {
      long au = fc * a[u] - S[u], av = fc * a[v] - S[v];
      long bu = fc * b[u] - S[u], bv = fc * b[v] - S[v];
      auto half = [](long x, long y) { return (y < 0 || (y == 0 && x < 0)) ? 1 : 0; };
      int ha = half(au, av), hb = half(bu, bv);
      if (ha != hb) return ha < hb;
      return au * bv - av * bu > 0;
    };
    std::sort(face.begin() + 1, face.end(), angleLess);
    long long coneVol = 0;
    for (int t = 1; t + 1 < fc; ++t) {
      std::array<std::array<long, 3>, 3> m;
      for (int s = 0; s < 3; ++s) {
        m[0][s] = face[0][s] - v0[s];
        m[1][s] = face[t][s] - v0[s];
        m[2][s] = face[t + 1][s] - v0[s];
      }
      coneVol += det3(m);
    }
    vol6 += std::llabs(coneVol);
  }
  return static_cast<long>(vol6);
}

}  // namespace

long normalizedVolume(const std::vector<std::vector<long>>& Ain) {
  auto A = reduceToricRows(Ain);
  const int d = static_cast<int>(A.size()) - 1;
  const int n = static_cast<int>(A[0].size()) - 1;
  if (d < 1 || d > 3) throw input_error("normalized volume supports 1 <= d <= 3 only");

  std::vector<std::vector<long>> pts(n + 1, std::vector<long>(d));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < d; ++j) pts[i][j] = A[j][i];

  long vol;
  if (d == 1) vol = hullVolume1(pts);
  else if (d == 2) vol = hullVolume2(pts);
  else vol = hullVolume3(pts);
  if (vol <= 0) throw input_error("degenerate polytope in normalized volume");

  // index of the affine lattice generated by the column differences
  std::vector<std::vector<long>> diffs(d, std::vector<long>(n));
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < d; ++j) diffs[j][i - 1] = pts[i][j] - pts[0][j];
  auto snf = smithDiagonal(std::move(diffs));
  if (static_cast<int>(snf.size()) < d)
    throw input_error("column differences do not span the lattice");
  long index = 1;
  for (long x : snf) index *= x;
  if (index == 0 || vol % index != 0)
    throw input_error("volume not divisible by lattice index");
  return vol / index;
}

}  // namespace mlgeo
