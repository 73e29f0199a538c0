#include "mlgeo/reproduce.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "mlgeo/catalog.hpp"
#include "mlgeo/horn.hpp"
#include "mlgeo/linmatroid.hpp"
#include "mlgeo/mldeg.hpp"
#include "mlgeo/rankdual.hpp"
#include "mlgeo/toricgp.hpp"

namespace mlgeo::accept {

namespace {

constexpr std::uint64_t kSeed = 271828;

struct Ctx {
  std::vector<CheckResult> results;

  void check(const std::string& id, const std::string& tier,
             const std::function<std::string()>& body) {
    CheckResult r;
    r.id = id;
    r.tier = tier;
    auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = body();
      r.pass = true;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(r);
  }
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

std::string fmtCounts(const std::vector<long>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

QPoly randomDenseCurve(Rng& rng, int d) {
  while (true) {
    QPoly f(3);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j) {
        std::vector<int> e{i, j, d - i - j};
        f.add_term(e, Rat(rng.nonzeroInt(9)));
      }
    VarietySpec s;
    s.n = 2;
    s.codim = 1;
    s.generators = {f};
    try {
      s.validateStrict();
      return f;
    } catch (const input_error&) {
      continue;
    }
  }
}

RMat randomPositiveMatrix(Rng& rng, int m, int n, long lo = 1000, long hi = 1000000) {
  RMat U(m, std::vector<Rat>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) U[i][j] = Rat(rng.intIn(lo, hi));
  return U;
}

// ||dlog(ell_u)(p) projected off the row span of the generator Jacobian||,
// relative; the defining property of a likelihood critical point.
double dlogResidual(const VarietySpec& spec, const std::vector<Rat>& u,
                    const std::vector<cd>& p) {
  const int n = spec.n;
  cd psum(0, 0);
  Rat usumR(0);
  for (int i = 0; i <= n; ++i) {
    psum += p[i];
    usumR += u[i];
  }
  cd usum = rat_complex(usumR);
  Eigen::VectorXcd v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = rat_complex(u[i]) / p[i] - usum / psum;

  Eigen::MatrixXcd Jt(n + 1, spec.generators.size());
  for (std::size_t g = 0; g < spec.generators.size(); ++g)
    for (int i = 0; i <= n; ++i) Jt(i, static_cast<int>(g)) = toComplex(spec.generators[g].diff(i)).eval(p);
  Eigen::VectorXcd coef = Jt.colPivHouseholderQr().solve(v);
  double rel = (Jt * coef - v).norm() / std::max(1.0, v.norm());
  return rel;
}

std::vector<cd> ratVec(const std::vector<Rat>& u) {
  std::vector<cd> out;
  for (const auto& r : u) out.push_back(rat_complex(r));
  return out;
}

// ----- fast tier ------------------------------------------------------------

void tierFast(Ctx& ctx) {
  TrackerConfig cfg;

  ctx.check("01-plane-curves-generic-degree", "fast", [&] {
    Rng rng(kSeed + 1);
    std::vector<long> expected{6, 12, 20};
    std::ostringstream os;
    for (int d = 2; d <= 4; ++d) {
      VarietySpec s;
      s.n = 2;
      s.codim = 1;
      s.generators = {randomDenseCurve(rng, d)};
      MLReport r = mlDegree(s, cfg, 3, rng.raw());
      require(r.stable, "unstable count at degree " + std::to_string(d));
      require(r.mlDegree == expected[d - 2],
              "degree " + std::to_string(d) + " gave " + std::to_string(r.mlDegree));
      os << "d=" << d << ":" << r.mlDegree << " ";
    }
    return os.str();
  });

  ctx.check("02-singular-cubics", "fast", [&] {
    MLReport node = mlDegree(catalog::variety("cubic-node"), cfg, 3, kSeed + 2);
    require(node.stable && node.mlDegree == 10,
            "node cubic gave " + std::to_string(node.mlDegree));
    MLReport cusp = mlDegree(catalog::variety("cubic-cusp"), cfg, 3, kSeed + 3);
    require(cusp.stable && cusp.mlDegree == 9, "cusp cubic gave " + std::to_string(cusp.mlDegree));
    return std::string("node:10 cusp:9");
  });

  ctx.check("03-hardy-weinberg-closed-form", "fast", [&] {
    Rng rng(kSeed + 4);
    VarietySpec spec = catalog::variety("hardy-weinberg");
    HornModel horn = catalog::horn("hardy-weinberg");
    for (int t = 0; t < 10; ++t) {
      std::vector<Rat> u{Rat(rng.intIn(1, 1000)), Rat(rng.intIn(1, 1000)),
                         Rat(rng.intIn(1, 1000))};
      Rat s = u[0] + u[1] + u[2];
      Rat a = 2 * u[0] + u[1], b = u[1] + 2 * u[2];
      std::vector<Rat> closed{a * a / (4 * s * s), a * b / (2 * s * s), b * b / (4 * s * s)};

      std::vector<Rat> hp = hornMle(horn, u);
      require(hp == closed, "horn MLE differs from the closed form");

      SolutionSet ss = mleSolve(spec, DataVector{u}, cfg, rng.raw());
      auto pts = ss.offHRegularModelPoints();
      require(pts.size() == 1, "expected a unique critical point");
      cd psum = pts[0][0] + pts[0][1] + pts[0][2];
      for (int i = 0; i < 3; ++i)
        require(std::abs(pts[0][i] / psum - rat_complex(closed[i])) < 1e-10,
                "tracker point differs from the closed form");
    }
    return std::string("10 data vectors, exact + 1e-10");
  });

  ctx.check("04-linear-2plane-pipeline", "fast", [&] {
    LinearModel lm = catalog::linear("generic-2plane-p4");
    Matroid M = arrangementMatroid(lm);
    std::vector<int> ord(M.groundSize());
    for (int i = 0; i < M.groundSize(); ++i) ord[i] = i;
    FHVectors fh = brokenCircuitHVector(M, ord);
    require(fh.h.h == std::vector<Int>{Int(1), Int(3), Int(6)}, "h-vector is not (1,3,6)");
    BinaryForm B = linearMlBidegree(lm);
    require(B == BinaryForm::fromLongs({6, 3, 1, 0, 0}), "bidegree is not 6p^4+3p^3u+p^2u^2");

    Rng rng(kSeed + 5);
    DataVector u = DataVector::genericInts(rng, 4, 1, 1000);
    SolutionSet ss = mleLinear(lm, u, cfg, rng.raw());
    auto pts = ss.offHRegularModelPoints();
    require(pts.size() == 6, "tracker found " + std::to_string(pts.size()) + " points");
    for (const auto& p : pts) {
      double scale = 0, im = 0;
      for (const auto& z : p) {
        scale = std::max(scale, std::abs(z));
        im = std::max(im, std::abs(z.imag()));
      }
      require(im < 1e-7 * scale, "non-real solution for positive data");
    }
    return std::string("h=(1,3,6), B=(6,3,1), 6 real points");
  });

  ctx.check("05-generic-complete-intersections", "fast", [&] {
    require(genericCiMlDegree(3, {2}) == 14, "(n=3,d=2) formula");
    require(genericCiMlDegree(3, {2, 2}) == 20, "(n=3,(2,2)) formula");
    require(genericCiMlDegree(3, {2, 2, 2}) == 8, "(n=3,(2,2,2)) formula");
    Rng rng(kSeed + 6);
    VarietySpec s;
    s.n = 3;
    s.codim = 2;
    for (int k = 0; k < 2; ++k) {
      QPoly q(4);
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          std::vector<int> e(4, 0);
          e[i] += 1;
          e[j] += 1;
          q.add_term(e, Rat(rng.nonzeroInt(9)));
        }
      s.generators.push_back(q);
    }
    MLReport r = mlDegree(s, cfg, 3, rng.raw());
    require(r.stable && r.mlDegree == 20, "random (2,2) curve gave " + std::to_string(r.mlDegree));
    return std::string("14, 20, 8; tracker confirms 20");
  });

  ctx.check("11-horn-catalog-exactness", "fast", [&] {
    for (const std::string name : {"hardy-weinberg", "indep22", "chain222", "disc-cubic"}) {
      HornVerification v = verifyMlDegreeOne(catalog::horn(name), 100, cfg, kSeed + 7, 0);
      require(v.ok, name + ": " + v.reason);
      require(v.trialsRun == 100, name + ": resonance hit on positive data");
    }
    return std::string("4 models x 100 data vectors, exact");
  });

  ctx.check("12-involution-pairs", "fast", [&] {
    std::vector<std::pair<std::vector<long>, std::vector<long>>> pairs = {
        {{4, 6, 6, 6, 2, 0}, {4, 20, 24, 12, 2, 0}},
        {{12, 15, 12, 3, 0}, {12, 30, 18, 3, 0}},
        {{6, 12, 15, 12, 3, 0}, {6, 42, 48, 21, 3, 0}},
        {{10, 24, 33, 38, 39, 33, 12, 3, 0}, {10, 182, 436, 518, 351, 138, 30, 3, 0}},
        {{3, 3, 3, 3, 3, 0}, {3, 12, 18, 12, 3, 0}},
        {{6, 3, 1, 0, 0}, {6, 4, 1, 0, 0}},
    };
    for (auto& [b, s] : pairs) {
      BinaryForm B = BinaryForm::fromLongs(b), S = BinaryForm::fromLongs(s);
      require(involutionBfromS(S) == B && involutionSfromB(B) == S, "catalog pair mismatch");
    }
    Rng rng(kSeed + 8);
    for (int t = 0; t < 100; ++t) {
      int deg = static_cast<int>(rng.intIn(1, 10));
      std::vector<Int> c;
      for (int i = 0; i <= deg; ++i) c.emplace_back(rng.intIn(-50, 50));
      BinaryForm S(c);
      require(involutionSfromB(involutionBfromS(S)) == S, "maps are not mutually inverse");
    }
    return std::string("6 catalog pairs exact; inverse on 100 random forms");
  });

  ctx.check("14-em-hair-loss", "fast", [&] {
    RMat U = {{Rat(51), Rat(45), Rat(33)}, {Rat(28), Rat(30), Rat(29)}, {Rat(15), Rat(27), Rat(38)}};
    EMResult r = emMixture(U, 2, 300, 0.0, kSeed + 9);
    require(static_cast<int>(r.logLikTrace.size()) >= 100, "fewer than 100 iterations");
    for (std::size_t i = 1; i < r.logLikTrace.size(); ++i)
      require(r.logLikTrace[i] >= r.logLikTrace[i - 1] - 1e-9, "log-likelihood decreased");
    CMat P = r.P.cast<cd>();
    require(numericalRank(P) == 2, "final point is not numerically rank 2");
    return std::string("monotone over " + std::to_string(r.logLikTrace.size() - 1) +
                       " iterations, rank 2");
  });

  ctx.check("p1-tracker-determinism", "fast", [&] {
    VarietySpec spec = catalog::variety("hardy-weinberg");
    DataVector u{std::vector<Rat>{Rat(17), Rat(5), Rat(23)}};
    SolutionSet a = mleSolve(spec, u, cfg, kSeed + 10);
    SolutionSet b = mleSolve(spec, u, cfg, kSeed + 10);
    require(a.points.size() == b.points.size(), "point counts differ between runs");
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      require(a.points[i].cls == b.points[i].cls, "classification differs");
      require(a.points[i].cluster == b.points[i].cluster, "cluster ids differ");
      for (std::size_t k = 0; k < a.points[i].coords.size(); ++k)
        require(a.points[i].coords[k] == b.points[i].coords[k], "coordinates not bit-identical");
    }
    return std::string("bit-identical across reruns");
  });

  ctx.check("p2-dlog-criticality", "fast", [&] {
    Rng rng(kSeed + 11);
    VarietySpec s;
    s.n = 2;
    s.codim = 1;
    s.generators = {randomDenseCurve(rng, 2)};
    DataVector u = DataVector::genericInts(rng, 2);
    SolutionSet ss = mleSolve(s, u, cfg, rng.raw());
    auto pts = ss.offHRegularModelPoints();
    require(pts.size() == 6, "generic quadric should have 6 critical points");
    for (const auto& p : pts)
      require(dlogResidual(s, u.u, p) < 1e-6, "dlog residual above 1e-6");
    return std::string("6 points, dlog residual < 1e-6");
  });

  ctx.check("p3-hvector-order-independence", "fast", [&] {
    LinearModel lm = catalog::linear("generic-2plane-p4");
    Matroid M = arrangementMatroid(lm);
    std::vector<int> ord(M.groundSize());
    for (int i = 0; i < M.groundSize(); ++i) ord[i] = i;
    HVector ref = brokenCircuitHVector(M, ord).h;
    Rng rng(kSeed + 12);
    for (int t = 0; t < 5; ++t) {
      for (int i = M.groundSize() - 1; i > 0; --i)
        std::swap(ord[i], ord[rng.intIn(0, i)]);
      require(brokenCircuitHVector(M, ord).h == ref, "h-vector depends on the ordering");
    }
    // log-concavity h_{i-1} h_{i+1} <= h_i^2
    for (std::size_t i = 1; i + 1 < ref.h.size(); ++i)
      require(ref.h[i - 1] * ref.h[i + 1] <= ref.h[i] * ref.h[i], "h-vector not log-concave");
    return std::string("5 random orders agree; log-concave");
  });

  ctx.check("p4-gp-monotonicity", "fast", [&] {
    ToricModel tm = catalog::toric("cubic-surface");
    Rng rng(kSeed + 13);
    DataVector u = DataVector::genericInts(rng, tm.n(), 1, 1000);
    BirchResult r = birchMle(tm, u, 1e-12, 200);
    for (std::size_t i = 1; i < r.objectiveTrace.size(); ++i)
      require(r.objectiveTrace[i] < r.objectiveTrace[i - 1] + 1e-12, "objective increased");
    double sum = 0;
    for (double v : r.pHat) sum += v;
    require(std::abs(sum - 1.0) < 1e-12, "probabilities do not sum to one");
    return std::string("objective strictly decreasing, sums to 1");
  });

  ctx.check("p5-supermodularity", "fast", [&] {
    Rng rng(kSeed + 14);
    auto tensor = [&](bool rankTwo) {
      std::vector<std::vector<std::vector<double>>> P(
          2, std::vector<std::vector<double>>(2, std::vector<double>(2, 0.0)));
      double total = 0;
      int copies = rankTwo ? 2 : 1;
      for (int cpy = 0; cpy < copies; ++cpy) {
        double a[2], b[2], c[2];
        for (auto* v : {a, b, c}) {
          v[0] = rng.realIn(0.05, 1);
          v[1] = rng.realIn(0.05, 1);
        }
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
              P[i][j][k] += a[i] * b[j] * c[k];
            }
      }
      for (auto& s1 : P)
        for (auto& s2 : s1)
          for (double& v : s2) total += v;
      for (auto& s1 : P)
        for (auto& s2 : s1)
          for (double& v : s2) v /= total;
      return P;
    };
    for (int t = 0; t < 20; ++t) require(supermodular222(tensor(true)), "mixture rejected");
    for (int t = 0; t < 20; ++t) require(supermodular222(tensor(false)), "product rejected");
    std::vector<std::vector<std::vector<double>>> diag(
        2, std::vector<std::vector<double>>(2, std::vector<double>(2, 0.0)));
    diag[0][0][0] = diag[1][1][1] = 0.5;
    require(supermodular222(diag), "diagonal tensor rejected");
    std::vector<std::vector<std::vector<double>>> odd(
        2, std::vector<std::vector<double>>(2, std::vector<double>(2, 0.0)));
    odd[0][0][1] = odd[0][1][0] = odd[1][0][0] = odd[1][1][1] = 0.25;
    require(!supermodular222(odd), "odd-parity tensor accepted");
    return std::string("mixtures accepted, odd-parity slice rejected");
  });
}

// ----- standard tier --------------------------------------------------------

void tierStandard(Ctx& ctx) {
  TrackerConfig cfg;

  ctx.check("06-grassmannian-g24", "standard", [&] {
    VarietySpec spec = catalog::variety("grassmannian-2-4");
    BidegreeResult r = mlBidegree(spec, cfg, kSeed + 20);
    require(r.sectional.stable, "unstable sectional counts");
    require(r.sectional.sliceDegrees == std::vector<long>{4, 20, 24, 12, 2},
            "sectional is " + fmtCounts(r.sectional.sliceDegrees));
    require(r.B == BinaryForm::fromLongs({4, 6, 6, 6, 2, 0}),
            "bidegree involution mismatch: " + r.B.str());
    return std::string("S=(4,20,24,12,2), B=(4,6,6,6,2)");
  });

  ctx.check("07-determinantal-332-duality", "standard", [&] {
    Rng rng(kSeed + 21);
    RMat U = randomPositiveMatrix(rng, 3, 3, 10, 100);
    TrackerConfig tc = cfg;
    tc.seed = rng.raw();
    auto r2 = rankCriticalPoints(3, 3, 2, U, tc);
    require(r2.points.size() == 10, "rank-2 count " + std::to_string(r2.points.size()));
    DualityPairing pair = dualityPairing(r2.points, r2.points, U, 1e-6);
    require(pair.perfect, "no perfect self-dual matching");
    require(pair.maxResidual < 1e-6, "pairing residual too large");
    require(pair.realityPreserved, "reality not preserved");
    auto r1 = rankCriticalPoints(3, 3, 1, U, tc);
    auto r3 = rankCriticalPoints(3, 3, 3, U, tc);
    require(r1.points.size() == 1 && r3.points.size() == 1,
            "column symmetry violated: " + std::to_string(r1.points.size()) + "/10/" +
                std::to_string(r3.points.size()));
    return std::string("10 points, self-dual pairing < 1e-6, symmetry 1/10/1");
  });

  ctx.check("08-symmetric-332", "standard", [&] {
    Rng rng(kSeed + 22);
    TrackerConfig tc = cfg;
    tc.seed = rng.raw();
    {
      RMat U = randomPositiveMatrix(rng, 3, 3, 10, 100);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) U[j][i] = U[i][j];
      auto rr = symmetricRankCriticalPoints(3, 2, U, tc);
      require(rr.points.size() == 6, "generic count " + std::to_string(rr.points.size()));
    }
    RMat U = {{Rat(10), Rat(9), Rat(1)}, {Rat(9), Rat(21), Rat(3)}, {Rat(1), Rat(3), Rat(7)}};
    auto rr = symmetricRankCriticalPoints(3, 2, U, tc);
    require(rr.points.size() == 6, "table count " + std::to_string(rr.points.size()));

    // published table, ordered by log-likelihood; the p23 entry of the third
    // row is forced by the unit coordinate sum
    const double table[6][6] = {
        {0.1037, 0.3623, 0.0186, 0.3179, 0.0607, 0.1368},
        {0.1084, 0.2092, 0.1623, 0.3997, 0.0503, 0.0702},
        {0.0945, 0.2554, 0.1438, 0.3781, 0.0472, 0.0810},
        {0.1794, 0.2152, 0.0142, 0.3052, 0.2333, 0.0528},
        {0.1565, 0.2627, 0.0125, 0.2887, 0.2186, 0.0609},
        {0.1636, 0.1517, 0.1093, 0.3629, 0.1811, 0.0312},
    };
    std::vector<std::array<double, 7>> got;  // coords + loglik
    for (const auto& mp : rr.points) {
      require(mp.real && mp.positive, "non-positive critical point for the table data");
      std::array<double, 7> row{};
      int idx = 0;
      double ll = 0, psum = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
          double pij =
              (i == j) ? mp.P(i, j).real() / 2 : mp.P(i, j).real();
          row[idx++] = pij;
          psum += pij;
          ll += rat_double(U[i][j]) * std::log(pij);
        }
      ll -= 51.0 * std::log(psum);
      row[6] = ll;
      got.push_back(row);
    }
    std::sort(got.begin(), got.end(),
              [](const auto& a, const auto& b) { return a[6] > b[6]; });
    require(std::abs(got[0][6] - (-82.18102)) < 1e-3, "best log-likelihood mismatch");
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c)
        require(std::abs(got[r][c] - table[r][c]) < 1e-3,
                "table coordinate mismatch at row " + std::to_string(r));
    return std::string("6 real positive points matching the table; best -82.181");
  });

  ctx.check("09-toric-surface-and-volume", "standard", [&] {
    MLReport a = toricMlDegree(catalog::toric("cubic-surface"), cfg, 3, kSeed + 23);
    require(a.stable && a.mlDegree == 3, "generic scaling gave " + std::to_string(a.mlDegree));
    MLReport b = toricMlDegree(catalog::toric("cubic-surface-special"), cfg, 3, kSeed + 24);
    require(b.stable && b.mlDegree == 2, "special scaling gave " + std::to_string(b.mlDegree));
    long vol = normalizedVolume({{0, 3, 0, 1}, {0, 0, 3, 1}, {1, 1, 1, 1}});
    require(vol == 3, "normalized volume gave " + std::to_string(vol));
    MLReport c = toricMlDegree(catalog::toric("sym-rank1-33"), cfg, 3, kSeed + 25);
    require(c.stable && c.mlDegree == 3, "binomial cubic gave " + std::to_string(c.mlDegree));
    MLReport d = toricMlDegree(catalog::toric("sym-rank1-33-plus"), cfg, 3, kSeed + 26);
    require(d.stable && d.mlDegree == 2, "sign-flipped cubic gave " + std::to_string(d.mlDegree));
    return std::string("3 / 2 with volume 3; binomial cubic 3 / 2");
  });

  ctx.check("10-restriction-deletion-split", "standard", [&] {
    SplitCheckResult a = rankSplitCheck(3, 3, 2, cfg, kSeed + 27);
    require(a.stable, "unstable counts for rank 2");
    require(a.mlTotal == 10 && a.mlSlice == 5 && a.mlDataZero == 5 && a.holds,
            "rank 2 split " + std::to_string(a.mlTotal) + " = " + std::to_string(a.mlSlice) +
                " + " + std::to_string(a.mlDataZero));
    SplitCheckResult b = rankSplitCheck(3, 3, 1, cfg, kSeed + 28);
    require(b.stable, "unstable counts for rank 1");
    require(b.mlTotal == 1 && b.mlSlice == 0 && b.mlDataZero == 1 && b.holds,
            "rank 1 split " + std::to_string(b.mlTotal) + " = " + std::to_string(b.mlSlice) +
                " + " + std::to_string(b.mlDataZero));
    return std::string("10 = 5 + 5 and 1 = 0 + 1");
  });

  ctx.check("13-rational-normal-curve-p3", "standard", [&] {
    MLReport r = mlDegree(catalog::variety("rnc-p3"), cfg, 3, kSeed + 29);
    require(r.stable && r.mlDegree == 13, "gave " + std::to_string(r.mlDegree));
    return std::string("ML degree 13");
  });

  ctx.check("15s-secant-sectional-bidegree", "standard", [&] {
    VarietySpec spec = catalog::variety("secant-rnc4");
    BidegreeResult r = mlBidegree(spec, cfg, kSeed + 30);
    require(r.sectional.stable, "unstable sectional counts");
    require(r.sectional.sliceDegrees == std::vector<long>{12, 30, 18, 3},
            "sectional is " + fmtCounts(r.sectional.sliceDegrees));
    require(r.B == BinaryForm::fromLongs({12, 15, 12, 3, 0}), "bidegree is " + r.B.str());
    return std::string("S=(12,30,18,3), B=(12,15,12,3)");
  });
}

// ----- extended tier --------------------------------------------------------

void tierExtended(Ctx& ctx) {
  TrackerConfig cfg;

  ctx.check("15-rank-342-parameter-homotopy", "extended", [&] {
    Rng rng(kSeed + 40);
    RMat U1 = randomPositiveMatrix(rng, 3, 4, 10, 100);
    CriticalSystem sys = buildRankSystem(3, 4, 2, U1);
    TrackerConfig tc = cfg;
    tc.seed = rng.raw();
    tc.startKind = TrackerConfig::Start::Multihomogeneous;

    auto t0 = std::chrono::steady_clock::now();
    PreprocessResult pre = preprocessGenericData(sys, tc);
    double preprocessSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(pre.solutions.size() == 26,
            "preprocess found " + std::to_string(pre.solutions.size()) + " solutions");

    t0 = std::chrono::steady_clock::now();
    auto rc = rankCriticalPoints(3, 4, 2, U1, tc, &pre);
    double solveSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(rc.points.size() == 26, "target count " + std::to_string(rc.points.size()));
    require(solveSeconds * 10 < preprocessSeconds, "parameter homotopy not 10x faster");

    // second data set through the same preprocess
    RMat U2 = randomPositiveMatrix(rng, 3, 4, 10, 100);
    auto rc2 = rankCriticalPoints(3, 4, 2, U2, tc, &pre);
    require(rc2.points.size() == 26, "second target count " + std::to_string(rc2.points.size()));

    // self-dual matching of the 26 rank-2 points (m - r + 1 = 2); the rank-3
    // and rank-1 models pair with each other with one point each
    DualityPairing pair = dualityPairing(rc.points, rc.points, U1, 1e-6);
    require(pair.perfect && pair.maxResidual < 1e-6, "rank-2 self pairing failed");
    auto r1 = rankCriticalPoints(3, 4, 1, U1, tc);
    auto r3 = rankCriticalPoints(3, 4, 3, U1, tc);
    require(r1.points.size() == 1 && r3.points.size() == 1, "rank 1/3 counts not 1/1");
    DualityPairing p13 = dualityPairing(r1.points, r3.points, U1, 1e-6);
    require(p13.perfect && p13.maxResidual < 1e-6, "rank 1 vs rank 3 pairing failed");

    std::ostringstream os;
    os << "26 points; preprocess " << static_cast<long>(preprocessSeconds)
       << "s, parameter homotopy " << solveSeconds << "s";
    return os.str();
  });
}

}  // namespace

std::vector<CheckResult> run(const std::string& tier) {
  Ctx ctx;
  if (tier == "fast" || tier == "all") tierFast(ctx);
  if (tier == "standard" || tier == "all") tierStandard(ctx);
  if (tier == "extended" || tier == "all") tierExtended(ctx);
  if (ctx.results.empty()) throw input_error("unknown tier: " + tier);
  return ctx.results;
}

}  // namespace mlgeo::accept
