#include "mlgeo/catalog.hpp"

namespace mlgeo::catalog {

namespace {

VarietySpec hypersurface(int n, const std::string& f) {
  VarietySpec s;
  s.n = n;
  s.codim = 1;
  s.generators.push_back(parsePoly(f, n + 1));
  return s;
}

QPoly lin(int nvars, std::initializer_list<long> coeffs) {
  QPoly p(nvars);
  int i = 0;
  for (long c : coeffs) {
    if (c != 0) p += QPoly::variable(nvars, i).scaled(Rat(c));
    ++i;
  }
  return p;
}

}  // namespace

VarietySpec variety(const std::string& name) {
  if (name == "hardy-weinberg") return hypersurface(2, "4*p0*p2 - p1^2");
  if (name == "grassmannian-2-4") return hypersurface(5, "p0*p5 - p1*p4 + p2*p3");
  if (name == "sym33-det")
    return hypersurface(5, "8*p0*p3*p5 - 2*p0*p4^2 - 2*p1^2*p5 + 2*p1*p2*p4 - 2*p2^2*p3");
  if (name == "det33")
    return hypersurface(8, "p0*p4*p8 - p0*p5*p7 - p1*p3*p8 + p1*p5*p6 + p2*p3*p7 - p2*p4*p6");
  if (name == "secant-rnc4")
    return hypersurface(4, "288*p0*p2*p4 - 108*p0*p3^2 - 108*p1^2*p4 + 36*p1*p2*p3 - 8*p2^3");
  if (name == "toric-fourfold") return hypersurface(5, "p0*p3*p5 - p1*p2*p4");
  if (name == "toric-fourfold-plus") return hypersurface(5, "p0*p3*p5 + p1*p2*p4");
  if (name == "indep22") return hypersurface(3, "p0*p3 - p1*p2");

  if (name == "cubic-node" || name == "cubic-cusp") {
    QPoly a = lin(3, {1, -1, 0});   // p0 - p1
    QPoly b = lin(3, {0, 1, -1});   // p1 - p2
    QPoly c = lin(3, {1, 2, 4});    // transversal to H, nonzero at (1:1:1)
    QPoly f = (name == "cubic-node") ? a * b * c + a * a * a + b * b * b
                                     : a * a * c - b * b * b;
    VarietySpec s;
    s.n = 2;
    s.codim = 1;
    s.generators.push_back(f);
    return s;
  }

  if (name == "rnc-p3") {
    // twisted cubic as 2x2 minors of a symmetric-shaped matrix of linear forms
    QPoly A = lin(4, {1, 1, -1, 0});
    QPoly B = lin(4, {2, 0, -1, 9});
    QPoly C = lin(4, {1, -6, 8, 0});
    QPoly D = lin(4, {7, 1, 2, 0});
    VarietySpec s;
    s.n = 3;
    s.codim = 2;
    s.generators = {A * C - B * B, A * D - B * C, B * D - C * C};
    return s;
  }

  if (name == "disc-cubic") {
    VarietySpec s;
    s.n = 3;
    s.codim = 2;
    s.generators.push_back(parsePoly("9*p1*p2 - 8*p0*p3", 4));
    s.generators.push_back(
        parsePoly("p0^2 - 12*p0*p3 - 12*p1*p3 - 12*p2*p3 - 12*p3^2", 4));
    return s;
  }
  if (name == "chain222") {
    VarietySpec s;
    s.n = 7;
    s.codim = 2;
    s.generators.push_back(parsePoly("p0*p5 - p1*p4", 8));
    s.generators.push_back(parsePoly("p2*p7 - p3*p6", 8));
    return s;
  }
  if (name == "linear-2plane-p4") {
    std::vector<std::vector<Rat>> forms = {
        {Rat(1), Rat(2), Rat(-1), Rat(3), Rat(5)},
        {Rat(2), Rat(-3), Rat(4), Rat(1), Rat(-2)},
    };
    VarietySpec s;
    s.n = 4;
    s.codim = 2;
    for (const auto& row : forms) {
      QPoly g(5);
      for (int i = 0; i < 5; ++i) g += QPoly::variable(5, i).scaled(row[i]);
      s.generators.push_back(g);
    }
    return s;
  }
  throw input_error("unknown catalog variety: " + name);
}

HornModel horn(const std::string& name) {
  HornModel h;
  if (name == "hardy-weinberg") {
    h.B = {{2, 0, -2}, {1, 1, -2}, {0, 2, -2}};
    h.c = {Rat(1), Rat(2), Rat(1)};
    h.implicitSpec = variety("hardy-weinberg");
    return h;
  }
  if (name == "indep22") {
    // forms: u_{0+}, u_{1+}, u_{+0}, u_{+1}, and -u_{++} twice (the column
    // entry is both coefficient and exponent, so the sum form repeats)
    h.B = {{1, 0, 1, 0, -1, -1},
           {1, 0, 0, 1, -1, -1},
           {0, 1, 1, 0, -1, -1},
           {0, 1, 0, 1, -1, -1}};
    h.c = {Rat(1), Rat(1), Rat(1), Rat(1)};
    h.implicitSpec = variety("indep22");
    return h;
  }
  if (name == "chain222") {
    // p_{ijk} index 4i+2j+k; forms a_{ij}=u_{ij+}, b_{jk}=u_{+jk},
    // c_j=-u_{+j+}, d=-u_{+++}
    const int m = 11;
    auto col = [&](int i, int j, int k) {
      std::vector<int> v(m, 0);
      v[2 * i + j] = 1;          // a_{ij}
      v[4 + 2 * j + k] = 1;      // b_{jk}
      v[8 + j] = -1;             // c_j
      v[10] = -1;                // d
      return v;
    };
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) h.B.push_back(col(i, j, k));
    h.c.assign(8, Rat(1));
    h.implicitSpec = variety("chain222");
    return h;
  }
  if (name == "disc-cubic") {
    h.B = {{-1, 1, 1, -1}, {-2, 3, 0, -1}, {-1, 0, 3, -2}, {-2, 2, 2, -2}};
    h.c = {rat_of(2, 3), rat_of(-4, 27), rat_of(-4, 27), rat_of(1, 27)};
    h.implicitSpec = variety("disc-cubic");
    return h;
  }
  throw input_error("unknown catalog horn model: " + name);
}

ToricModel toric(const std::string& name) {
  if (name == "cubic-surface")
    return ToricModel({{0, 3, 0, 1}, {0, 0, 3, 1}, {1, 1, 1, 1}},
                      {Rat(3), Rat(5), Rat(7), Rat(11)});
  if (name == "cubic-surface-special")
    return ToricModel({{0, 3, 0, 1}, {0, 0, 3, 1}, {1, 1, 1, 1}},
                      {Rat(1), Rat(1), Rat(1), Rat(-3)});
  if (name == "hardy-weinberg")
    return ToricModel({{0, 1, 2}, {2, 1, 0}, {1, 1, 1}}, {Rat(1), Rat(2), Rat(1)});
  if (name == "indep22")
    return ToricModel({{0, 0, 1, 1}, {0, 1, 0, 1}, {1, 1, 1, 1}},
                      {Rat(1), Rat(1), Rat(1), Rat(1)});
  if (name == "sym-rank1-33" || name == "sym-rank1-33-plus") {
    std::vector<std::vector<long>> A = {
        {1, 1, 0, 0, 0, 0},
        {1, 0, 1, 0, 0, 0},
        {0, 0, 0, 1, 1, 0},
        {0, 0, 0, 0, 1, 1},
        {1, 1, 1, 1, 1, 1},
    };
    std::vector<Rat> c(6, Rat(1));
    if (name == "sym-rank1-33-plus") c[0] = Rat(-1);
    return ToricModel(A, c);
  }
  throw input_error("unknown catalog toric model: " + name);
}

LinearModel linear(const std::string& name) {
  if (name == "generic-2plane-p4") {
    VarietySpec s = variety("linear-2plane-p4");
    std::vector<std::vector<Rat>> forms;
    for (const auto& g : s.generators) {
      std::vector<Rat> row(s.n + 1, Rat(0));
      for (auto& [e, c] : g.terms())
        for (int v = 0; v <= s.n; ++v)
          if (e[v] == 1) row[v] = c;
      forms.push_back(std::move(row));
    }
    return LinearModel{rationalKernel(forms)};
  }
  throw input_error("unknown catalog linear model: " + name);
}

bool isCatalogRef(const std::string& s) { return s.rfind("catalog:", 0) == 0; }

VarietySpec resolveVariety(const std::string& ref) {
  if (!isCatalogRef(ref)) throw input_error("not a catalog reference: " + ref);
  return variety(ref.substr(8));
}

std::vector<Entry> entries() {
  return {
      {"hardy-weinberg", "variety",
       "plane conic of the biased-coin model; MLE is a rational function",
       {{"mlDegree", "1", "literature"},
        {"mle(1,2,1)", "(1/4, 1/2, 1/4)", "derived"}}},
      {"grassmannian-2-4", "variety", "Pluecker quadric in P^5",
       {{"mlDegree", "4", "literature"},
        {"sectional", "(4,20,24,12,2)", "literature"},
        {"bidegree", "(4,6,6,6,2)", "literature"}}},
      {"sym33-det", "variety", "symmetric 3x3 determinant fourfold in P^5",
       {{"mlDegree", "6", "literature"},
        {"sectional", "(6,42,48,21,3)", "literature"},
        {"bidegree", "(6,12,15,12,3)", "literature"}}},
      {"det33", "variety", "3x3 determinant hypersurface in P^8",
       {{"mlDegree", "10", "literature"},
        {"bidegree", "(10,24,33,38,39,33,12,3)", "literature"}}},
      {"secant-rnc4", "variety", "secant of the rational normal quartic",
       {{"mlDegree", "12", "literature"},
        {"sectional", "(12,30,18,3)", "literature"},
        {"bidegree", "(12,15,12,3)", "literature"}}},
      {"toric-fourfold", "variety", "binomial cubic fourfold in P^5",
       {{"mlDegree", "3", "literature"}, {"sectional", "(3,12,18,12,3)", "literature"}}},
      {"toric-fourfold-plus", "variety", "sign-flipped binomial cubic",
       {{"mlDegree", "2", "literature"}}},
      {"rnc-p3", "variety", "twisted cubic from fixed generic linear forms",
       {{"mlDegree", "13", "literature"}}},
      {"cubic-node", "variety", "plane cubic with one node off H",
       {{"mlDegree", "10", "literature"}}},
      {"cubic-cusp", "variety", "plane cubic with one cusp off H",
       {{"mlDegree", "9", "literature"}}},
      {"linear-2plane-p4", "variety", "generic 2-plane in P^4",
       {{"mlDegree", "6", "literature"},
        {"hvector", "(1,3,6)", "literature"},
        {"bidegree", "(6,3,1)", "literature"}}},
      {"indep22", "variety", "2x2 independence quadric",
       {{"mlDegree", "1", "literature"}}},
      {"disc-cubic", "horn", "curve from the scaled discriminant of the cubic",
       {{"sumToOne", "exact", "derived"}}},
      {"chain222", "horn", "decomposable chain model on three binary variables",
       {{"mle", "u_{ij+}u_{+jk}/(u_{+j+}u_{+++})", "literature"}}},
      {"cubic-surface", "toric", "degree-three toric surfaces in P^3",
       {{"mlDegree", "3", "literature"}, {"volume", "3", "derived"}}},
      {"cubic-surface-special", "toric", "scaling on the discriminant",
       {{"mlDegree", "2", "literature"}}},
  };
}

}  // namespace mlgeo::catalog
