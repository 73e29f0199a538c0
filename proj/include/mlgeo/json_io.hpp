#pragma once

#include <json.hpp>

#include "mlgeo/horn.hpp"
#include "mlgeo/linmatroid.hpp"
#include "mlgeo/mldeg.hpp"
#include "mlgeo/rankdual.hpp"
#include "mlgeo/toricgp.hpp"

namespace mlgeo {

using nlohmann::json;

// Rationals travel as "num/den" strings (or plain integers) so that fixtures
// never pick up float drift.
inline json ratToJson(const Rat& r) {
  if (r.get_den() == 1) {
    if (r.get_num().fits_slong_p()) return json(r.get_num().get_si());
    return json(r.get_num().get_str());
  }
  return json(rat_str(r));
}

inline Rat ratFromJson(const json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_float()) throw input_error("rationals must be integers or num/den strings");
  throw input_error("bad rational in JSON");
}

inline json polyToJson(const QPoly& p) {
  json terms = json::array();
  for (auto& [e, c] : p.terms()) {
    json t;
    t["exp"] = e;
    t["num"] = c.get_num().get_str();
    t["den"] = c.get_den().get_str();
    terms.push_back(t);
  }
  return json{{"nvars", p.nvars()}, {"terms", terms}, {"text", printPoly(p)}};
}

inline QPoly polyFromJson(const json& j, int nvars) {
  if (j.is_string()) return parsePoly(j.get<std::string>(), nvars);
  if (j.is_object() && j.contains("terms")) {
    int nv = j.contains("nvars") ? j["nvars"].get<int>() : nvars;
    QPoly p(nv);
    for (const auto& t : j["terms"]) {
      std::vector<int> e = t["exp"].get<std::vector<int>>();
      Rat num = rat_parse(t["num"].is_string() ? t["num"].get<std::string>()
                                               : std::to_string(t["num"].get<long long>()));
      Rat den = rat_parse(t["den"].is_string() ? t["den"].get<std::string>()
                                               : std::to_string(t["den"].get<long long>()));
      if (den == 0) throw input_error("zero denominator");
      p.add_term(e, num / den);
    }
    return p;
  }
  throw input_error("bad polynomial in JSON");
}

inline json specToJson(const VarietySpec& s) {
  json gens = json::array();
  for (const auto& g : s.generators) gens.push_back(printPoly(g));
  return json{{"n", s.n},
              {"codim", s.codim},
              {"generators", gens},
              {"singularPolicy",
               s.singularPolicy == VarietySpec::SingularPolicy::FilterBySpecJacobian ? "filter"
                                                                                     : "none"}};
}

inline VarietySpec specFromJson(const json& j) {
  VarietySpec s;
  s.n = j.at("n").get<int>();
  s.codim = j.at("codim").get<int>();
  if (j.contains("singularPolicy"))
    s.singularPolicy = (j["singularPolicy"] == "none")
                           ? VarietySpec::SingularPolicy::None
                           : VarietySpec::SingularPolicy::FilterBySpecJacobian;
  for (const auto& g : j.at("generators")) s.generators.push_back(polyFromJson(g, s.n + 1));
  s.validateStrict();
  return s;
}

inline json matrixToJson(const RMat& M) {
  json rows = json::array();
  for (const auto& r : M) {
    json row = json::array();
    for (const auto& v : r) row.push_back(ratToJson(v));
    rows.push_back(row);
  }
  return rows;
}

inline RMat matrixFromJson(const json& j) {
  RMat M;
  for (const auto& r : j) {
    std::vector<Rat> row;
    for (const auto& v : r) row.push_back(ratFromJson(v));
    M.push_back(std::move(row));
  }
  if (M.empty()) throw input_error("empty matrix");
  return M;
}

inline std::vector<std::vector<long>> intMatrixFromJson(const json& j) {
  std::vector<std::vector<long>> M;
  for (const auto& r : j) {
    std::vector<long> row;
    for (const auto& v : r) row.push_back(v.get<long>());
    M.push_back(std::move(row));
  }
  if (M.empty()) throw input_error("empty matrix");
  return M;
}

inline std::vector<Rat> ratVectorFromJson(const json& j) {
  std::vector<Rat> v;
  for (const auto& x : j) v.push_back(ratFromJson(x));
  return v;
}

inline json ratVectorToJson(const std::vector<Rat>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(ratToJson(x));
  return out;
}

inline json binaryFormToJson(const BinaryForm& b) {
  json coeff = json::array();
  for (const auto& c : b.coeff) coeff.push_back(c.get_str());
  return json{{"degree", b.degree()}, {"coeff", coeff}, {"text", b.str()}};
}

inline json solutionSetToJson(const SolutionSet& ss) {
  json pts = json::array();
  for (const auto& p : ss.points) {
    json re = json::array(), im = json::array(), mre = json::array(), mim = json::array();
    for (const auto& z : p.coords) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    for (const auto& z : p.modelPoint) {
      mre.push_back(z.real());
      mim.push_back(z.imag());
    }
    pts.push_back(json{{"re", re},
                       {"im", im},
                       {"modelRe", mre},
                       {"modelIm", mim},
                       {"residual", p.residual},
                       {"cond", p.cond},
                       {"class", pointClassName(p.cls)},
                       {"cluster", p.cluster}});
  }
  return json{{"points", pts},
              {"pathStats",
               json{{"tracked", ss.pathStats.tracked},
                    {"converged", ss.pathStats.converged},
                    {"failed", ss.pathStats.failed}}}};
}

inline json mlReportToJson(const MLReport& r) {
  return json{{"mlDegree", r.mlDegree},
              {"perTrialCounts", r.perTrialCounts},
              {"pathFailures", r.pathFailures},
              {"confidence", r.stable ? "stable" : "unstable"},
              {"seedsUsed", r.seedsUsed}};
}

inline json hornToJson(const HornModel& h) {
  json B = json::array();
  for (const auto& col : h.B) B.push_back(col);
  json out{{"B", B}, {"c", ratVectorToJson(h.c)}};
  if (h.implicitSpec) out["implicit"] = specToJson(*h.implicitSpec);
  return out;
}

inline HornModel hornFromJson(const json& j) {
  HornModel h;
  for (const auto& col : j.at("B")) h.B.push_back(col.get<std::vector<int>>());
  h.c = ratVectorFromJson(j.at("c"));
  if (h.B.size() != h.c.size()) throw input_error("B/c arity mismatch");
  if (j.contains("implicit")) h.implicitSpec = specFromJson(j["implicit"]);
  return h;
}

}  // namespace mlgeo
