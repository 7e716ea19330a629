#ifndef CHN_IO_HPP
#define CHN_IO_HPP

#include <chn/classify.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace chn {

using Json = nlohmann::ordered_json;

/// {"n": 3, "generators": [[{"label": "B", "coeff": "1"}, {"label": "E1", "coeff": ["1", "1/2"]}], ...]}
/// A pair [re, im] on E_i stands for re E_i + im F_i.
template <class F>
struct SubalgebraFile {
  int n = 0;
  std::vector<LieVector<F>> generators;
  Json source;
};

namespace detail {

template <class F>
F json_scalar(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_scalar<F>(j.get<std::string>());
  if (j.is_number_integer()) return F(j.get<long>());
  throw ParseError(where + ": coefficient must be a rational string");
}

}  // namespace detail

template <class F>
SubalgebraFile<F> parse_subalgebra(const Json& j, AlgebraContext<F>* ctx_out = nullptr) {
  if (!j.is_object()) throw ParseError("subalgebra file must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("missing integer field 'n'");
  if (!j.contains("generators") || !j["generators"].is_array()) throw ParseError("missing array field 'generators'");
  SubalgebraFile<F> out;
  out.n = j["n"].get<int>();
  out.source = j;
  auto g = build_algebra<F>(out.n);
  std::size_t gi = 0;
  for (const auto& gen : j["generators"]) {
    ++gi;
    std::string where = "generator " + std::to_string(gi);
    if (!gen.is_array()) throw ParseError(where + ": expected a list of terms");
    auto x = LieVector<F>::zero(out.n);
    for (const auto& term : gen) {
      if (!term.is_object() || !term.contains("label") || !term.contains("coeff") || !term["label"].is_string())
        throw ParseError(where + ": each term needs 'label' and 'coeff'");
      std::string label = term["label"].get<std::string>();
      auto v = g->labeled(label);
      if (!g->in_parabolic(v)) throw ParseError(where + ": label " + label + " is outside k0+a+n");
      const Json& c = term["coeff"];
      if (c.is_array()) {
        if (c.size() != 2) throw ParseError(where + ": complex coefficient must be [re, im]");
        F re = detail::json_scalar<F>(c[0], where), im = detail::json_scalar<F>(c[1], where);
        if (label.empty() || label[0] != 'E') {
          if (!is_zero(im)) throw ParseError(where + ": complex coefficient only allowed on E labels, got " + label);
          x = x + re * v;
        } else {
          x = x + re * v + im * g->labeled("F" + label.substr(1));
        }
      } else {
        x = x + detail::json_scalar<F>(c, where) * v;
      }
    }
    out.generators.push_back(std::move(x));
  }
  if (ctx_out) *ctx_out = g;
  return out;
}

template <class F>
Json terms_json(const Algebra<F>& g, const LieVector<F>& x) {
  Json terms = Json::array();
  auto c = g.adapted(x);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!is_zero(c[i])) terms.push_back({{"label", g.label(i)}, {"coeff", format(c[i])}});
  return terms;
}

template <class F>
Json subalgebra_json(const Algebra<F>& g, const std::vector<LieVector<F>>& gens) {
  Json j;
  j["n"] = g.n();
  j["generators"] = Json::array();
  for (const auto& x : gens) j["generators"].push_back(terms_json(g, x));
  return j;
}

// ---------------------------------------------------------------------------
// Reports

template <class F>
std::string describe_an(const Algebra<F>& g, const Vec<F>& v) {
  return describe(g, g.from_an(v));
}

template <class F>
std::string describe_k0(const Algebra<F>& g, const Vec<F>& t) {
  return describe(g, g.from_k0(t));
}

template <class F>
Json vector_json(const Algebra<F>& g, const Vec<F>& an) {
  Json j = Json::object();
  for (std::size_t i = 0; i < an.size(); ++i)
    if (!is_zero(an[i])) j[g.an_labels()[i]] = format(an[i]);
  return j;
}

template <class F>
Json decomposition_json(const Subalgebra<F>& h) {
  const auto& g = h.algebra();
  const auto& d = h.decomposition();
  Json j;
  j["a"] = format(d.a);
  j["b"] = format(d.b);
  j["x"] = format(d.x);
  j["dim_q"] = d.q.size();
  j["dim_s"] = d.dim_s();
  j["dim_s_d"] = d.d;
  j["dim_m"] = d.dim_s() - d.d;
  j["U"] = describe_an(g, d.U);
  j["V"] = describe_an(g, d.V);
  j["T"] = describe_k0(g, d.T);
  j["R"] = describe_k0(g, d.R);
  return j;
}

template <class F>
struct Analysis {
  MinimalityReport<F> minimality;
  ClassificationVerdict<F> verdict;
  IdentitySuiteResult<F> identities;
};

template <class F>
Analysis<F> analyze(const Subalgebra<F>& h) {
  auto rep = analyze_minimality(h);
  auto verdict = match_classification(h, rep);
  auto ids = verify_identities(h, &rep.mean_curvature);
  return {std::move(rep), std::move(verdict), std::move(ids)};
}

template <class F>
Json analysis_json(const Subalgebra<F>& h, const Analysis<F>& an, const Json& input) {
  const auto& g = h.algebra();
  const auto split = tangent_normal(h);
  Json j;
  j["input"] = input;
  j["field"] = field_traits<F>::exact ? "rational" : "float";
  if constexpr (!field_traits<F>::exact) j["epsilon"] = field_traits<F>::epsilon;
  j["n"] = g.n();
  j["dim"] = h.dim();
  j["basis"] = Json::array();
  for (const auto& x : h.basis()) j["basis"].push_back(describe(g, x));
  j["decomposition"] = decomposition_json(h);
  j["tangent_dim"] = split.tangent.size();
  j["normal_dim"] = split.normal.size();
  j["mean_curvature"] = vector_json(g, an.minimality.mean_curvature);
  j["minimal"] = an.minimality.is_minimal;
  j["totally_geodesic"] = an.minimality.is_totally_geodesic;
  j["degenerate"] = an.minimality.degenerate;

  const auto& v = an.verdict;
  Json vj;
  vj["family"] = to_string(v.family);
  vj["label"] = v.label;
  vj["dim_m"] = v.dim_m;
  vj["reduction"] = v.reduction;
  if (v.certificate) {
    vj["certificate"] = {{"pairing", v.certificate->name},
                         {"normal", describe_an(g, v.certificate->normal)},
                         {"value", format(v.certificate->value)}};
  }
  vj["consistent"] = v.consistent;
  j["verdict"] = vj;

  Json ij = Json::array();
  for (const auto& r : an.identities.results) {
    Json e{{"name", r.name}, {"applicable", r.applicable}};
    if (r.applicable) {
      e["passed"] = r.passed;
      e["residual"] = r.residual;
    }
    if (!r.note.empty()) e["note"] = r.note;
    ij.push_back(e);
  }
  j["identities"] = {{"all_passed", an.identities.all_passed()}, {"trace_branch", to_string(an.identities.branch)}, {"results", ij}};

  const auto& m = an.minimality;
  j["oracles"] = {{"pairs", m.pairs_checked},
                  {"symmetric", m.symmetric},
                  {"normal_valued", m.normal_valued},
                  {"sff_p_equals_sff_an", m.p_agrees},
                  {"lift_independent", m.lift_independent},
                  {"koszul", m.koszul_applicable ? (m.koszul_agrees ? "agrees" : "disagrees") : "not-applicable"}};
  return j;
}

template <class F>
std::string analysis_text(const Subalgebra<F>& h, const Analysis<F>& an) {
  const auto& g = h.algebra();
  const auto& d = h.decomposition();
  std::string s;
  auto line = [&](const std::string& k, const std::string& v) { s += k + ": " + v + "\n"; };
  line("n", std::to_string(g.n()));
  line("dim h", std::to_string(h.dim()));
  for (const auto& x : h.basis()) s += "  " + describe(g, x) + "\n";
  line("a, b, x", format(d.a) + ", " + format(d.b) + ", " + format(d.x));
  line("dim q / s / s_d", std::to_string(d.q.size()) + " / " + std::to_string(d.dim_s()) + " / " + std::to_string(d.d));
  line("U", describe_an(g, d.U));
  line("V", describe_an(g, d.V));
  line("T", describe_k0(g, d.T));
  line("R", describe_k0(g, d.R));
  line("orbit dim", std::to_string(h.orbit_dim()));
  line("mean curvature", describe_an(g, an.minimality.mean_curvature));
  if constexpr (!field_traits<F>::exact) line("epsilon", format(field_traits<F>::epsilon));
  line("minimal", an.minimality.is_minimal ? "yes" : "no");
  line("totally geodesic", an.minimality.is_totally_geodesic ? "yes" : "no");
  line("verdict", an.verdict.label + " (family " + std::string(to_string(an.verdict.family)) + ")");
  for (const auto& r : an.verdict.reduction) line("  reduction", r);
  if (an.verdict.certificate)
    line("  certificate", an.verdict.certificate->name + " = " + format(an.verdict.certificate->value) + ", normal " +
                              describe_an(g, an.verdict.certificate->normal));
  if (!an.verdict.consistent) line("  WARNING", "outcome disagrees with the classification");
  for (const auto& r : an.identities.results) {
    if (!r.applicable) continue;
    line("  " + r.name, std::string(r.passed ? "ok" : "FAILED") + " (residual " + r.residual + ")" + (r.note.empty() ? "" : " [" + r.note + "]"));
  }
  const auto& m = an.minimality;
  line("sff_p = sff_an", m.p_agrees ? "yes" : "NO");
  line("koszul", m.koszul_applicable ? (m.koszul_agrees ? "agrees" : "DISAGREES") : "not applicable");
  return s;
}

/// Per tangent pair equality of the three second fundamental form oracles.
template <class F>
struct OracleRow {
  std::size_t i, j;
  bool p_equals_an;
  std::optional<bool> koszul_equals_an;
};

template <class F>
std::vector<OracleRow<F>> oracle_compare(const Subalgebra<F>& h) {
  OrbitGeometry<F> geo(h);
  const auto& tv = geo.split().tangent.vectors;
  bool kz = geo.koszul_applicable();
  std::vector<OracleRow<F>> out;
  for (std::size_t i = 0; i < tv.size(); ++i)
    for (std::size_t j = i; j < tv.size(); ++j) {
      Vec<F> ref = geo.sff_an(tv[i], tv[j]);
      OracleRow<F> r{i, j, negligible(Vec<F>(geo.sff_p(tv[i], tv[j]) - ref)), std::nullopt};
      if (kz) r.koszul_equals_an = negligible(Vec<F>(geo.koszul_sff(tv[i], tv[j]) - ref));
      out.push_back(r);
    }
  return out;
}

}  // namespace chn

#endif  // CHN_IO_HPP
