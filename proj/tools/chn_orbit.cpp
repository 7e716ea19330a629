// chn_orbit: orbits of subalgebras of k0+a+n acting on CH^n.

#include <chn/chn.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace chn;

namespace {

enum Exit { ok = 0, suite_failure = 1, usage = 2, not_closed = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// -- basis -------------------------------------------------------------------

int cmd_basis(int n, bool json) {
  auto g = build_algebra<Rational>(n);
  const auto& L = g->layout();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < L.k0_dim + L.an_dim; ++i) labels.push_back(g->label(i));
  auto basis = g->adapted_basis();

  Json j;
  j["n"] = n;
  j["dim"] = g->dim();
  j["labels"] = {{"k0", Json::array()}, {"a", Json::array()}, {"g_alpha", Json::array()}, {"g_2alpha", Json::array()}};
  for (std::size_t i = 0; i < L.k0_dim; ++i) j["labels"]["k0"].push_back(labels[i]);
  for (std::size_t i = 0; i < L.an_dim; ++i) {
    const auto& l = labels[L.an_begin() + i];
    j["labels"][i == L.b() ? "a" : i == L.z() ? "g_2alpha" : "g_alpha"].push_back(l);
  }
  Json table = Json::array();
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      auto br = g->bracket(basis[a], basis[b]);
      if (!br.is_zero()) table.push_back({{"x", labels[a]}, {"y", labels[b]}, {"bracket", describe(*g, br)}});
    }
  j["brackets"] = table;
  // a+n is orthonormal by construction; k0 carries Q_theta.
  Json gram = Json::array();
  for (std::size_t a = 0; a < L.k0_dim; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < L.k0_dim; ++b) row.push_back(format(g->k0_gram()(a, b)));
    gram.push_back(row);
  }
  Json an_gram = Json::array();
  for (std::size_t a = 0; a < L.an_dim; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < L.an_dim; ++b) row.push_back(format(g->metric(basis[L.an_begin() + a], basis[L.an_begin() + b])));
    an_gram.push_back(row);
  }
  j["metric_an"] = an_gram;
  j["q_theta_k0"] = gram;

  if (json) {
    emit(j);
    return ok;
  }
  std::cout << "CH^" << n << ": dim su(1," << n << ") = " << g->dim() << "\n";
  std::cout << "k0:";
  for (const auto& l : j["labels"]["k0"]) std::cout << " " << l.get<std::string>();
  std::cout << "\na: B\ng_alpha:";
  for (const auto& l : j["labels"]["g_alpha"]) std::cout << " " << l.get<std::string>();
  std::cout << "\ng_2alpha: Z\n\nbrackets (nonzero, parabolic part):\n";
  for (const auto& e : table)
    std::cout << "  [" << e["x"].get<std::string>() << "," << e["y"].get<std::string>() << "] = " << e["bracket"].get<std::string>() << "\n";
  std::cout << "\nmetric on a+n: identity in B, E, F, Z\nQ_theta on k0:\n";
  for (const auto& row : gram) {
    std::cout << " ";
    for (const auto& c : row) std::cout << " " << c.get<std::string>();
    std::cout << "\n";
  }
  return ok;
}

// -- analyze / oracle-compare --------------------------------------------------

template <class F>
Subalgebra<F> load(const Json& input, bool span) {
  AlgebraContext<F> g;
  auto file = parse_subalgebra<F>(input, &g);
  if (span) return Subalgebra<F>::lie_span(g, file.generators);
  auto res = closure_check(*g, file.generators);
  if (!res.closed) throw ClosureError(res.first, res.second, res.witness(*g));
  return Subalgebra<F>::from_closed(g, file.generators);
}

template <class F>
int analyze_with(const Json& input, bool span, bool json) {
  auto h = load<F>(input, span);
  auto an = analyze(h);
  if (json)
    emit(analysis_json(h, an, input));
  else
    std::cout << analysis_text(h, an);
  return ok;
}

template <class F>
int oracle_compare_with(const Json& input, bool span, bool json) {
  auto h = load<F>(input, span);
  const auto& g = h.algebra();
  auto rows = oracle_compare(h);
  OrbitGeometry<F> geo(h);
  const auto& tv = geo.split().tangent.vectors;
  bool all = true;
  Json table = Json::array();
  for (const auto& r : rows) {
    all = all && r.p_equals_an && r.koszul_equals_an.value_or(true);
    Json e{{"x", describe_an(g, tv[r.i])}, {"y", describe_an(g, tv[r.j])}, {"sff_p_equals_sff_an", r.p_equals_an}};
    e["koszul_equals_sff_an"] = r.koszul_equals_an ? Json(*r.koszul_equals_an) : Json("not-applicable");
    table.push_back(e);
  }
  if (json) {
    Json j{{"input", input}, {"field", field_traits<F>::exact ? "rational" : "float"}};
    if constexpr (!field_traits<F>::exact) j["epsilon"] = field_traits<F>::epsilon;
    j["pairs"] = table;
    j["all_equal"] = all;
    emit(j);
  } else {
    if constexpr (!field_traits<F>::exact) std::cout << "epsilon " << field_traits<F>::epsilon << "\n";
    for (const auto& e : table)
      std::cout << "(" << e["x"].get<std::string>() << ", " << e["y"].get<std::string>() << ")  sff_p=sff_an: "
                << (e["sff_p_equals_sff_an"].get<bool>() ? "yes" : "NO") << "  koszul: "
                << (e["koszul_equals_sff_an"].is_boolean() ? (e["koszul_equals_sff_an"].get<bool>() ? "yes" : "NO") : "n/a") << "\n";
    std::cout << (all ? "all equal\n" : "MISMATCH\n");
  }
  return all ? ok : suite_failure;
}

// -- generate --------------------------------------------------------------------

int cmd_generate(const std::string& family, int n, const std::string& spec, bool no_z, const std::string& out) {
  auto g = build_algebra<Rational>(n);
  FamilyRequest req{family, spec, !no_z};
  auto h = generate_family(g, req);
  Json j = subalgebra_json(*g, h.generators());
  j["family"] = family;
  j["spec"] = spec;
  if (family == "twisted") j["with_z"] = !no_z;
  j["expected_label"] = expected_label(*g, req);
  if (out.empty() || out == "-") {
    emit(j);
  } else {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << j.dump(2) << "\n";
  }
  return ok;
}

// -- selfcheck -------------------------------------------------------------------

std::pair<int, int> parse_range(const std::string& r) {
  auto dots = r.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(r);
      return {v, v};
    }
    return {std::stoi(r.substr(0, dots)), std::stoi(r.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad --n-range '" + r + "', expected e.g. 2..6");
  }
}

int cmd_selfcheck(const std::string& range, std::optional<std::uint64_t> seed, std::size_t corpus, bool flip, bool json) {
  SelfcheckOptions opt;
  std::tie(opt.n_min, opt.n_max) = parse_range(range);
  if (opt.n_min < 2 || opt.n_max < opt.n_min) throw UsageError("--n-range needs 2 <= min <= max");
  if (seed) {
    opt.seed = *seed;
  } else if (const char* env = std::getenv("CHN_ORBIT_SEED")) {
    try {
      opt.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("CHN_ORBIT_SEED is not an integer: ") + env);
    }
  }
  opt.corpus_size = corpus;
  opt.sign_flip = flip;
  auto rep = run_selfcheck<Rational>(opt);
  if (json) {
    Json j = selfcheck_json(rep);
    j["seed"] = opt.seed;
    j["sign_flip"] = flip;
    emit(j);
  } else {
    std::cout << "seed " << opt.seed << (flip ? " (sign-flipped build)" : "") << "\n" << selfcheck_text(rep);
  }
  if (auto f = rep.first_failure()) {
    std::cerr << "first failure: n=" << f->n << " " << f->suite << ": " << f->witness << "\n";
    return suite_failure;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second fundamental form and mean curvature of orbits in complex hyperbolic space"};
  app.require_subcommand(1);

  int basis_n = 0;
  bool basis_json = false;
  auto* basis = app.add_subcommand("basis", "adapted basis, bracket table and metric data");
  basis->add_option("-n", basis_n, "complex dimension")->required();
  basis->add_flag("--json", basis_json);

  std::string file;
  bool an_json = false, an_float = false, an_span = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "decompose, compute curvature and classify a subalgebra");
  analyze_cmd->add_option("file", file, "subalgebra file")->required();
  analyze_cmd->add_flag("--json", an_json);
  analyze_cmd->add_flag("--float", an_float, "floating point instead of exact rationals");
  analyze_cmd->add_flag("--span", an_span, "close the generators under the bracket first");

  bool oc_json = false, oc_float = false, oc_span = false;
  auto* oracle = app.add_subcommand("oracle-compare", "compare the second fundamental form formulas pair by pair");
  oracle->add_option("file", file, "subalgebra file")->required();
  oracle->add_flag("--json", oc_json);
  oracle->add_flag("--float", oc_float);
  oracle->add_flag("--span", oc_span);

  std::string family, spec, out;
  int gen_n = 0;
  bool no_z = false;
  auto* generate = app.add_subcommand("generate", "write a family instance as a subalgebra file");
  generate->add_option("--family", family, "a, b or twisted")->required()->check(CLI::IsMember({"a", "b", "twisted"}));
  generate->add_option("--n,-n", gen_n, "complex dimension")->required();
  generate->add_option("--spec", spec, "totally-real:k, complex:2k, dim:k, hyperplane, constant-angle:cos:dim")->required();
  generate->add_option("--out,-o", out, "output file (default stdout)");
  generate->add_flag("--no-z", no_z, "twisted family without g_2alpha");

  std::string range = "2..6";
  std::optional<std::uint64_t> seed;
  std::size_t corpus = 100;
  bool sc_json = false, flip = false;
  auto* selfcheck = app.add_subcommand("selfcheck", "run the verification suites over a seeded corpus");
  selfcheck->add_option("--n-range", range, "e.g. 2..6");
  selfcheck->add_option("--seed", seed, "corpus seed (default: CHN_ORBIT_SEED or built-in)");
  selfcheck->add_option("--corpus-size", corpus, "instances per n");
  selfcheck->add_flag("--json", sc_json);
  selfcheck->add_flag("--inject-sign-flip", flip, "negate the g_2alpha part of every bracket, to check the suites notice");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*basis) return cmd_basis(basis_n, basis_json);
    if (*analyze_cmd) {
      auto input = read_json(file);
      return an_float ? analyze_with<double>(input, an_span, an_json) : analyze_with<Rational>(input, an_span, an_json);
    }
    if (*oracle) {
      auto input = read_json(file);
      return oc_float ? oracle_compare_with<double>(input, oc_span, oc_json) : oracle_compare_with<Rational>(input, oc_span, oc_json);
    }
    if (*generate) return cmd_generate(family, gen_n, spec, no_z, out);
    if (*selfcheck) return cmd_selfcheck(range, seed, corpus, flip, sc_json);
  } catch (const ClosureError& e) {
    std::cerr << "not closed: " << e.what() << "\n";
    return not_closed;
  } catch (const NotParabolicError& e) {
    std::cerr << "not closed in k0+a+n: " << e.what() << "\n";
    return not_closed;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return usage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const ConstructionError& e) {
    std::cerr << "cannot build: " << e.what() << "\n";
    return usage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const ContextError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}
