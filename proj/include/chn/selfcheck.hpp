#ifndef CHN_SELFCHECK_HPP
#define CHN_SELFCHECK_HPP

#include <chn/corpus.hpp>
#include <chn/io.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace chn {

struct SelfcheckOptions {
  int n_min = 2;
  int n_max = 6;
  std::uint64_t seed = default_corpus_seed;
  std::size_t corpus_size = 100;
  std::size_t twisted_count = 10;
  int jacobi_max_n = 4;
  bool sign_flip = false;
};

struct SuiteLine {
  std::string suite;
  int n = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string witness;  // first failure
  bool passed() const { return failures == 0; }
};

struct SelfcheckReport {
  std::vector<SuiteLine> lines;
  // Instances per branch of the trace identity: R-bT = 0, outside Phi(s_d), inside Phi(s_d).
  std::map<int, std::array<std::size_t, 3>> branches;

  bool all_passed() const {
    for (const auto& l : lines)
      if (!l.passed()) return false;
    return true;
  }

  const SuiteLine* first_failure() const {
    for (const auto& l : lines)
      if (!l.passed()) return &l;
    return nullptr;
  }

  std::array<std::size_t, 3> branch_totals() const {
    std::array<std::size_t, 3> t{0, 0, 0};
    for (const auto& [n, b] : branches)
      for (int i = 0; i < 3; ++i) t[i] += b[i];
    return t;
  }
};

namespace detail {

class SuiteRecorder {
 public:
  SuiteRecorder(SelfcheckReport& r, std::string name, int n) : report_(r), index_(r.lines.size()) {
    SuiteLine l;
    l.suite = std::move(name);
    l.n = n;
    r.lines.push_back(std::move(l));
  }

  void check(bool ok, const std::function<std::string()>& witness) {
    auto& l = line();
    ++l.checks;
    if (ok) return;
    if (l.failures++ == 0) l.witness = witness();
  }

  void count(std::size_t extra) { line().checks += extra; }

  void fail(const std::string& why) {
    auto& l = line();
    ++l.checks;
    if (l.failures++ == 0) l.witness = why;
  }

 private:
  SuiteLine& line() { return report_.lines[index_]; }

  SelfcheckReport& report_;
  std::size_t index_;
};

template <class F>
void run_guarded(SuiteRecorder& rec, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rec.fail(std::string("exception: ") + e.what());
  }
}

template <class F>
void identity_report_suite(SelfcheckReport& rep, const std::string& name, int n, const IdentityReport& r) {
  SuiteRecorder rec(rep, name, n);
  for (const auto& c : r.checks) {
    rec.check(c.passed, [&] { return c.name + ": " + c.witness; });
    if (c.evaluated > 1) rec.count(c.evaluated - 1);
  }
}

template <class F>
void identity_report_suite(SelfcheckReport& rep, const std::string& name, int n, const IdentityCheck& c) {
  identity_report_suite<F>(rep, name, n, IdentityReport{{c}});
}

}  // namespace detail

template <class F>
void selfcheck_n(SelfcheckReport& rep, const SelfcheckOptions& opt, int n) {
  using detail::SuiteRecorder;
  using detail::run_guarded;
  auto g = opt.sign_flip ? Algebra<F>::build_sign_flipped(n) : build_algebra<F>(n);

  detail::identity_report_suite<F>(rep, "structure identities", n, verify_lemma21(*g));
  detail::identity_report_suite<F>(rep, "a+n brackets", n, verify_an_brackets(*g));
  detail::identity_report_suite<F>(rep, "grading", n, verify_grading(*g));
  if (n <= opt.jacobi_max_n) detail::identity_report_suite<F>(rep, "jacobi", n, verify_jacobi(*g));

  {
    SuiteRecorder rec(rep, "negative controls", n);
    run_guarded<F>(rec, [&] {
      auto at_b = [&](const F& c) {
        Vec<F> v(g->layout().an_dim, F(0));
        v[0] = c;
        return v;
      };
      std::vector<LieVector<F>> nil = g->roots().E;
      for (const auto& f : g->roots().JE) nil.push_back(f);
      nil.push_back(g->roots().Z);
      auto hn = Subalgebra<F>::from_closed(g, nil);
      auto Hn = mean_curvature(hn);
      rec.check(negligible(Vec<F>(Hn - at_b(F(n)))), [&] { return "H(n) = " + describe_an(*g, Hn); });
      auto he = Subalgebra<F>::from_closed(g, {g->labeled("E1")});
      auto He = mean_curvature(he);
      rec.check(negligible(Vec<F>(He - at_b(ratio<F>(1, 2)))), [&] { return "H(E1) = " + describe_an(*g, He); });
      auto hz = Subalgebra<F>::from_closed(g, {g->roots().Z});
      auto Hz = mean_curvature(hz);
      rec.check(negligible(Vec<F>(Hz - at_b(F(1)))), [&] { return "H(Z) = " + describe_an(*g, Hz); });
      for (const auto* h : {&hn, &he, &hz}) {
        auto v = match_classification(*h);
        rec.check(!v.minimal && v.certificate && sign(v.certificate->value) > 0 && v.label == "horosphere-like-nonminimal",
                  [&] { return "no positive certificate for " + describe(*g, h->basis().front()); });
      }
    });
  }

  {
    SuiteRecorder rec(rep, "family round trip", n);
    run_guarded<F>(rec, [&] {
      for (const auto& req : legal_requests(*g)) {
        auto h = generate_family(g, req);
        auto file = subalgebra_json(*g, h.generators());
        AlgebraContext<F> g2;
        auto parsed = parse_subalgebra<F>(file, &g2);
        auto back = Subalgebra<F>::from_closed(g2, parsed.generators);
        auto v = match_classification(back);
        auto want = expected_label(*g, req);
        rec.check(v.label == want && v.minimal, [&] {
          return req.family + " " + req.spec + ": got " + v.label + ", expected " + want;
        });
        if (req.family == "a") rec.check(v.totally_geodesic, [&] { return "family a " + req.spec + " has II != 0"; });
        if (req.family == "b") {
          bool cx = is_complex_subspace(*g, realize(*g, SubspaceSpec<F>::parse(req.spec)));
          rec.check(v.totally_geodesic == cx, [&] { return "family b " + req.spec + ": geodesy does not match Jm = m"; });
        }
      }
    });
  }

  CorpusGenerator<F> gen(g, opt.seed + static_cast<std::uint64_t>(n));
  std::vector<CorpusEntry<F>> corpus;
  {
    SuiteRecorder rec(rep, "corpus generation", n);
    run_guarded<F>(rec, [&] {
      corpus = gen.generate(opt.corpus_size);
      rec.check(corpus.size() >= opt.corpus_size, [] { return std::string("corpus too small"); });
    });
  }

  {
    SuiteRecorder oracles(rep, "oracle equivalence", n);
    SuiteRecorder ids(rep, "case identities", n);
    SuiteRecorder cls(rep, "classification", n);
    auto& br = rep.branches[n];
    br = {0, 0, 0};
    for (const auto& e : corpus) {
      auto where = [&] { return std::string(to_string(e.kind)) + " " + e.name + ": " + describe(*g, e.h.basis().empty() ? LieVector<F>::zero(n) : e.h.basis().front()); };
      try {
        auto an = analyze(e.h);
        const auto& m = an.minimality;
        oracles.check(m.p_agrees && m.symmetric && m.normal_valued && m.lift_independent, [&] { return "sff_p != sff_an for " + where(); });
        if (m.koszul_applicable) oracles.check(m.koszul_agrees, [&] { return "koszul disagrees for " + where(); });
        for (const auto& r : an.identities.results)
          if (r.applicable) ids.check(r.passed, [&] { return r.name + " residual " + r.residual + " for " + where(); });
        switch (an.identities.branch) {
          case TraceBranch::zero: ++br[0]; break;
          case TraceBranch::outside_phi: ++br[1]; break;
          case TraceBranch::inside_phi: ++br[2]; break;
          case TraceBranch::none: break;
        }
        const auto& v = an.verdict;
        cls.check(v.consistent, [&] { return "verdict " + v.label + " inconsistent for " + where(); });
        if (!v.minimal && !v.degenerate)
          cls.check(v.certificate && sign(v.certificate->value) > 0, [&] { return "no certificate for " + where(); });
        if (e.kind == CorpusKind::family_a) cls.check(m.is_totally_geodesic, [&] { return "II != 0 for " + where(); });
        if (e.kind == CorpusKind::family_b) cls.check(m.is_minimal, [&] { return "H != 0 for " + where(); });
      } catch (const std::exception& ex) {
        oracles.fail(std::string("exception: ") + ex.what());
      }
    }
  }

  {
    SuiteRecorder rec(rep, "sandwich", n);
    run_guarded<F>(rec, [&] {
      auto tw = gen.twisted(opt.twisted_count);
      rec.check(tw.size() >= opt.twisted_count, [] { return std::string("not enough twisted instances"); });
      for (const auto& e : tw)
        rec.check(verify_sandwich(e.h, *e.untwisted), [&] { return "orbits differ for " + e.name; });
    });
  }
}

template <class F>
SelfcheckReport run_selfcheck(const SelfcheckOptions& opt) {
  SelfcheckReport rep;
  for (int n = opt.n_min; n <= opt.n_max; ++n) selfcheck_n<F>(rep, opt, n);
  return rep;
}

inline std::string selfcheck_text(const SelfcheckReport& rep) {
  std::string s;
  for (const auto& l : rep.lines) {
    s += std::string(l.passed() ? "PASS" : "FAIL") + "  n=" + std::to_string(l.n) + "  " + l.suite + "  (" +
         std::to_string(l.checks) + " checks";
    if (!l.passed()) s += ", " + std::to_string(l.failures) + " failed; first: " + l.witness;
    s += ")\n";
  }
  static const char* names[] = {"R-bT = 0", "R-bT outside Phi(s_d)", "R-bT inside Phi(s_d)"};
  s += "trace identity branch coverage:\n";
  auto t = rep.branch_totals();
  for (int i = 0; i < 3; ++i) {
    s += "  " + std::string(names[i]) + ": " + std::to_string(t[i]) + " instances";
    if (t[i] == 0) s += " (unreached)";
    s += "\n";
  }
  s += rep.all_passed() ? "selfcheck: all passed\n" : "selfcheck: FAILED\n";
  return s;
}

inline Json selfcheck_json(const SelfcheckReport& rep) {
  Json j;
  j["passed"] = rep.all_passed();
  j["suites"] = Json::array();
  for (const auto& l : rep.lines) {
    Json e{{"suite", l.suite}, {"n", l.n}, {"checks", l.checks}, {"failures", l.failures}};
    if (!l.passed()) e["witness"] = l.witness;
    j["suites"].push_back(e);
  }
  Json b = Json::object();
  for (const auto& [n, c] : rep.branches) b[std::to_string(n)] = {{"zero", c[0]}, {"outside_phi", c[1]}, {"inside_phi", c[2]}};
  j["trace_branches"] = b;
  return j;
}

}  // namespace chn

#endif  // CHN_SELFCHECK_HPP
