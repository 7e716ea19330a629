#include <chn/chn.hpp>

#include <gtest/gtest.h>

using namespace chn;
using Q = Rational;

namespace {

Json file(int n, Json gens) { return Json{{"n", n}, {"generators", std::move(gens)}}; }

Json term(const char* label, Json coeff) { return Json{{"label", label}, {"coeff", std::move(coeff)}}; }

}  // namespace

TEST(SubalgebraFile, ParsesRationalAndComplexCoefficients) {
  AlgebraContext<Q> g;
  auto f = parse_subalgebra<Q>(file(3, Json::array({Json::array({term("B", "1"), term("E1", Json::array({"3/5", "-4/5"}))}),
                                                      Json::array({term("T2", 2)})})),
                               &g);
  ASSERT_EQ(f.generators.size(), 2u);
  auto want = g->roots().B + ratio<Q>(3, 5) * g->labeled("E1") - ratio<Q>(4, 5) * g->labeled("F1");
  EXPECT_EQ(f.generators[0], want);
  EXPECT_EQ(f.generators[1], Q(2) * g->labeled("T2"));
}

TEST(SubalgebraFile, Errors) {
  EXPECT_THROW(parse_subalgebra<Q>(Json::array()), ParseError);
  EXPECT_THROW(parse_subalgebra<Q>(Json{{"n", 2}}), ParseError);
  EXPECT_THROW(parse_subalgebra<Q>(file(1, Json::array())), DimensionError);
  EXPECT_THROW(parse_subalgebra<Q>(file(2, Json::array({Json::array({term("E2", "1")})}))), ParseError);
  EXPECT_THROW(parse_subalgebra<Q>(file(2, Json::array({Json::array({term("E1", "1/0")})}))), ParseError);
  EXPECT_THROW(parse_subalgebra<Q>(file(2, Json::array({Json::array({term("E1", 0.5)})}))), ParseError);
  EXPECT_THROW(parse_subalgebra<Q>(file(2, Json::array({Json::array({term("B", Json::array({"1", "1"}))})}))), ParseError);
  EXPECT_THROW(parse_subalgebra<Q>(file(2, Json::array({Json::array({term("thetaZ", "1")})}))), ParseError);
}

TEST(SubalgebraFile, RoundTripIsLossless) {
  auto g = build_algebra<Q>(4);
  std::vector<LieVector<Q>> gens{g->roots().B + ratio<Q>(-7, 3) * g->labeled("T5") + ratio<Q>(1, 9) * g->labeled("F3"),
                                 g->roots().Z};
  auto j = subalgebra_json(*g, gens);
  auto back = parse_subalgebra<Q>(Json::parse(j.dump()));
  ASSERT_EQ(back.generators.size(), 2u);
  EXPECT_EQ(back.generators[0], gens[0]);
  EXPECT_EQ(back.generators[1], gens[1]);
  for (const auto& t : j["generators"][0]) EXPECT_TRUE(t["coeff"].is_string());
}

TEST(Report, DeterministicAndComplete) {
  auto g = build_algebra<Q>(3);
  auto h = build_family_b(g, SubspaceSpec<Q>::parse("hyperplane"));
  Json input = subalgebra_json(*g, h.generators());
  auto a1 = analysis_json(h, analyze(h), input).dump();
  auto h2 = Subalgebra<Q>::from_closed(g, parse_subalgebra<Q>(input).generators);
  auto a2 = analysis_json(h2, analyze(h2), input).dump();
  EXPECT_EQ(a1, a2);
  auto j = Json::parse(a1);
  EXPECT_EQ(j["verdict"]["label"], "Lohnherr");
  EXPECT_EQ(j["minimal"], true);
  EXPECT_EQ(j["tangent_dim"], 5);
  EXPECT_EQ(j["normal_dim"], 1);
  EXPECT_EQ(j["decomposition"]["dim_s"], 3);
  EXPECT_EQ(j["oracles"]["koszul"], "agrees");
  EXPECT_TRUE(j["mean_curvature"].empty());
}

TEST(Report, HorosphereCertificate) {
  auto g = build_algebra<Q>(4);
  std::vector<LieVector<Q>> gens = g->roots().E;
  for (const auto& f : g->roots().JE) gens.push_back(f);
  gens.push_back(g->roots().Z);
  auto h = Subalgebra<Q>::from_closed(g, gens);
  auto j = analysis_json(h, analyze(h), Json());
  EXPECT_EQ(j["mean_curvature"]["B"], "4");
  EXPECT_EQ(j["verdict"]["certificate"]["value"], "4");
  EXPECT_EQ(j["verdict"]["certificate"]["normal"], "B");
}

TEST(Report, FloatModeCarriesEpsilon) {
  auto g = build_algebra<double>(2);
  auto h = Subalgebra<double>::from_closed(g, {g->roots().B, g->labeled("E1")});
  auto j = analysis_json(h, analyze(h), Json());
  EXPECT_EQ(j["field"], "float");
  EXPECT_DOUBLE_EQ(j["epsilon"].get<double>(), 1e-12);
  EXPECT_EQ(j["verdict"]["label"], "RH^2-focal");
}

TEST(OracleCompare, TwistedAndAN) {
  auto g = build_algebra<Q>(3);
  auto c = central_j_element(*g);
  auto tw = build_twisted(g, realize(*g, SubspaceSpec<Q>::parse("complex:2")), c, true);
  for (const auto& r : oracle_compare(tw)) {
    EXPECT_TRUE(r.p_equals_an);
    EXPECT_FALSE(r.koszul_equals_an.has_value());
  }
  auto plain = build_family_b(g, SubspaceSpec<Q>::parse("dim:3"));
  auto rows = oracle_compare(plain);
  EXPECT_EQ(rows.size(), 15u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.p_equals_an);
    ASSERT_TRUE(r.koszul_equals_an.has_value());
    EXPECT_TRUE(*r.koszul_equals_an);
  }
}

TEST(Selfcheck, SeedDeterminismAndSensitivity) {
  SelfcheckOptions opt;
  opt.n_min = opt.n_max = 2;
  opt.corpus_size = 30;
  opt.seed = 42;
  auto a = selfcheck_json(run_selfcheck<Q>(opt)).dump();
  auto b = selfcheck_json(run_selfcheck<Q>(opt)).dump();
  EXPECT_EQ(a, b);
  EXPECT_TRUE(Json::parse(a)["passed"].get<bool>());
  opt.sign_flip = true;
  auto bad = run_selfcheck<Q>(opt);
  EXPECT_FALSE(bad.all_passed());
  ASSERT_NE(bad.first_failure(), nullptr);
  EXPECT_FALSE(bad.first_failure()->witness.empty());
}
