#include <chn/geometry.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace chn;
using Q = Rational;

namespace {

using Sub = Subalgebra<Q>;

Sub make(const AlgebraContext<Q>& g, std::initializer_list<const char*> names) {
  std::vector<LieVector<Q>> gens;
  for (const char* s : names) gens.push_back(g->labeled(s));
  return Sub::from_closed(g, gens);
}

Sub nilradical(const AlgebraContext<Q>& g) {
  std::vector<LieVector<Q>> gens = g->roots().E;
  for (const auto& f : g->roots().JE) gens.push_back(f);
  gens.push_back(g->roots().Z);
  return Sub::from_closed(g, gens);
}

Vec<Q> an(const AlgebraContext<Q>& g, const char* label) { return g->an_part(g->labeled(label)); }

Vec<Q> scaled_b(const AlgebraContext<Q>& g, const Q& c) {
  Vec<Q> v(g->layout().an_dim, Q(0));
  v[0] = c;
  return v;
}

}  // namespace

TEST(TangentNormal, Nilradical) {
  auto g = build_algebra<Q>(3);
  auto h = nilradical(g);
  auto s = tangent_normal(h);
  EXPECT_EQ(s.tangent.size(), 5u);
  ASSERT_EQ(s.normal.size(), 1u);
  EXPECT_TRUE(vec_equal(s.normal.vectors[0], scaled_b(g, Q(1))));
  // Projectors are complementary and idempotent.
  Vec<Q> v{Q(1), Q(2), ratio<Q>(-1, 3), Q(5), Q(7), Q(11)};
  auto pt = s.project_tangent(v), pn = s.project_normal(v);
  EXPECT_TRUE(vec_equal(pt + pn, v));
  EXPECT_TRUE(vec_equal(s.project_tangent(pt), pt));
  EXPECT_TRUE(is_zero_vec(s.project_tangent(pn)));
}

TEST(TangentNormal, FamilyAHasZNormal) {
  auto g = build_algebra<Q>(3);
  auto s = tangent_normal(make(g, {"B", "E1"}));
  auto z = an(g, "Z");
  EXPECT_TRUE(vec_equal(s.project_normal(z), z));
}

TEST(TangentNormal, TwistedTangentIsB) {
  auto g = build_algebra<Q>(2);
  auto h = Sub::from_closed(g, {g->roots().B + g->labeled("T1")});
  auto s = tangent_normal(h);
  ASSERT_EQ(s.tangent.size(), 1u);
  EXPECT_TRUE(vec_equal(s.tangent.vectors[0], scaled_b(g, Q(1))));
}

TEST(Sff, SingleE1) {
  auto g = build_algebra<Q>(3);
  auto h = make(g, {"E1"});
  OrbitGeometry<Q> geo(h);
  auto e1 = an(g, "E1");
  auto half_b = scaled_b(g, ratio<Q>(1, 2));
  EXPECT_TRUE(vec_equal(geo.sff_an(e1, e1), half_b));
  EXPECT_TRUE(vec_equal(geo.sff_p(e1, e1), half_b));
  EXPECT_TRUE(vec_equal(geo.koszul_sff(e1, e1), half_b));
  EXPECT_TRUE(vec_equal(mean_curvature(h), half_b));
}

TEST(Sff, SingleZ) {
  auto g = build_algebra<Q>(2);
  auto h = make(g, {"Z"});
  OrbitGeometry<Q> geo(h);
  auto z = an(g, "Z");
  auto b = scaled_b(g, Q(1));
  EXPECT_TRUE(vec_equal(geo.sff_an(z, z), b));
  EXPECT_TRUE(vec_equal(geo.sff_p(z, z), b));
  EXPECT_TRUE(vec_equal(geo.koszul_sff(z, z), b));
}

TEST(Sff, NilradicalPairs) {
  auto g = build_algebra<Q>(3);
  auto h = nilradical(g);
  OrbitGeometry<Q> geo(h);
  auto z = an(g, "Z"), e1 = an(g, "E1");
  EXPECT_TRUE(vec_equal(geo.sff_p(z, z), scaled_b(g, Q(1))));
  EXPECT_TRUE(is_zero_vec(geo.sff_an(e1, z)));
  EXPECT_TRUE(is_zero_vec(geo.sff_p(e1, z)));
  EXPECT_TRUE(is_zero_vec(geo.koszul_sff(e1, z)));
}

TEST(Sff, TotallyRealFamilyVanishes) {
  auto g = build_algebra<Q>(3);
  auto h = make(g, {"B", "E1", "E2"});
  OrbitGeometry<Q> geo(h);
  auto b = an(g, "B");
  EXPECT_TRUE(is_zero_vec(geo.sff_p(b, b)));
  EXPECT_TRUE(is_zero_vec(geo.sff_an(b, b)));
  auto rep = analyze_minimality(h);
  EXPECT_TRUE(rep.is_totally_geodesic);
  EXPECT_TRUE(rep.is_minimal);
  EXPECT_TRUE(rep.koszul_applicable);
  EXPECT_TRUE(rep.koszul_agrees);
  EXPECT_TRUE(rep.p_agrees);
}

TEST(Sff, RejectsNonTangent) {
  auto g = build_algebra<Q>(2);
  auto h = make(g, {"B", "E1"});
  OrbitGeometry<Q> geo(h);
  EXPECT_THROW(geo.sff_an(an(g, "Z"), an(g, "B")), DomainError);
  EXPECT_THROW(geo.sff_p(an(g, "B"), an(g, "F1")), DomainError);
  auto tw = Sub::from_closed(g, {g->roots().B + g->labeled("T1")});
  EXPECT_THROW(OrbitGeometry<Q>(tw).koszul_sff(an(g, "B"), an(g, "B")), DomainError);
}

TEST(MeanCurvature, HorosphereIsNB) {
  for (int n = 2; n <= 6; ++n) {
    auto g = build_algebra<Q>(n);
    auto h = nilradical(g);
    EXPECT_TRUE(vec_equal(mean_curvature(h), scaled_b(g, Q(n)))) << "n=" << n;
    EXPECT_FALSE(is_minimal(h));
  }
}

TEST(MeanCurvature, FamilyBMinimal) {
  auto g = build_algebra<Q>(3);
  auto complex = make(g, {"B", "E1", "F1", "Z"});
  EXPECT_TRUE(is_minimal(complex));
  EXPECT_TRUE(is_totally_geodesic(complex));
  auto real = make(g, {"B", "E1", "Z"});
  EXPECT_TRUE(is_minimal(real));
  EXPECT_FALSE(is_totally_geodesic(real));
  auto hyper = make(g, {"B", "E1", "E2", "F1", "Z"});
  auto rep = analyze_minimality(hyper);
  EXPECT_TRUE(rep.is_minimal);
  EXPECT_FALSE(rep.is_totally_geodesic);
  EXPECT_TRUE(rep.symmetric && rep.normal_valued && rep.p_agrees && rep.koszul_agrees);
}

TEST(MeanCurvature, BasisIndependence) {
  auto g = build_algebra<Q>(3);
  auto h = Sub::lie_span(g, {g->roots().B + g->labeled("E1"), g->labeled("F2") + g->labeled("E2")});
  auto t = sff_tensor(OrbitGeometry<Q>(h));
  auto H = mean_curvature(t, g->layout().an_dim);
  // Another orthogonal basis: Gram-Schmidt of a shuffled, mixed generating set.
  std::vector<Vec<Q>> mixed;
  const auto& tv = t.tangent.vectors;
  for (std::size_t i = 0; i < tv.size(); ++i) {
    Vec<Q> v = tv[(i + 1) % tv.size()];
    for (std::size_t j = 0; j < tv.size(); ++j) axpy(v, ratio<Q>(static_cast<long>(j + 2), static_cast<long>(i + 3)), tv[j]);
    mixed.push_back(v);
  }
  auto other = orthogonalize(mixed);
  ASSERT_EQ(other.size(), tv.size());
  Vec<Q> H2(g->layout().an_dim, Q(0));
  for (std::size_t i = 0; i < other.size(); ++i)
    axpy(H2, Q(Q(1) / other.norm2[i]), t(other.vectors[i], other.vectors[i]));
  EXPECT_TRUE(vec_equal(H, H2));
}

TEST(MeanCurvature, TwistedLiftIndependence) {
  auto g = build_algebra<Q>(2);
  auto h = Sub::lie_span(g, {g->labeled("T1"), g->roots().B, g->labeled("E1")});
  auto rep = analyze_minimality(h);
  EXPECT_EQ(h.decomposition().q.size(), 1u);
  EXPECT_TRUE(rep.lift_independent);
  EXPECT_TRUE(rep.p_agrees);
  EXPECT_FALSE(rep.koszul_applicable);
}

TEST(MeanCurvature, PointOrbit) {
  auto g = build_algebra<Q>(2);
  auto h = Sub::from_closed(g, {g->labeled("T1")});
  auto rep = analyze_minimality(h);
  EXPECT_TRUE(rep.degenerate);
  EXPECT_TRUE(is_zero_vec(rep.mean_curvature));
  auto empty = Sub::from_closed(g, {});
  EXPECT_EQ(empty.dim(), 0u);
  EXPECT_TRUE(analyze_minimality(empty).degenerate);
}

TEST(MeanCurvature, FloatAgrees) {
  auto g = build_algebra<double>(3);
  std::vector<LieVector<double>> gens = g->roots().E;
  for (const auto& f : g->roots().JE) gens.push_back(f);
  gens.push_back(g->roots().Z);
  auto h = Subalgebra<double>::from_closed(g, gens);
  auto H = mean_curvature(h);
  EXPECT_NEAR(H[0], 3.0, 1e-12);
  EXPECT_FALSE(is_minimal(h));
}

TEST(Kaehler, Examples) {
  auto g = build_algebra<Q>(3);
  auto tr = kaehler_angles(*g, {an(g, "E1"), an(g, "E2")});
  EXPECT_EQ(tr.type, KaehlerType::totally_real);
  for (double a : tr.angles) EXPECT_NEAR(a, M_PI / 2, 1e-12);
  auto cx = kaehler_angles(*g, {an(g, "E1"), an(g, "F1")});
  EXPECT_EQ(cx.type, KaehlerType::complex);
  for (double a : cx.angles) EXPECT_NEAR(a, 0.0, 1e-12);
  // cos = 3/5, sin = 4/5.
  Vec<Q> w = ratio<Q>(3, 5) * an(g, "F1") + ratio<Q>(4, 5) * an(g, "E2");
  auto ca = kaehler_angles(*g, {an(g, "E1"), w});
  EXPECT_EQ(ca.type, KaehlerType::constant_angle);
  ASSERT_TRUE(ca.cos2.has_value());
  EXPECT_EQ(*ca.cos2, ratio<Q>(9, 25));
  for (double a : ca.angles) EXPECT_NEAR(a, std::acos(0.6), 1e-12);
  auto mixed = kaehler_angles(*g, {an(g, "E1"), an(g, "F1"), an(g, "E2")});
  EXPECT_EQ(mixed.type, KaehlerType::mixed);
  EXPECT_THROW(kaehler_angles(*g, {an(g, "B")}), DomainError);
}
