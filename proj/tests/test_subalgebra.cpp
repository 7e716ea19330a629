#include <chn/subalgebra.hpp>

#include <gtest/gtest.h>

using namespace chn;
using Q = Rational;

namespace {

using Sub = Subalgebra<Q>;

std::vector<LieVector<Q>> labeled(const Algebra<Q>& g, std::initializer_list<const char*> names) {
  std::vector<LieVector<Q>> out;
  for (const char* s : names) out.push_back(g.labeled(s));
  return out;
}

// h recovered as q + X1 + X2 + {W + Phi(W)}: the direct sum must give back h.
void expect_direct_sum(const Sub& h) {
  const auto& g = h.algebra();
  const auto& d = h.decomposition();
  std::vector<LieVector<Q>> parts;
  const Vec<Q> zero_an(g.layout().an_dim, Q(0));
  for (const auto& t : d.q) parts.push_back(g.from_k0(t));
  if (d.has_x1()) parts.push_back(g.from_parts(d.T, d.x1_an()));
  if (d.has_x2()) parts.push_back(g.from_parts(d.R, d.x2_an()));
  for (std::size_t i = 0; i < d.W.size(); ++i) parts.push_back(g.from_parts(d.phi_W[i], d.W[i]));
  ASSERT_EQ(parts.size(), h.dim());
  std::vector<Vec<Q>> coords;
  for (const auto& p : parts) {
    EXPECT_TRUE(h.contains(p)) << describe(g, p);
    coords.push_back(g.adapted(p));
  }
  EXPECT_EQ(rank(Matrix<Q>::from_rows(coords, g.dim())), h.dim());
}

void expect_invariants(const Sub& h) {
  const auto& g = h.algebra();
  const auto& d = h.decomposition();
  expect_direct_sum(h);
  EXPECT_TRUE(is_zero(Q(d.a * d.b + dot(d.U, d.V))));
  auto x1 = d.x1_an(), x2 = d.x2_an();
  if (d.has_x1() && d.has_x2()) {
    EXPECT_TRUE(is_zero(dot(x1, x2)));
  }
  for (std::size_t i = 0; i < d.W.size(); ++i) {
    EXPECT_TRUE(is_zero(dot(x1, d.W[i])));
    EXPECT_TRUE(is_zero(dot(x2, d.W[i])));
    EXPECT_EQ(d.W_norm2[i], dot(d.W[i], d.W[i]));
    for (std::size_t j = 0; j < i; ++j) EXPECT_TRUE(is_zero(dot(d.W[i], d.W[j])));
    if (i >= d.d) {
      EXPECT_TRUE(is_zero_vec(d.phi_W[i]));
    }
  }
  if (!d.has_x1()) {
    EXPECT_TRUE(is_zero_vec(d.U));
    EXPECT_TRUE(is_zero_vec(d.T));
  }
  if (!d.has_x2()) {
    EXPECT_TRUE(is_zero(d.b));
    EXPECT_TRUE(is_zero_vec(d.V));
    EXPECT_TRUE(is_zero_vec(d.R));
  }
  // q is Q_theta-orthogonal to the k0 parts of the other summands.
  for (const auto& t : d.q) {
    EXPECT_TRUE(is_zero(g.k0_inner(t, d.T)));
    EXPECT_TRUE(is_zero(g.k0_inner(t, d.R)));
    for (const auto& p : d.phi_W) EXPECT_TRUE(is_zero(g.k0_inner(t, p)));
  }
  // Phi|_{s_d} injective.
  if (d.d > 0) {
    std::vector<Vec<Q>> images(d.phi_W.begin(), d.phi_W.begin() + static_cast<long>(d.d));
    EXPECT_EQ(rank(Matrix<Q>::from_rows(images, g.layout().k0_dim)), d.d);
  }
  // Re-decomposing from the RREF basis is idempotent.
  auto again = Sub::from_closed(h.context(), h.basis());
  const auto& e = again.decomposition();
  EXPECT_TRUE(vec_equal(e.U, d.U) && vec_equal(e.V, d.V) && vec_equal(e.T, d.T) && vec_equal(e.R, d.R));
  EXPECT_EQ(e.W.size(), d.W.size());
  EXPECT_EQ(e.d, d.d);
  EXPECT_EQ(e.a, d.a);
  EXPECT_EQ(e.b, d.b);
  EXPECT_EQ(e.x, d.x);
}

// Some T in k0 moving E1 out of span{E1}.
std::optional<std::size_t> t_moving_e1(const Algebra<Q>& g) {
  for (std::size_t k = 0; k < g.layout().k0_dim; ++k) {
    Vec<Q> img = g.k0_act(unit_vector<Q>(g.layout().k0_dim, k), unit_vector<Q>(g.layout().alpha_dim, 0));
    for (std::size_t i = 1; i < img.size(); ++i)
      if (!is_zero(img[i])) return k;
  }
  return std::nullopt;
}

}  // namespace

TEST(Closure, Examples) {
  auto g = build_algebra<Q>(3);
  EXPECT_TRUE(closure_check(*g, labeled(*g, {"B", "E1"})).closed);
  auto r = closure_check(*g, labeled(*g, {"B", "E1", "F1"}));
  ASSERT_FALSE(r.closed);
  EXPECT_EQ(r.first, 1u);
  EXPECT_EQ(r.second, 2u);
  EXPECT_EQ(r.bracket, g->roots().Z);
  EXPECT_EQ(r.residual, g->roots().Z);
  EXPECT_TRUE(closure_check(*g, labeled(*g, {"E1", "E2", "B"})).closed);
  EXPECT_THROW(closure_check(*g, {g->theta(g->roots().Z)}), DomainError);
}

TEST(Closure, FromClosedThrowsWithWitness) {
  auto g = build_algebra<Q>(2);
  try {
    Sub::from_closed(g, labeled(*g, {"B", "E1", "F1"}));
    FAIL() << "expected ClosureError";
  } catch (const ClosureError& e) {
    EXPECT_EQ(e.first(), 1u);
    EXPECT_EQ(e.second(), 2u);
    EXPECT_NE(e.witness().find("[E1,F1] = Z"), std::string::npos) << e.witness();
  }
}

TEST(LieSpan, Examples) {
  auto g = build_algebra<Q>(3);
  auto h = Sub::lie_span(g, labeled(*g, {"B", "E1", "F1"}));
  EXPECT_EQ(h.dim(), 4u);
  EXPECT_TRUE(h.contains(g->roots().Z));
  EXPECT_EQ(Sub::lie_span(g, {g->roots().Z}).dim(), 1u);
  EXPECT_THROW(Sub::lie_span(g, {g->theta(g->roots().Z)}), NotParabolicError);
  EXPECT_THROW(Sub::lie_span(g, {g->roots().B, g->theta(g->labeled("E1"))}), NotParabolicError);
}

TEST(LieSpan, TwistReachesNewDirection) {
  auto g = build_algebra<Q>(3);
  auto k = t_moving_e1(*g);
  ASSERT_TRUE(k.has_value());
  auto T = g->adapted_basis()[*k];
  auto E1 = g->labeled("E1");
  auto h = Sub::lie_span(g, {g->roots().B + T, E1});
  auto moved = g->bracket(T, E1);
  EXPECT_TRUE(h.contains(moved));
  EXPECT_TRUE(closure_check(*g, h.basis()).closed);
}

TEST(Decompose, AbelianInAN) {
  auto g = build_algebra<Q>(3);
  auto h = Sub::from_closed(g, labeled(*g, {"B", "E1"}));
  const auto& d = h.decomposition();
  EXPECT_TRUE(d.q.empty());
  EXPECT_EQ(d.a, Q(1));
  EXPECT_TRUE(is_zero_vec(d.U));
  EXPECT_TRUE(is_zero_vec(d.T));
  EXPECT_FALSE(d.has_x2());
  ASSERT_EQ(d.W.size(), 1u);
  EXPECT_EQ(d.d, 0u);
  EXPECT_TRUE(vec_equal(d.W[0], g->an_part(g->labeled("E1"))));
  EXPECT_TRUE(is_zero_vec(h.phi(g->an_part(g->roots().B))));
  expect_invariants(h);
}

TEST(Decompose, Nilradical) {
  for (int n = 2; n <= 4; ++n) {
    auto g = build_algebra<Q>(n);
    std::vector<LieVector<Q>> gens = g->roots().E;
    for (const auto& f : g->roots().JE) gens.push_back(f);
    gens.push_back(g->roots().Z);
    auto h = Sub::from_closed(g, gens);
    const auto& d = h.decomposition();
    EXPECT_FALSE(d.has_x1());
    EXPECT_EQ(d.x, Q(1));
    EXPECT_EQ(d.b, Q(0));
    EXPECT_TRUE(is_zero_vec(d.V));
    EXPECT_TRUE(is_zero_vec(d.R));
    EXPECT_EQ(d.W.size(), static_cast<std::size_t>(2 * (n - 1)));
    EXPECT_EQ(d.d, 0u);
    expect_invariants(h);
  }
}

TEST(Decompose, TwistedN2) {
  // k0 of su(1,2) is one-dimensional and rotates g_alpha.
  auto g = build_algebra<Q>(2);
  auto T1 = g->labeled("T1");
  auto h = Sub::from_closed(g, {g->roots().B + T1, g->labeled("E1"), g->labeled("F1"), g->roots().Z});
  const auto& d = h.decomposition();
  EXPECT_EQ(d.a, Q(1));
  EXPECT_TRUE(vec_equal(d.T, g->k0_part(T1)));
  EXPECT_EQ(h.phi(g->roots().B), T1);
  EXPECT_EQ(d.x, Q(1));
  expect_invariants(h);
}

TEST(Decompose, QPartAndDiagonal) {
  auto g = build_algebra<Q>(2);
  auto T1 = g->labeled("T1");
  // h = span{T1, B, E1, F1, Z}: q = span{T1}.
  auto h = Sub::lie_span(g, {T1, g->roots().B, g->labeled("E1"), g->labeled("F1")});
  EXPECT_EQ(h.dim(), 5u);
  EXPECT_EQ(h.decomposition().q.size(), 1u);
  EXPECT_EQ(h.orbit_dim(), 4u);
  expect_invariants(h);
  // Diagonal element E1 + T1 in n=3 forces the closure to pick up more.
  auto g3 = build_algebra<Q>(3);
  auto h3 = Sub::lie_span(g3, {g3->labeled("E1") + g3->labeled("T1"), g3->roots().Z});
  expect_invariants(h3);
}

TEST(Decompose, RandomSpans) {
  auto g = build_algebra<Q>(3);
  std::vector<std::vector<LieVector<Q>>> seeds = {
      {g->labeled("E1") + g->labeled("T2"), g->labeled("F2")},
      {g->roots().B + g->labeled("E2"), g->labeled("F1") + g->labeled("T3")},
      {g->roots().B + ratio<Q>(1, 2) * g->labeled("Z"), g->labeled("E1") - g->labeled("F2")},
      {g->labeled("Z") + g->labeled("E1"), g->labeled("T1") + g->labeled("T4")},
      {g->labeled("T1"), g->labeled("E1") + g->labeled("T2")},
  };
  for (const auto& s : seeds) {
    try {
      auto h = Sub::lie_span(g, s);
      expect_invariants(h);
    } catch (const NotParabolicError&) {
      ADD_FAILURE() << "seeds are in the parabolic subalgebra";
    }
  }
}

TEST(Phi, RejectsNonTangent) {
  auto g = build_algebra<Q>(2);
  auto h = Sub::from_closed(g, labeled(*g, {"B", "E1"}));
  EXPECT_THROW(h.phi(g->an_part(g->roots().Z)), DomainError);
  EXPECT_THROW(h.phi(g->labeled("T1")), DomainError);
}

TEST(Group, ConjugationExamples) {
  auto g = build_algebra<Q>(3);
  auto hb = Sub::from_closed(g, {g->roots().B});
  auto id = GroupElement<Q>::identity(g);
  EXPECT_EQ(conjugate_to_base_point(hb, id), hb);
  EXPECT_EQ(conjugate_to_base_point(hb, GroupElement<Q>::torus(g, Q(3))), hb);
  auto hz = Sub::from_closed(g, {g->roots().Z});
  auto e = GroupElement<Q>::exp_nilpotent(g, g->labeled("E1"));
  EXPECT_EQ(conjugate_to_base_point(hz, e), hz);
  EXPECT_EQ(e.ad_inverse(g->roots().Z), g->roots().Z);
}

TEST(Group, AdjointActionIsAutomorphism) {
  auto g = build_algebra<Q>(3);
  auto x = GroupElement<Q>::torus(g, ratio<Q>(2, 3)) *
           GroupElement<Q>::exp_nilpotent(g, g->labeled("E1") + ratio<Q>(1, 2) * g->labeled("F2") + g->roots().Z);
  EXPECT_TRUE((x.matrix() * x.inverse_matrix()) == CMatrix<Q>::identity(4));
  const auto& basis = g->adapted_basis();
  for (std::size_t i = 0; i < basis.size(); i += 2)
    for (std::size_t j = 1; j < basis.size(); j += 3)
      EXPECT_EQ(x.ad_inverse(g->bracket(basis[i], basis[j])),
                g->bracket(x.ad_inverse(basis[i]), x.ad_inverse(basis[j])));
  // Ad(exp(tB)) scales g_lambda by s^{2 lambda(B)}.
  auto t = GroupElement<Q>::torus(g, Q(2));
  EXPECT_EQ(t.ad(g->roots().Z), Q(4) * g->roots().Z);
  EXPECT_EQ(t.ad(g->labeled("E1")), Q(2) * g->labeled("E1"));
  EXPECT_THROW(GroupElement<Q>::exp_nilpotent(g, g->roots().B), DomainError);
}

TEST(Group, ConjugatedFamilyStaysParabolic) {
  auto g = build_algebra<Q>(3);
  auto h = Sub::from_closed(g, labeled(*g, {"B", "E1", "E2"}));
  auto x = GroupElement<Q>::exp_nilpotent(g, g->labeled("F1") + g->roots().Z);
  auto c = conjugate_to_base_point(h, x);
  EXPECT_EQ(c.dim(), 3u);
  expect_invariants(c);
}

TEST(Group, FloatTorus) {
  auto g = build_algebra<double>(2);
  auto t = GroupElement<double>::exp_torus(g, 0.7);
  Vec<double> a = g->an_part(t.ad(g->roots().Z));
  EXPECT_NEAR(a[g->layout().z()], std::exp(0.7), 1e-12);
}
