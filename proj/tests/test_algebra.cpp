#include <chn/algebra.hpp>

#include <gtest/gtest.h>

using namespace chn;
using Q = Rational;

namespace {

// Trace form oracle: on sl(N, C) restricted to su(1,n), Killing = 2N Re tr(XY).
Q trace_form(const CMatrix<Q>& x, const CMatrix<Q>& y) { return (x * y).trace().re; }

class AlgebraN : public ::testing::TestWithParam<int> {};

}  // namespace

TEST(Algebra, RejectsSmallN) {
  EXPECT_THROW(build_algebra<Q>(1), DimensionError);
  EXPECT_THROW(build_algebra<Q>(0), DimensionError);
}

TEST(Algebra, RootSpaceDimensionsN2) {
  auto g = build_algebra<Q>(2);
  EXPECT_EQ(g->dim(), 8u);
  EXPECT_EQ(g->roots().g_alpha.size(), 2u);
  EXPECT_EQ(g->roots().g_2alpha.size(), 1u);
  EXPECT_EQ(g->roots().k0.size(), 1u);
}

TEST(Algebra, RootSpaceDimensionsN3) {
  auto g = build_algebra<Q>(3);
  EXPECT_EQ(g->dim(), 15u);
  EXPECT_EQ(g->roots().g_alpha.size(), 4u);
  EXPECT_EQ(g->roots().k0.size(), 4u);
  EXPECT_EQ(g->roots().g_2alpha.size(), 1u);
  EXPECT_EQ(g->roots().k.size(), 9u);
  EXPECT_EQ(g->roots().p.size(), 6u);
}

TEST(Algebra, ContextMismatch) {
  auto g2 = build_algebra<Q>(2);
  auto g3 = build_algebra<Q>(3);
  EXPECT_THROW(g3->bracket(g2->roots().B, g3->roots().B), ContextError);
  EXPECT_THROW((void)(g2->roots().B + g3->roots().B), ContextError);
}

TEST(Algebra, FromMatrixRejectsNonMember) {
  auto g = build_algebra<Q>(2);
  CMatrix<Q> m(3);
  m(0, 1) = {Q(1), Q(0)};
  EXPECT_THROW(g->from_matrix(m), DomainError);
  EXPECT_FALSE(Algebra<Q>::in_su1n(m));
}

TEST_P(AlgebraN, KillingMatchesTraceForm) {
  const int n = GetParam();
  auto g = build_algebra<Q>(n);
  const Q scale(2 * (n + 1));
  for (std::size_t i = 0; i < g->dim(); ++i)
    for (std::size_t j = 0; j < g->dim(); ++j) {
      auto x = g->ambient_vector(i), y = g->ambient_vector(j);
      ASSERT_EQ(g->killing(x, y), scale * trace_form(g->to_matrix(x), g->to_matrix(y))) << i << "," << j;
    }
}

TEST_P(AlgebraN, MatrixRoundTrip) {
  auto g = build_algebra<Q>(GetParam());
  for (std::size_t i = 0; i < g->dim(); ++i) {
    auto x = g->ambient_vector(i);
    EXPECT_TRUE(Algebra<Q>::in_su1n(g->to_matrix(x)));
    EXPECT_EQ(g->from_matrix(g->to_matrix(x)), x);
  }
}

TEST_P(AlgebraN, BracketRelations) {
  auto g = build_algebra<Q>(GetParam());
  const auto& B = g->roots().B;
  const auto& Z = g->roots().Z;
  auto E1 = g->labeled("E1"), F1 = g->labeled("F1");
  EXPECT_EQ(g->bracket(B, Z), Z);
  EXPECT_EQ(g->bracket(B, E1), ratio<Q>(1, 2) * E1);
  EXPECT_EQ(g->bracket(E1, F1), Z);
  EXPECT_TRUE(g->bracket(Z, E1).is_zero());
  EXPECT_EQ(g->theta(B), -B);
  EXPECT_EQ(g->complex_structure(B), Z);
  EXPECT_EQ(g->complex_structure(Z), -B);
  EXPECT_EQ(g->complex_structure(E1), F1);
  EXPECT_EQ(g->psi(B), B);
}

TEST_P(AlgebraN, MetricOrthonormalAdaptedBasis) {
  auto g = build_algebra<Q>(GetParam());
  std::vector<std::string> labels = g->an_labels();
  for (const auto& a : labels)
    for (const auto& b : labels)
      EXPECT_EQ(g->metric(g->labeled(a), g->labeled(b)), Q(a == b ? 1 : 0)) << a << " " << b;
}

TEST_P(AlgebraN, MetricOnNilradicalIsHermitianTrace) {
  // <X,Y> = Re tr(X^dagger Y) on n, an oracle independent of the Killing form.
  auto g = build_algebra<Q>(GetParam());
  std::vector<LieVector<Q>> n_basis = g->roots().E;
  for (const auto& f : g->roots().JE) n_basis.push_back(f);
  n_basis.push_back(g->roots().Z);
  for (const auto& x : n_basis)
    for (const auto& y : n_basis)
      EXPECT_EQ(g->metric(x, y), (g->to_matrix(x).adjoint() * g->to_matrix(y)).trace().re);
}

TEST_P(AlgebraN, QThetaPositiveDefinite) {
  auto g = build_algebra<Q>(GetParam());
  // Sylvester: all leading principal minors positive.
  auto piv = leading_pivots(g->metric_context().q_theta);
  ASSERT_TRUE(piv.has_value());
  for (const auto& p : *piv) EXPECT_GT(p, 0);
}

TEST_P(AlgebraN, KillingInvariance) {
  auto g = build_algebra<Q>(GetParam());
  const auto& basis = g->adapted_basis();
  for (std::size_t i = 0; i < basis.size(); i += 2)
    for (std::size_t j = 0; j < basis.size(); j += 3)
      for (std::size_t k = 0; k < basis.size(); k += 5)
        EXPECT_EQ(g->killing(g->bracket(basis[i], basis[j]), basis[k]),
                  -g->killing(basis[j], g->bracket(basis[i], basis[k])));
}

TEST_P(AlgebraN, JIsComplexStructureAndIsometry) {
  auto g = build_algebra<Q>(GetParam());
  const auto& J = g->j_matrix();
  auto J2 = J * J;
  EXPECT_TRUE((J2 + Matrix<Q>::identity(J.rows())).is_zero_matrix());
  EXPECT_TRUE((J.transpose() * J - Matrix<Q>::identity(J.rows())).is_zero_matrix());
}

TEST_P(AlgebraN, PsiInverseRoundTrip) {
  auto g = build_algebra<Q>(GetParam());
  for (const auto& l : g->an_labels()) {
    auto x = g->labeled(l);
    EXPECT_EQ(g->psi_inverse(g->psi(x)), x);
    EXPECT_EQ(g->q_theta(g->psi(x), g->psi(x)), g->metric(x, x));
  }
  EXPECT_THROW(g->psi_inverse(g->labeled("E1")), DomainError);
  EXPECT_THROW(g->metric(g->labeled("T1"), g->roots().B), DomainError);
}

TEST_P(AlgebraN, ThetaBracketIdentities) {
  auto g = build_algebra<Q>(GetParam());
  auto rep = verify_lemma21(*g);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << " at " << c.witness;
  auto an = verify_an_brackets(*g);
  for (const auto& c : an.checks) EXPECT_TRUE(c.passed) << c.name << " at " << c.witness;
  auto grading = verify_grading(*g);
  EXPECT_TRUE(grading.passed) << grading.witness;
}

TEST_P(AlgebraN, K0ActsOnGAlphaCommutingWithJ) {
  auto g = build_algebra<Q>(GetParam());
  const auto& J = g->j_matrix();
  const std::size_t m = g->layout().alpha_dim;
  Matrix<Q> Ja(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) Ja(r, c) = J(r + 1, c + 1);
  for (std::size_t k = 0; k < g->layout().k0_dim; ++k) {
    const auto& A = g->k0_action(k);
    EXPECT_TRUE((A * Ja - Ja * A).is_zero_matrix());
    EXPECT_TRUE((A + A.transpose()).is_zero_matrix());
  }
}

TEST_P(AlgebraN, LabelsRoundTrip) {
  auto g = build_algebra<Q>(GetParam());
  for (std::size_t i = 0; i < g->layout().neg_begin(); ++i) {
    auto pos = g->label_position(g->label(i));
    ASSERT_TRUE(pos.has_value()) << g->label(i);
    EXPECT_EQ(*pos, i);
  }
  EXPECT_FALSE(g->label_position("E0").has_value());
  EXPECT_FALSE(g->label_position("X1").has_value());
  EXPECT_FALSE(g->label_position("E" + std::to_string(GetParam())).has_value());
  EXPECT_THROW(g->labeled("Q"), ParseError);
}

TEST(Algebra, JacobiSmallN) {
  auto g = build_algebra<Q>(2);
  auto c = verify_jacobi(*g);
  EXPECT_TRUE(c.passed) << c.witness;
  EXPECT_EQ(c.evaluated, 56u);
}

TEST(Algebra, FloatModeAgrees) {
  auto ge = build_algebra<Q>(3);
  auto gf = build_algebra<double>(3);
  for (std::size_t i = 0; i < ge->dim(); ++i) {
    Vec<Q> ce = ge->adapted_basis()[i].coeffs;
    Vec<double> cf = gf->adapted_basis()[i].coeffs;
    for (std::size_t k = 0; k < ce.size(); ++k) EXPECT_NEAR(ce[k].convert_to<double>(), cf[k], 1e-12);
  }
  auto rep = verify_lemma21(*gf);
  EXPECT_TRUE(rep.all_passed());
}

INSTANTIATE_TEST_SUITE_P(Ranks, AlgebraN, ::testing::Values(2, 3, 4));
