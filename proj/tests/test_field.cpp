#include <chn/field.hpp>

#include <gmp.h>
#include <gtest/gtest.h>

using chn::Rational;
using Q = chn::field_traits<Rational>;
using D = chn::field_traits<double>;

namespace {

// libgmp's own parser and canonicalization, bypassing the Boost wrapper
std::string gmp_canonical(const char* s) {
  mpq_t q;
  mpq_init(q);
  EXPECT_EQ(mpq_set_str(q, s, 10), 0);
  mpq_canonicalize(q);
  char* out = mpq_get_str(nullptr, 10, q);
  std::string r(out);
  void (*freefn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(out, r.size() + 1);
  mpq_clear(q);
  return r;
}

}  // namespace

TEST(Field, ParsesFractionsLikeGmp) {
  for (const char* s : {"1/2", "-6/4", "10/5", "0/7", "123456789012345678901234567890/9", "-1/3"})
    EXPECT_EQ(Q::format(Q::parse(s)), gmp_canonical(s)) << s;
}

TEST(Field, ParsesDecimals) {
  EXPECT_EQ(Q::parse("1.25"), Rational(5) / 4);
  EXPECT_EQ(Q::parse("-0.5"), Rational(-1) / 2);
  EXPECT_EQ(Q::parse(" 3 "), Rational(3));
  EXPECT_EQ(Q::parse("+2/6"), Rational(1) / 3);
}

TEST(Field, RejectsGarbage) {
  for (const char* s : {"", "abc", "1/0", "1/x", "2//3", "--1"}) EXPECT_THROW(Q::parse(s), chn::ParseError) << s;
}

TEST(Field, ExactSqrtOnlyForSquares) {
  EXPECT_EQ(*Q::sqrt(Rational(9) / 16), Rational(3) / 4);
  EXPECT_EQ(*Q::sqrt(Rational(0)), Rational(0));
  EXPECT_FALSE(Q::sqrt(Rational(2)));
  EXPECT_FALSE(Q::sqrt(Rational(1) / 2));
  EXPECT_FALSE(Q::sqrt(Rational(-4)));
}

TEST(Field, ExactZeroHasNoTolerance) {
  Rational tiny(1);
  for (int i = 0; i < 200; ++i) tiny /= 10;
  EXPECT_FALSE(Q::is_zero(tiny));
  EXPECT_EQ(Q::sign(-tiny), -1);
}

TEST(Field, FloatUsesEpsilon) {
  EXPECT_TRUE(D::is_zero(1e-13));
  EXPECT_FALSE(D::is_zero(1e-11));
  EXPECT_EQ(D::sign(-5e-13), 0);
  EXPECT_EQ(D::format(1e-14), "0");
  EXPECT_DOUBLE_EQ(D::parse("1/3"), 1.0 / 3.0);
  EXPECT_FALSE(D::sqrt(-1.0));
  EXPECT_DOUBLE_EQ(*D::sqrt(2.0), std::sqrt(2.0));
}
