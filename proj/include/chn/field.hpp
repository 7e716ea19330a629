#ifndef CHN_FIELD_HPP
#define CHN_FIELD_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chn {

/// Exact rational scalar (GMP backed, expression templates off so `auto` is safe).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Integer parse_integer(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw ParseError("empty integer in '" + std::string(s) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw ParseError("bad digit in '" + std::string(s) + "'");
  }
  return Integer(std::string(s.front() == '+' ? s.substr(1) : s));
}

// Accepts "p", "p/q" and plain decimals "1.25".
inline Rational parse_rational(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rational r(num);
    r /= Rational(den);
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    std::string w(whole.empty() || whole == "-" || whole == "+" ? std::string("0") : std::string(whole));
    Rational r(parse_integer(w));
    if (!frac.empty()) {
      Integer scale(1);
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      Rational f(parse_integer(frac));
      f /= Rational(scale);
      r = negative ? r - f : r + f;
    }
    return r;
  }
  return Rational(parse_integer(s));
}

inline std::optional<Integer> exact_isqrt(const Integer& v) {
  if (v < 0) return std::nullopt;
  Integer root = boost::multiprecision::sqrt(v);
  if (root * root != v) return std::nullopt;
  return root;
}

}  // namespace detail

/// Per-field behaviour: zero tests, square roots, parsing and printing.
/// The exact field decides everything with no tolerance; the float field
/// compares against `epsilon`.
template <class F>
struct field_traits;

template <>
struct field_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr double epsilon = 0.0;
  static constexpr const char* mode = "exact";

  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static int sign(const Rational& x) { return x.sign(); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static std::string format(const Rational& x) { return x.str(); }
  static Rational parse(std::string_view s) { return detail::parse_rational(s); }

  /// Square root when it is again rational, nullopt otherwise.
  static std::optional<Rational> sqrt(const Rational& x) {
    if (x.sign() < 0) return std::nullopt;
    auto num = detail::exact_isqrt(boost::multiprecision::numerator(x));
    auto den = detail::exact_isqrt(boost::multiprecision::denominator(x));
    if (!num || !den) return std::nullopt;
    Rational r(*num);
    r /= Rational(*den);
    return r;
  }
};

template <>
struct field_traits<double> {
  static constexpr bool exact = false;
  static constexpr double epsilon = 1e-12;
  static constexpr const char* mode = "float";

  static bool is_zero(double x) { return std::fabs(x) <= epsilon; }
  static int sign(double x) { return is_zero(x) ? 0 : (x > 0 ? 1 : -1); }
  static double to_double(double x) { return x; }
  static std::string format(double x) {
    if (is_zero(x)) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
  }
  static double parse(std::string_view s) { return detail::parse_rational(s).convert_to<double>(); }
  static std::optional<double> sqrt(double x) {
    if (x < -epsilon) return std::nullopt;
    return std::sqrt(x < 0 ? 0.0 : x);
  }
};

template <class F>
bool is_zero(const F& x) {
  return field_traits<F>::is_zero(x);
}

template <class F>
int sign(const F& x) {
  return field_traits<F>::sign(x);
}

template <class F>
std::string format(const F& x) {
  return field_traits<F>::format(x);
}

template <class F>
F parse_scalar(std::string_view s) {
  return field_traits<F>::parse(s);
}

/// p/q in the field F.
template <class F>
F ratio(long p, long q = 1) {
  F r(p);
  r /= F(q);
  return r;
}

}  // namespace chn

#endif  // CHN_FIELD_HPP
