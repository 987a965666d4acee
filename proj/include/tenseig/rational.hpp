#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <string_view>
#include <type_traits>

#include "tenseig/error.hpp"

namespace tenseig {

/// Exact rational scalar. Expression templates are off so `auto` is safe.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Element of Q(i). Only the field operations needed by exact gcd are provided.
struct GaussRational {
  Rational re{0};
  Rational im{0};

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit embedding of Q
  GaussRational(int r) : re(r) {}                  // NOLINT
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    Rational den = b.re * b.re + b.im * b.im;
    if (den == 0) fail(ErrorCode::invalid_argument, "division by zero in Q(i)");
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  GaussRational& operator+=(const GaussRational& o) { return *this = *this + o; }
  GaussRational& operator-=(const GaussRational& o) { return *this = *this - o; }
  GaussRational& operator*=(const GaussRational& o) { return *this = *this * o; }
  GaussRational& operator/=(const GaussRational& o) { return *this = *this / o; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <>
struct is_complex<GaussRational> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <class T>
inline constexpr bool is_exact_v =
    std::is_same_v<T, Rational> || std::is_same_v<T, GaussRational>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Converts between the scalar types used across the library. Narrowing from
/// exact to floating types rounds; floating to Rational is exact (dyadic).
template <class To, class From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<From, Rational>) {
    if constexpr (std::is_same_v<To, double>) return to_double(x);
    else if constexpr (std::is_same_v<To, std::complex<double>>) return {to_double(x), 0.0};
    else if constexpr (std::is_same_v<To, GaussRational>) return GaussRational(x);
    else static_assert(sizeof(To) == 0, "unsupported scalar_cast");
  } else if constexpr (std::is_same_v<From, GaussRational>) {
    if constexpr (std::is_same_v<To, std::complex<double>>) return {to_double(x.re), to_double(x.im)};
    else static_assert(sizeof(To) == 0, "unsupported scalar_cast");
  } else if constexpr (std::is_same_v<From, double>) {
    if constexpr (std::is_same_v<To, std::complex<double>>) return {x, 0.0};
    else if constexpr (std::is_same_v<To, Rational>) return Rational(x);
    else static_assert(sizeof(To) == 0, "unsupported scalar_cast");
  } else if constexpr (std::is_same_v<From, int> || std::is_same_v<From, long>) {
    return To(x);
  } else {
    static_assert(sizeof(To) == 0, "unsupported scalar_cast");
  }
}

template <class T>
bool is_zero_scalar(const T& x) {
  if constexpr (std::is_same_v<T, GaussRational>) return x.re == 0 && x.im == 0;
  else return x == T(0);
}

template <class T>
double scalar_abs(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) return std::abs(to_double(x));
  else if constexpr (std::is_same_v<T, GaussRational>) return std::abs(scalar_cast<std::complex<double>>(x));
  else return std::abs(x);
}

/// True when the literal carries a decimal point or exponent (float input).
inline bool is_decimal_literal(std::string_view s) {
  return s.find_first_of(".eE") != std::string_view::npos;
}

namespace detail {
// GMP reads a leading 0 as an octal prefix
inline Integer decimal_integer(std::string_view digits) {
  bool neg = !digits.empty() && digits[0] == '-';
  if (neg) digits.remove_prefix(1);
  const auto nz = digits.find_first_not_of('0');
  Integer v(nz == std::string_view::npos ? std::string("0") : std::string(digits.substr(nz)));
  return neg ? Integer(-v) : v;
}
}  // namespace detail

/// Parses "p/q", integers, and decimal literals such as "-0.25" or "1.5e-3"
/// into an exact rational (decimals are converted digit by digit, not via double).
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorCode::parse_error, "empty number");
  auto slash = s.find('/');
  auto valid_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '+' || t[0] == '-')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto make_int = [&](std::string_view t) {
    if (!valid_int(t)) fail(ErrorCode::parse_error, "malformed integer '" + std::string(t) + "'");
    if (t[0] == '+') t.remove_prefix(1);
    return detail::decimal_integer(t);
  };
  if (slash != std::string::npos) {
    Integer p = make_int(std::string_view(s).substr(0, slash));
    Integer q = make_int(std::string_view(s).substr(slash + 1));
    if (q == 0) fail(ErrorCode::parse_error, "zero denominator in '" + s + "'");
    return Rational(p, q);
  }
  if (!is_decimal_literal(s)) return Rational(make_int(s));

  std::string mantissa = s;
  long exponent = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mantissa = s.substr(0, epos);
    std::string_view es = std::string_view(s).substr(epos + 1);
    if (!valid_int(es)) fail(ErrorCode::parse_error, "malformed exponent in '" + s + "'");
    if (es[0] == '+') es.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(es.data(), es.data() + es.size(), exponent);
    if (ec != std::errc()) fail(ErrorCode::parse_error, "exponent out of range in '" + s + "'");
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  auto dot = mantissa.find('.');
  std::string digits = mantissa;
  if (dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
  }
  if (digits.empty() || !valid_int(digits)) fail(ErrorCode::parse_error, "malformed decimal '" + s + "'");
  Rational value{detail::decimal_integer(digits)};
  Rational ten{10};
  Rational scale{1};
  for (long k = 0; k < std::labs(exponent); ++k) scale *= ten;
  value = exponent >= 0 ? value * scale : value / scale;
  return negative ? Rational(-value) : value;
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Fixed 15-significant-digit rendering used in all reports.
inline std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

/// Shortest string that parses back to the same double.
inline std::string format_double_roundtrip(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, ptr);
  if (!is_decimal_literal(s) && s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

}  // namespace tenseig
