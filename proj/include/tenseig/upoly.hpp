#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tenseig/error.hpp"
#include "tenseig/rational.hpp"

namespace tenseig::upoly {

/// Univariate polynomial over an exact field (Rational or GaussRational),
/// coefficients stored constant term first and kept trimmed.
template <class F = Rational>
class UnivarPoly {
 public:
  UnivarPoly() = default;
  explicit UnivarPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  UnivarPoly(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }

  static UnivarPoly constant(const F& a) { return UnivarPoly(std::vector<F>{a}); }
  static UnivarPoly monomial(const F& a, int k) {
    std::vector<F> c(k + 1, F(0));
    c[k] = a;
    return UnivarPoly(std::move(c));
  }
  static UnivarPoly x() { return monomial(F(1), 1); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : F(0); }
  F leading() const { return is_zero() ? F(0) : c_.back(); }

  F operator()(const F& t) const {
    F acc = F(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  template <class U>
  U eval(const U& t) const {
    U acc = U(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + scalar_cast<U>(*it);
    return acc;
  }

  UnivarPoly derivative() const {
    std::vector<F> d;
    for (int k = 1; k < static_cast<int>(c_.size()); ++k) d.push_back(c_[k] * F(k));
    return UnivarPoly(std::move(d));
  }

  UnivarPoly monic() const {
    if (is_zero()) return *this;
    UnivarPoly r = *this;
    F lc = leading();
    for (auto& a : r.c_) a = a / lc;
    return r;
  }

  UnivarPoly& operator+=(const UnivarPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  UnivarPoly& operator-=(const UnivarPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  UnivarPoly& operator*=(const F& s) {
    for (auto& a : c_) a *= s;
    trim();
    return *this;
  }
  friend UnivarPoly operator+(UnivarPoly a, const UnivarPoly& b) { return a += b; }
  friend UnivarPoly operator-(UnivarPoly a, const UnivarPoly& b) { return a -= b; }
  friend UnivarPoly operator-(UnivarPoly a) { return a *= F(-1); }
  friend UnivarPoly operator*(UnivarPoly a, const F& s) { return a *= s; }
  friend UnivarPoly operator*(const F& s, UnivarPoly a) { return a *= s; }
  friend UnivarPoly operator*(const UnivarPoly& a, const UnivarPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UnivarPoly(std::move(r));
  }
  friend bool operator==(const UnivarPoly& a, const UnivarPoly& b) { return a.c_ == b.c_; }

  /// Polynomial composition p(q(t)).
  UnivarPoly compose(const UnivarPoly& q) const {
    UnivarPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
  }

  UnivarPoly pow(int k) const {
    UnivarPoly r = constant(F(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero_scalar(c_.back())) c_.pop_back();
  }
  std::vector<F> c_;
};

template <class F>
struct DivMod {
  UnivarPoly<F> quotient;
  UnivarPoly<F> remainder;
};

template <class F>
DivMod<F> divmod(const UnivarPoly<F>& a, const UnivarPoly<F>& b) {
  if (b.is_zero()) fail(ErrorCode::zero_polynomial, "division by the zero polynomial");
  std::vector<F> r = a.coeffs();
  const int db = b.degree();
  const F lb = b.leading();
  std::vector<F> q(std::max(0, a.degree() - db + 1), F(0));
  for (int k = a.degree(); k >= db; --k) {
    F f = r[k] / lb;
    if (is_zero_scalar(f)) continue;
    q[k - db] = f;
    for (int i = 0; i <= db; ++i) r[k - db + i] -= f * b.coeffs()[i];
  }
  r.resize(std::max(0, db));
  return {UnivarPoly<F>(std::move(q)), UnivarPoly<F>(std::move(r))};
}

/// Monic gcd; gcd(0, 0) is rejected.
template <class F>
UnivarPoly<F> poly_gcd(UnivarPoly<F> a, UnivarPoly<F> b) {
  if (a.is_zero() && b.is_zero()) fail(ErrorCode::zero_polynomial, "gcd of two zero polynomials");
  while (!b.is_zero()) {
    auto r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class F>
struct ExtendedGcd {
  UnivarPoly<F> gcd;  // monic
  UnivarPoly<F> u;
  UnivarPoly<F> v;    // u*a + v*b == gcd
};

template <class F>
ExtendedGcd<F> extended_gcd(const UnivarPoly<F>& a, const UnivarPoly<F>& b) {
  if (a.is_zero() && b.is_zero()) fail(ErrorCode::zero_polynomial, "gcd of two zero polynomials");
  UnivarPoly<F> r0 = a, r1 = b;
  UnivarPoly<F> s0 = UnivarPoly<F>::constant(F(1)), s1;
  UnivarPoly<F> t0, t1 = UnivarPoly<F>::constant(F(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  F lc = r0.leading();
  F inv = F(1) / lc;
  return {r0 * inv, s0 * inv, t0 * inv};
}

/// p / gcd(p, p'), made monic.
template <class F>
UnivarPoly<F> squarefree_part(const UnivarPoly<F>& p) {
  if (p.is_zero()) fail(ErrorCode::zero_polynomial, "squarefree part of zero");
  if (p.degree() == 0) return UnivarPoly<F>::constant(F(1));
  auto g = poly_gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

/// Yun's algorithm: returns f_1, f_2, ... with p = lc * prod f_i^i, each f_i
/// squarefree and pairwise coprime (some f_i may be constant 1).
template <class F>
std::vector<UnivarPoly<F>> squarefree_factorization(const UnivarPoly<F>& p) {
  if (p.is_zero()) fail(ErrorCode::zero_polynomial, "factorization of zero");
  std::vector<UnivarPoly<F>> out;
  if (p.degree() == 0) return out;
  auto a = p.monic();
  auto b = a.derivative();
  auto c = poly_gcd(a, b);
  auto w = divmod(a, c).quotient;
  auto y = divmod(b, c).quotient;
  auto z = y - w.derivative();
  while (w.degree() > 0) {
    auto g = poly_gcd(w, z);
    out.push_back(g);
    w = divmod(w, g).quotient;
    y = divmod(z, g).quotient;
    z = y - w.derivative();
  }
  return out;
}

/// Multiplies by a positive rational so that coefficients are coprime integers.
/// Positive scaling preserves every sign evaluation.
inline UnivarPoly<Rational> primitive_part(const UnivarPoly<Rational>& p) {
  if (p.is_zero()) return p;
  Integer l = 1;
  for (const auto& a : p.coeffs()) {
    Integer d = boost::multiprecision::denominator(a);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  Integer g = 0;
  for (const auto& a : p.coeffs()) {
    Integer num = boost::multiprecision::numerator(a) * (l / boost::multiprecision::denominator(a));
    g = boost::multiprecision::gcd(g, abs(num));
  }
  return p * Rational(l, g);
}

inline int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

inline std::string to_string(const UnivarPoly<Rational>& p, std::string_view var = "t") {
  if (p.is_zero()) return "0";
  std::string s;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& a = p.coeffs()[k];
    if (a == 0) continue;
    std::string num = tenseig::to_string(a < 0 ? Rational(-a) : a);
    if (!s.empty()) s += a < 0 ? "-" : "+";
    else if (a < 0) s += "-";
    s += num;
    if (k >= 1) s += "*" + std::string(var);
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

/// Parses strings like "-1*t^3+3*t^2-3*t-1", "1/2*t^2 - 3", "t^4+t" with
/// rational or decimal coefficients. Any single-letter variable name is accepted.
inline UnivarPoly<Rational> parse_poly(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorCode::parse_error, "empty polynomial");
  std::vector<Rational> coeffs;
  char var = 0;
  std::size_t pos = 0;
  auto add = [&](int k, const Rational& a) {
    if (static_cast<int>(coeffs.size()) <= k) coeffs.resize(k + 1, Rational(0));
    coeffs[k] += a;
  };
  while (pos < s.size()) {
    int sgn = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sgn = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail(ErrorCode::parse_error, "expected '+' or '-' at position " + std::to_string(pos));
    }
    std::size_t end = pos;
    while (end < s.size()) {
      if ((s[end] == '+' || s[end] == '-') && end > pos) {
        // sign inside a decimal exponent such as 1e-3
        bool exponent_sign = (s[end - 1] == 'e' || s[end - 1] == 'E') && end - 1 > pos &&
                             std::isdigit(static_cast<unsigned char>(s[end - 2]));
        if (!exponent_sign) break;
      }
      ++end;
    }
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) fail(ErrorCode::parse_error, "empty term in '" + s + "'");
    pos = end;

    std::size_t vpos = std::string::npos;
    for (std::size_t i = 0; i < term.size(); ++i) {
      char c = term[i];
      if (std::isalpha(static_cast<unsigned char>(c)) && !((c == 'e' || c == 'E') && i > 0 && i + 1 < term.size() &&
                                                           std::isdigit(static_cast<unsigned char>(term[i - 1])))) {
        vpos = i;
        break;
      }
    }
    Rational a{1};
    int k = 0;
    if (vpos == std::string::npos) {
      a = parse_rational(term);
    } else {
      if (var == 0) var = term[vpos];
      if (term[vpos] != var) fail(ErrorCode::parse_error, "more than one variable name in '" + s + "'");
      std::string cpart = term.substr(0, vpos);
      if (!cpart.empty()) {
        if (cpart.back() != '*') fail(ErrorCode::parse_error, "expected '*' before variable in term '" + term + "'");
        cpart.pop_back();
        a = parse_rational(cpart);
      }
      std::string rest = term.substr(vpos + 1);
      if (rest.empty()) k = 1;
      else if (rest[0] == '^' && rest.size() > 1 &&
               std::all_of(rest.begin() + 1, rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        k = std::stoi(rest.substr(1));
      else
        fail(ErrorCode::parse_error, "malformed power in term '" + term + "'");
    }
    add(k, sgn < 0 ? Rational(-a) : a);
  }
  return UnivarPoly<Rational>(std::move(coeffs));
}

}  // namespace tenseig::upoly
