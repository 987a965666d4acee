#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tenseig/error.hpp"
#include "tenseig/rational.hpp"

namespace tenseig {

/// Exponent vector of a monomial x_1^{e_1} ... x_n^{e_n}.
/// Ordered graded-lexicographically: lower total degree first, then larger
/// leading exponents first, so x1^2 precedes x1*x2 precedes x2^2.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
    for (int k : e_)
      if (k < 0) fail(ErrorCode::invalid_argument, "negative exponent");
  }
  MultiIndex(std::initializer_list<int> exponents) : MultiIndex(std::vector<int>(exponents)) {}

  static MultiIndex unit(int n, int k) {
    std::vector<int> e(n, 0);
    e[k] = 1;
    return MultiIndex(std::move(e));
  }

  int size() const { return static_cast<int>(e_.size()); }
  int operator[](int k) const { return e_[k]; }
  int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
  const std::vector<int>& exponents() const { return e_; }

  MultiIndex operator+(const MultiIndex& o) const {
    if (o.size() != size()) fail(ErrorCode::dimension_mismatch, "multi-index length");
    std::vector<int> r(e_);
    for (int k = 0; k < size(); ++k) r[k] += o.e_[k];
    return MultiIndex(std::move(r));
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t k = 0; k < std::min(a.e_.size(), b.e_.size()); ++k)
      if (a.e_[k] != b.e_[k]) return b.e_[k] <=> a.e_[k];
    return a.e_.size() <=> b.e_.size();
  }

 private:
  std::vector<int> e_;
};

/// All exponent vectors of length n summing to d, in graded-lex order.
inline std::vector<MultiIndex> monomials_of_degree(int n, int d) {
  std::vector<MultiIndex> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      e[pos] = left;
      out.emplace_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  if (n > 0) rec(rec, 0, d);
  return out;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

template <class U>
U integer_power(const U& x, int k) {
  U r = U(1);
  U b = x;
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

/// Sparse multivariate polynomial in n variables; zero coefficients are never stored.
template <class T>
class MPoly {
 public:
  using Terms = std::map<MultiIndex, T>;

  MPoly() = default;
  explicit MPoly(int n) : n_(n) {}

  static MPoly constant(int n, const T& c) {
    MPoly p(n);
    p.add_term(MultiIndex(std::vector<int>(n, 0)), c);
    return p;
  }
  static MPoly variable(int n, int k) {
    MPoly p(n);
    p.add_term(MultiIndex::unit(n, k), T(1));
    return p;
  }

  int nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  T coefficient(const MultiIndex& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T(0) : it->second;
  }

  void add_term(const MultiIndex& e, const T& c) {
    if (e.size() != n_) fail(ErrorCode::dimension_mismatch, "monomial length differs from variable count");
    if (is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  /// -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
    return d;
  }

  bool is_homogeneous(int d) const {
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
  }

  MPoly derivative(int k) const {
    MPoly r(n_);
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0) continue;
      std::vector<int> f = e.exponents();
      f[k] -= 1;
      r.add_term(MultiIndex(std::move(f)), c * T(e[k]));
    }
    return r;
  }

  template <class U>
  U evaluate(std::span<const U> x) const {
    if (static_cast<int>(x.size()) != n_) fail(ErrorCode::dimension_mismatch, "point dimension differs from variable count");
    U acc = U(0);
    for (const auto& [e, c] : terms_) {
      U term = scalar_cast<U>(c);
      for (int k = 0; k < n_; ++k)
        if (e[k] > 0) term *= integer_power(x[k], e[k]);
      acc += term;
    }
    return acc;
  }

  MPoly& operator+=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, T(0) - c);
    return *this;
  }
  MPoly& operator*=(const T& s) {
    if (is_zero_scalar(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const T& s) { return a *= s; }
  friend MPoly operator*(const T& s, MPoly a) { return a *= s; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_compatible(b);
    MPoly r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  template <class U>
  MPoly<U> cast() const {
    MPoly<U> r(n_);
    for (const auto& [e, c] : terms_) r.add_term(e, scalar_cast<U>(c));
    return r;
  }

  /// Substitutes x = A y, A given row-major as n x n; the result is a polynomial in y.
  template <class Matrix>
  MPoly linear_substitute(const Matrix& A) const {
    std::vector<MPoly> xs;
    for (int i = 0; i < n_; ++i) {
      MPoly row(n_);
      for (int j = 0; j < n_; ++j) row.add_term(MultiIndex::unit(n_, j), T(A(i, j)));
      xs.push_back(std::move(row));
    }
    MPoly r(n_);
    for (const auto& [e, c] : terms_) {
      MPoly term = constant(n_, c);
      for (int k = 0; k < n_; ++k)
        for (int p = 0; p < e[k]; ++p) term = term * xs[k];
      r += term;
    }
    return r;
  }

  double coefficient_norm() const {
    double s = 0;
    for (const auto& [e, c] : terms_) {
      double a = scalar_abs(c);
      s += a * a;
    }
    return std::sqrt(s);
  }

 private:
  void check_compatible(const MPoly& o) const {
    if (o.n_ != n_) fail(ErrorCode::dimension_mismatch, "polynomials in different numbers of variables");
  }

  int n_ = 0;
  Terms terms_;
};

}  // namespace tenseig
