#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "tenseig/error.hpp"
#include "tenseig/mpoly.hpp"
#include "tenseig/rational.hpp"

namespace tenseig {

enum class FieldTag { rational_real, float_real, float_complex };

template <class T>
constexpr FieldTag field_tag_of() {
  if constexpr (std::is_same_v<T, Rational>) return FieldTag::rational_real;
  else if constexpr (std::is_same_v<T, double>) return FieldTag::float_real;
  else return FieldTag::float_complex;
}

inline const char* to_string(FieldTag f) {
  switch (f) {
    case FieldTag::rational_real: return "rational-real";
    case FieldTag::float_real: return "float-real";
    case FieldTag::float_complex: return "float-complex";
  }
  return "?";
}

template <class U>
using Vec = std::vector<U>;
template <class U>
using Mat = std::vector<std::vector<U>>;  // row-major, Mat[i][k]

/// Scalar homogeneous polynomial q of degree d >= 2 in n variables.
template <class T>
class Form {
 public:
  Form(int n, int degree, MPoly<T> poly) : n_(n), degree_(degree), poly_(std::move(poly)) {
    if (n < 1) fail(ErrorCode::invalid_argument, "form dimension must be >= 1");
    if (degree < 2) fail(ErrorCode::invalid_argument, "form degree must be >= 2");
    if (poly_.nvars() != n) fail(ErrorCode::dimension_mismatch, "form polynomial has wrong variable count");
    for (const auto& [e, c] : poly_.terms())
      if (e.degree() != degree)
        fail(ErrorCode::invalid_argument, "term exponents sum to " + std::to_string(e.degree()) +
                                              ", expected " + std::to_string(degree));
  }

  int dim() const { return n_; }
  int degree() const { return degree_; }
  const MPoly<T>& poly() const { return poly_; }
  T coefficient(const MultiIndex& e) const { return poly_.coefficient(e); }

  template <class U>
  U evaluate(std::span<const U> x) const { return poly_.template evaluate<U>(x); }
  template <class U>
  U evaluate(const Vec<U>& x) const { return evaluate(std::span<const U>(x)); }

  template <class U>
  Form<U> cast() const { return Form<U>(n_, degree_, poly_.template cast<U>()); }

  friend bool operator==(const Form&, const Form&) = default;

 private:
  int n_;
  int degree_;
  MPoly<T> poly_;
};

/// Homogeneous polynomial map Q: K^n -> K^n of degree m, stored as one sparse
/// polynomial per component (the structure coefficients alpha^j_{i1..in}).
template <class T>
class HomogeneousMap {
 public:
  HomogeneousMap(int n, int m, std::vector<MPoly<T>> components)
      : n_(n), m_(m), comps_(std::move(components)) {
    if (n < 1) fail(ErrorCode::invalid_argument, "map dimension must be >= 1");
    if (m < 1) fail(ErrorCode::invalid_argument, "map degree must be >= 1");
    if (static_cast<int>(comps_.size()) != n) fail(ErrorCode::dimension_mismatch, "map needs exactly n components");
    bool any = false;
    for (int j = 0; j < n; ++j) {
      if (comps_[j].nvars() != n) fail(ErrorCode::dimension_mismatch, "component has wrong variable count");
      for (const auto& [e, c] : comps_[j].terms())
        if (e.degree() != m)
          fail(ErrorCode::invalid_argument, "component " + std::to_string(j + 1) + " has a term of degree " +
                                                std::to_string(e.degree()) + ", expected " + std::to_string(m));
      any = any || !comps_[j].is_zero();
    }
    if (!any) fail(ErrorCode::invalid_argument, "homogeneous map must have a nonzero coefficient");
  }

  /// Entries are (component index j in 0..n-1, exponents, value).
  struct Entry {
    int j;
    MultiIndex exponents;
    T value;
  };
  static HomogeneousMap from_entries(int n, int m, const std::vector<Entry>& entries) {
    std::vector<MPoly<T>> comps(n, MPoly<T>(n));
    for (const auto& en : entries) {
      if (en.j < 0 || en.j >= n) fail(ErrorCode::invalid_argument, "component index out of range");
      comps[en.j].add_term(en.exponents, en.value);
    }
    return HomogeneousMap(n, m, std::move(comps));
  }

  int dim() const { return n_; }
  int degree() const { return m_; }
  FieldTag field() const { return field_tag_of<T>(); }
  const MPoly<T>& component(int j) const { return comps_[j]; }
  const std::vector<MPoly<T>>& components() const { return comps_; }
  T coefficient(int j, const MultiIndex& e) const { return comps_[j].coefficient(e); }

  /// n * binomial(n+m-1, n-1): dimension of the structure-coefficient space.
  std::uint64_t coefficient_space_dim() const { return n_ * binomial(n_ + m_ - 1, n_ - 1); }

  double coefficient_norm() const {
    double s = 0;
    for (const auto& c : comps_) s += c.coefficient_norm() * c.coefficient_norm();
    return std::sqrt(s);
  }

  template <class U>
  HomogeneousMap<U> cast() const {
    std::vector<MPoly<U>> c;
    for (const auto& p : comps_) c.push_back(p.template cast<U>());
    return HomogeneousMap<U>(n_, m_, std::move(c));
  }

  friend bool operator==(const HomogeneousMap&, const HomogeneousMap&) = default;

 private:
  int n_;
  int m_;
  std::vector<MPoly<T>> comps_;
};

/// General polynomial map P = P_0 + ... + P_m on K^n (not necessarily homogeneous).
template <class T>
class PolynomialMap {
 public:
  PolynomialMap(int n, std::vector<MPoly<T>> components) : n_(n), comps_(std::move(components)) {
    if (static_cast<int>(comps_.size()) != n) fail(ErrorCode::dimension_mismatch, "map needs exactly n components");
    for (const auto& c : comps_)
      if (c.nvars() != n) fail(ErrorCode::dimension_mismatch, "component has wrong variable count");
  }
  explicit PolynomialMap(const HomogeneousMap<T>& Q) : PolynomialMap(Q.dim(), Q.components()) {}

  int dim() const { return n_; }
  const MPoly<T>& component(int j) const { return comps_[j]; }
  const std::vector<MPoly<T>>& components() const { return comps_; }

  int degree() const {
    int d = -1;
    for (const auto& c : comps_) d = std::max(d, c.total_degree());
    return d;
  }

  /// Highest-degree homogeneous part P_m.
  HomogeneousMap<T> leading_form() const {
    int m = degree();
    if (m < 1) fail(ErrorCode::invalid_argument, "polynomial map has no nonconstant part");
    std::vector<MPoly<T>> lead(n_, MPoly<T>(n_));
    for (int j = 0; j < n_; ++j)
      for (const auto& [e, c] : comps_[j].terms())
        if (e.degree() == m) lead[j].add_term(e, c);
    return HomogeneousMap<T>(n_, m, std::move(lead));
  }

 private:
  int n_;
  std::vector<MPoly<T>> comps_;
};

namespace detail {
template <class U>
void check_len(std::size_t got, int n) {
  if (static_cast<int>(got) != n)
    fail(ErrorCode::dimension_mismatch, "vector of length " + std::to_string(got) + ", expected " + std::to_string(n));
}
}  // namespace detail

/// Q(x) = (sum alpha^j_e x^e)_j. Exact when both coefficients and x are rational.
template <class T, class U>
Vec<U> evaluate(const HomogeneousMap<T>& Q, std::span<const U> x) {
  detail::check_len<U>(x.size(), Q.dim());
  Vec<U> y(Q.dim());
  for (int j = 0; j < Q.dim(); ++j) y[j] = Q.component(j).template evaluate<U>(x);
  return y;
}
template <class T, class U>
Vec<U> evaluate(const HomogeneousMap<T>& Q, const Vec<U>& x) {
  return evaluate(Q, std::span<const U>(x));
}
template <class T, class U>
Vec<U> evaluate(const PolynomialMap<T>& P, const Vec<U>& x) {
  detail::check_len<U>(x.size(), P.dim());
  Vec<U> y(P.dim());
  for (int j = 0; j < P.dim(); ++j) y[j] = P.component(j).template evaluate<U>(std::span<const U>(x));
  return y;
}

/// Symbolic partial derivatives dQ_j/dx_k, each a polynomial of degree m-1.
template <class T>
std::vector<std::vector<MPoly<T>>> jacobian_polys(const std::vector<MPoly<T>>& comps, int n) {
  std::vector<std::vector<MPoly<T>>> J(comps.size());
  for (std::size_t j = 0; j < comps.size(); ++j)
    for (int k = 0; k < n; ++k) J[j].push_back(comps[j].derivative(k));
  return J;
}

/// DQ(x) as a row-major matrix [j][k] = dQ_j/dx_k (x).
template <class T, class U>
Mat<U> jacobian(const HomogeneousMap<T>& Q, const Vec<U>& x) {
  detail::check_len<U>(x.size(), Q.dim());
  const int n = Q.dim();
  Mat<U> J(n, Vec<U>(n, U(0)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      J[j][k] = Q.component(j).derivative(k).template evaluate<U>(std::span<const U>(x));
  return J;
}

/// Symmetric multilinear form with T(x,...,x) = Q(x), evaluated through the
/// polarization identity m! T(u_1..u_m) = sum_S (-1)^{m-|S|} Q(sum_{k in S} u_k).
template <class T, class U>
Vec<U> polarize_apply(const HomogeneousMap<T>& Q, const std::vector<Vec<U>>& args) {
  const int n = Q.dim();
  const int m = Q.degree();
  if (static_cast<int>(args.size()) != m)
    fail(ErrorCode::dimension_mismatch, "polarization needs exactly m = " + std::to_string(m) + " arguments");
  for (const auto& a : args) detail::check_len<U>(a.size(), n);
  if (m > 20) fail(ErrorCode::invalid_argument, "polarization degree too large");
  Vec<U> acc(n, U(0));
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    Vec<U> s(n, U(0));
    int bits = 0;
    for (int k = 0; k < m; ++k)
      if (mask & (1u << k)) {
        ++bits;
        for (int i = 0; i < n; ++i) s[i] += args[k][i];
      }
    Vec<U> v = evaluate(Q, s);
    bool negative = ((m - bits) % 2) != 0;
    for (int i = 0; i < n; ++i) acc[i] = negative ? U(acc[i] - v[i]) : U(acc[i] + v[i]);
  }
  U factorial = U(1);
  for (int k = 2; k <= m; ++k) factorial *= U(k);
  for (auto& a : acc) a /= factorial;
  return acc;
}

/// Unique Q of degree m with Dq(x)y = (m+1) <Q(x), y>, i.e. Q = grad(q) / (m+1).
template <class T>
HomogeneousMap<T> gradient_map(const Form<T>& q) {
  static_assert(!is_complex_v<T>, "gradient correspondence is real-only");
  const int n = q.dim();
  const int m = q.degree() - 1;
  std::vector<MPoly<T>> comps;
  for (int k = 0; k < n; ++k) comps.push_back(q.poly().derivative(k) * (T(1) / T(m + 1)));
  bool any = false;
  for (const auto& c : comps) any = any || !c.is_zero();
  if (!any) fail(ErrorCode::invalid_argument, "zero form has no gradient map");
  return HomogeneousMap<T>(n, m, std::move(comps));
}

struct GradientDiagnostics {
  bool is_gradient = false;
  bool is_traceless = false;
  bool is_harmonic_gradient() const { return is_gradient && is_traceless; }
};

namespace detail {
template <class T>
bool poly_negligible(const MPoly<T>& p, double scale) {
  if constexpr (is_exact_v<T>) {
    (void)scale;
    return p.is_zero();
  } else {
    return p.coefficient_norm() <= 1e-12 * std::max(1.0, scale);
  }
}
}  // namespace detail

/// Decides symmetry and tracelessness of DQ(x) as polynomial identities by
/// comparing coefficients of the expanded partial derivatives.
template <class T>
GradientDiagnostics gradient_diagnostics(const HomogeneousMap<T>& Q) {
  static_assert(!is_complex_v<T>, "gradient correspondence is real-only");
  const int n = Q.dim();
  auto J = jacobian_polys(Q.components(), n);
  const double scale = Q.coefficient_norm() * Q.degree();
  GradientDiagnostics d;
  d.is_gradient = true;
  for (int j = 0; j < n && d.is_gradient; ++j)
    for (int k = j + 1; k < n; ++k)
      if (!detail::poly_negligible(J[j][k] - J[k][j], scale)) {
        d.is_gradient = false;
        break;
      }
  MPoly<T> trace(n);
  for (int j = 0; j < n; ++j) trace += J[j][j];
  d.is_traceless = detail::poly_negligible(trace, scale);
  return d;
}

/// Inverse of gradient_map: q(x) = <Q(x), x>, so that Dq(x)y = (m+1)<Q(x), y>.
template <class T>
Form<T> potential(const HomogeneousMap<T>& Q) {
  if (!gradient_diagnostics(Q).is_gradient)
    fail(ErrorCode::not_a_gradient, "DQ(x) is not symmetric as a polynomial identity");
  const int n = Q.dim();
  MPoly<T> q(n);
  for (int j = 0; j < n; ++j) q += Q.component(j) * MPoly<T>::variable(n, j);
  return Form<T>(n, Q.degree() + 1, std::move(q));
}

/// Laplacian of a scalar form as a polynomial.
template <class T>
MPoly<T> laplacian(const Form<T>& q) {
  MPoly<T> r(q.dim());
  for (int k = 0; k < q.dim(); ++k) r += q.poly().derivative(k).derivative(k);
  return r;
}

/// Coordinate change Q'(y) = A^T Q(A y) for orthogonal A (row-major accessor A(i,j)).
template <class T, class Matrix>
HomogeneousMap<T> orthogonal_transform(const HomogeneousMap<T>& Q, const Matrix& A) {
  const int n = Q.dim();
  std::vector<MPoly<T>> sub;
  for (int j = 0; j < n; ++j) sub.push_back(Q.component(j).linear_substitute(A));
  std::vector<MPoly<T>> out(n, MPoly<T>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += sub[j] * T(A(j, i));
  return HomogeneousMap<T>(n, Q.degree(), std::move(out));
}

}  // namespace tenseig
