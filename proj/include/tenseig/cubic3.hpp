#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tenseig/binary_form.hpp"
#include "tenseig/eigenlines.hpp"
#include "tenseig/sphere.hpp"
#include "tenseig/sturm.hpp"
#include "tenseig/tensor_core.hpp"

namespace tenseig::cubic3 {

using upoly::Poly;

/// Harmonic cubic in adapted coordinates: c1 minimizes q on the sphere and
/// c2, c3 diagonalize L(c1) = DQ(c1)/2 on the complement of c1.
struct CubicCanonicalForm {
  Rational alpha2, alpha3, beta2, beta3;
  Eigen::Matrix3d basis = Eigen::Matrix3d::Identity();  // columns c1, c2, c3
  double scale = 1.0;         // parameters = scale * (parameters of the rotated input map)
  bool exact = true;
  bool near_degenerate = false;

  static CubicCanonicalForm from_parameters(Rational a2, Rational a3, Rational b2, Rational b3) {
    CubicCanonicalForm f;
    f.alpha2 = std::move(a2);
    f.alpha3 = std::move(a3);
    f.beta2 = std::move(b2);
    f.beta3 = std::move(b3);
    return f;
  }
};

enum class CubicCase { axial, axial_quadric, semi_axial, generic_equal_alphas, generic, degenerate };
enum class SemiAxialCase { none, equal_alphas, three_alpha_degenerate, three_alpha_quadric, general };

inline const char* to_string(CubicCase c) {
  switch (c) {
    case CubicCase::axial: return "Axial";
    case CubicCase::axial_quadric: return "AxialQuadric";
    case CubicCase::semi_axial: return "SemiAxial";
    case CubicCase::generic_equal_alphas: return "GenericEqualAlphas";
    case CubicCase::generic: return "Generic";
    case CubicCase::degenerate: return "Degenerate";
  }
  return "?";
}

inline const char* to_string(SemiAxialCase c) {
  switch (c) {
    case SemiAxialCase::none: return "None";
    case SemiAxialCase::equal_alphas: return "EqualAlphas";
    case SemiAxialCase::three_alpha_degenerate: return "ThreeAlphaDegenerate";
    case SemiAxialCase::three_alpha_quadric: return "ThreeAlphaQuadric";
    case SemiAxialCase::general: return "General";
  }
  return "?";
}

struct CubicClassification {
  CubicCase tag = CubicCase::generic;
  SemiAxialCase subcase = SemiAxialCase::none;
  bool swapped = false;                    // beta3 = 0 handled by exchanging x2 and x3
  std::optional<int> expected_lines;       // real lines predicted by the case analysis
  std::optional<Form<Rational>> quadric;   // infinite family, canonical coordinates
  bool near_degenerate = false;
  bool infinite() const { return quadric.has_value(); }
};

/// Q(x) in canonical coordinates:
///   Q1 = -(a2+a3) x1^2 + a2 x2^2 + a3 x3^2
///   Q2 = 2 a2 x1 x2 + b2 x2^2 + 2 b3 x2 x3 - b2 x3^2
///   Q3 = 2 a3 x1 x3 + b3 x2^2 - 2 b2 x2 x3 - b3 x3^2
inline HomogeneousMap<Rational> build_map(const CubicCanonicalForm& f) {
  const Rational &a2 = f.alpha2, &a3 = f.alpha3, &b2 = f.beta2, &b3 = f.beta3;
  using E = HomogeneousMap<Rational>::Entry;
  return HomogeneousMap<Rational>::from_entries(
      3, 2,
      {E{0, {2, 0, 0}, -(a2 + a3)}, E{0, {0, 2, 0}, a2}, E{0, {0, 0, 2}, a3},
       E{1, {1, 1, 0}, 2 * a2}, E{1, {0, 2, 0}, b2}, E{1, {0, 1, 1}, 2 * b3}, E{1, {0, 0, 2}, -b2},
       E{2, {1, 0, 1}, 2 * a3}, E{2, {0, 2, 0}, b3}, E{2, {0, 1, 1}, -2 * b2}, E{2, {0, 0, 2}, -b3}});
}

/// 2x2 minors of the matrix [Q(x) | x]; common zeros are the eigenlines.
struct Minors {
  MPoly<Rational> m23;  // Q2 x3 - Q3 x2
  MPoly<Rational> m12;  // Q1 x2 - Q2 x1
  MPoly<Rational> m13;  // Q3 x1 - Q1 x3
  MPoly<Rational> e;    // x2^2 x3 m13 - x2 x3^2 m12, a polynomial in v = x1 x2 x3, x2, x3
};

inline Minors minors(const HomogeneousMap<Rational>& Q) {
  const auto x1 = MPoly<Rational>::variable(3, 0), x2 = MPoly<Rational>::variable(3, 1),
             x3 = MPoly<Rational>::variable(3, 2);
  const auto &Q1 = Q.component(0), &Q2 = Q.component(1), &Q3 = Q.component(2);
  Minors m{Q2 * x3 - Q3 * x2, Q1 * x2 - Q2 * x1, Q3 * x1 - Q1 * x3, MPoly<Rational>(3)};
  m.e = x2 * x2 * x3 * m.m13 - x2 * x3 * x3 * m.m12;
  return m;
}

namespace detail {

inline Poly substitute(const MPoly<Rational>& p, const std::array<Poly, 3>& xs) {
  Poly acc;
  for (const auto& [e, c] : p.terms()) {
    Poly t = Poly::constant(c);
    for (int k = 0; k < 3; ++k)
      if (e[k] > 0) t = t * xs[k].pow(e[k]);
    acc += t;
  }
  return acc;
}

inline MPoly<Rational> divide_by_variable(const MPoly<Rational>& p, int k) {
  MPoly<Rational> out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[k] < 1) fail(ErrorCode::invalid_argument, "polynomial is not divisible by the variable");
    auto ex = e.exponents();
    --ex[k];
    out.add_term(MultiIndex(ex), c);
  }
  return out;
}

inline MPoly<Rational> restrict_zero(const MPoly<Rational>& p, int k) {
  MPoly<Rational> out(p.nvars());
  for (const auto& [e, c] : p.terms())
    if (e[k] == 0) out.add_term(e, c);
  return out;
}

/// A ternary form with no x_drop as a binary form in (x_a, x_b).
inline Form<Rational> as_binary(const MPoly<Rational>& p, int a, int b) {
  MPoly<Rational> out(2);
  int deg = 0;
  for (const auto& [e, c] : p.terms()) {
    out.add_term(MultiIndex({e[a], e[b]}), c);
    deg = e[a] + e[b];
  }
  return Form<Rational>(2, deg, std::move(out));
}

/// Coefficients of E(v, 1, t) as a polynomial in v: x1^a x2^b x3^c = v^a x2^(b-a) x3^(c-a).
inline std::vector<Poly> v_coefficients(const MPoly<Rational>& E) {
  std::vector<Poly> out;
  for (const auto& [e, c] : E.terms()) {
    const int a = e[0];
    if (e[1] < a || e[2] < a) fail(ErrorCode::invalid_argument, "term is not a polynomial in x1 x2 x3");
    if (static_cast<int>(out.size()) <= a) out.resize(a + 1);
    out[a] += Poly::monomial(c, e[2] - a);
  }
  return out;
}

inline Rational x1x2x3_coefficient(const MPoly<Rational>& p) { return p.coefficient(MultiIndex({1, 1, 1})); }

inline std::vector<double> real_quadratic_roots(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {-c / b};
  }
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return {};
  const double s = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0 ? s : -s));
  if (q == 0.0) return {0.0};
  return {q / a, c / q};
}

inline std::vector<VecXr> binary_lines(const Form<Rational>& f, int a, int b) {
  std::vector<VecXr> out;
  for (const auto& r : upoly::solve_binary_form(f)) {
    if (!r.real) continue;
    VecXr y = VecXr::Zero(3);
    y[a] = r.x1.real();
    y[b] = r.x2.real();
    out.push_back(y);
  }
  return out;
}

inline CubicCanonicalForm swapped(const CubicCanonicalForm& f) {
  CubicCanonicalForm g = f;
  g.alpha2 = f.alpha3;
  g.alpha3 = f.alpha2;
  g.beta2 = -f.beta3;
  g.beta3 = -f.beta2;
  return g;
}

inline Form<Rational> swap_23(const Form<Rational>& q) {
  MPoly<Rational> out(3);
  for (const auto& [e, c] : q.poly().terms()) out.add_term(MultiIndex({e[0], e[2], e[1]}), c);
  return Form<Rational>(3, q.degree(), std::move(out));
}

inline Form<Rational> normalized_quadric(const MPoly<Rational>& p, int x2_coefficient) {
  const Rational c = p.coefficient(MultiIndex({0, 2, 0}));
  if (c == 0) fail(ErrorCode::invalid_argument, "quadric has no x2^2 term");
  return Form<Rational>(3, 2, p * (Rational(x2_coefficient) / c));
}

struct ZeroTest {
  bool exact;
  double tol;
  double scale;
  bool* near;
  bool operator()(const Rational& r) const {
    if (exact) return r == 0;
    const double a = std::abs(to_double(r));
    if (a < tol * scale) return true;
    if (a < 1e-6 * scale) *near = true;
    return false;
  }
};

inline double parameter_scale(const CubicCanonicalForm& f) {
  return std::max({1e-300, std::abs(to_double(f.alpha2)), std::abs(to_double(f.alpha3)), std::abs(to_double(f.beta2)),
                   std::abs(to_double(f.beta3))});
}

}  // namespace detail

/// v(t) = x1 x2 x3 on the chart x2 = 1, x3 = t, solved from the minor m23.
inline Poly v_polynomial(const CubicCanonicalForm& f) {
  const auto m = minors(build_map(f));
  const Rational d2 = detail::x1x2x3_coefficient(m.m23);
  if (d2 == 0) fail(ErrorCode::precondition_violated, "alpha2 = alpha3: v is not determined by m23");
  MPoly<Rational> rest = m.m23;
  rest.add_term(MultiIndex({1, 1, 1}), -d2);
  for (const auto& [e, c] : rest.terms())
    if (e[0] != 0) fail(ErrorCode::invalid_argument, "m23 is not linear in x1 x2 x3");
  return detail::substitute(rest, {Poly{}, Poly::constant(Rational(1)), Poly::x()}) * (Rational(-1) / d2);
}

/// rho by elimination: E(v(t), 1, t). Valid for any alpha2 != alpha3.
inline Poly rho_by_elimination(const CubicCanonicalForm& f) {
  const auto ea = detail::v_coefficients(minors(build_map(f)).e);
  const Poly v = v_polynomial(f);
  Poly rho;
  Poly vp = Poly::constant(Rational(1));
  for (const auto& c : ea) {
    rho += c * vp;
    vp = vp * v;
  }
  return rho;
}

namespace detail {
inline void check_rho_preconditions(const CubicCanonicalForm& f) {
  if (2 * (f.alpha2 - f.alpha3) != 1) fail(ErrorCode::precondition_violated, "rho needs 2(alpha2 - alpha3) = 1");
  if (f.alpha2 <= Rational(3, 8)) fail(ErrorCode::precondition_violated, "rho needs alpha2 > 3/8");
  if (f.beta2 == 0 || f.beta3 == 0) fail(ErrorCode::precondition_violated, "rho needs beta2 beta3 != 0");
}
}  // namespace detail

/// Degree-6 polynomial whose real roots t = x3/x2 give the eigenlines off Rc1.
inline Poly rho_polynomial(const CubicCanonicalForm& f) {
  detail::check_rho_preconditions(f);
  return rho_by_elimination(f);
}

/// Closed-form coefficients of rho for the normalized form 2(alpha2 - alpha3) = 1.
inline Poly rho_polynomial_closed_form(const CubicCanonicalForm& f) {
  detail::check_rho_preconditions(f);
  const Rational &a = f.alpha2, &b2 = f.beta2, &b3 = f.beta3;
  const Rational p = b2 * b2, q = b3 * b3, r = b2 * b3;
  return Poly{b3 * b3 * (8 * a - 1),
              8 * r * (1 - 6 * a),
              72 * a * p - 48 * a * q - 15 * p + 10 * q - 2 * a,
              40 * r * (4 * a - 1),
              -48 * a * p + 72 * a * q + 14 * p - 21 * q - 2 * a + 1,
              16 * r * (1 - 3 * a),
              p * (8 * a - 3)};
}

/// mu(t) = -t^3 + 3 g t^2 + 3 t - g: the minor m23 at x2 = 1, x3 = t divided by beta2,
/// for alpha2 = alpha3 and g = beta3 / beta2.
inline Poly mu_polynomial(const Rational& g) { return Poly{-g, Rational(3), 3 * g, Rational(-1)}; }

/// Tag and payload. Exact zero tests for exact forms, |.| < zero_tol * scale otherwise.
inline CubicClassification classify(const CubicCanonicalForm& f, double zero_tol = 1e-10) {
  CubicClassification c;
  detail::ZeroTest zero{f.exact, zero_tol, detail::parameter_scale(f), &c.near_degenerate};
  c.near_degenerate = f.near_degenerate;
  const bool z2 = zero(f.beta2), z3 = zero(f.beta3), eq = zero(f.alpha2 - f.alpha3);
  const Rational &a2 = f.alpha2, &a3 = f.alpha3;
  if (z2 && z3) {
    if (eq) {
      c.tag = CubicCase::axial_quadric;
      CubicCanonicalForm g = CubicCanonicalForm::from_parameters(a2, a2, 0, 0);
      c.quadric = detail::normalized_quadric(detail::divide_by_variable(minors(build_map(g)).m12, 1), 1);
    } else {
      c.tag = CubicCase::axial;
      if (!zero(a2) && !zero(a3) && !zero(a2 + 3 * a3) && !zero(3 * a2 + a3)) c.expected_lines = 5;
    }
    return c;
  }
  if (z2 || z3) {
    c.tag = CubicCase::semi_axial;
    c.swapped = z3;
    CubicCanonicalForm g = c.swapped ? detail::swapped(f) : f;
    g.beta2 = 0;
    if (zero(g.alpha2 - g.alpha3)) {
      c.subcase = SemiAxialCase::equal_alphas;
      if (!zero(g.alpha2)) c.expected_lines = 7;
    } else if (zero(3 * g.alpha2 + g.alpha3)) {
      if (zero(4 * g.alpha2 * g.alpha2 - g.beta3 * g.beta3)) {
        c.subcase = SemiAxialCase::three_alpha_quadric;
        g.alpha3 = -3 * g.alpha2;
        g.beta3 = g.beta3 > 0 ? 2 * abs(g.alpha2) : -2 * abs(g.alpha2);
        auto q = detail::normalized_quadric(detail::divide_by_variable(minors(build_map(g)).m23, 1), -1);
        c.quadric = c.swapped ? detail::swap_23(q) : q;
      } else {
        c.subcase = SemiAxialCase::three_alpha_degenerate;
        c.expected_lines = 5;
      }
    } else {
      c.subcase = SemiAxialCase::general;
    }
    return c;
  }
  if (eq) {
    c.tag = CubicCase::generic_equal_alphas;
    if (!zero(a2)) c.expected_lines = 7;
    return c;
  }
  c.tag = CubicCase::generic;
  const Poly rho = rho_by_elimination(f);
  if (upoly::poly_gcd(rho, rho.derivative()).degree() > 0) c.tag = CubicCase::degenerate;
  if (!f.exact) {
    const auto roots = upoly::complex_roots(rho);
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j)
        if (std::abs(roots[i] - roots[j]) < 1e-6 * (1.0 + std::abs(roots[i]))) c.near_degenerate = true;
  }
  return c;
}

namespace detail {

/// Dedupes, verifies against the canonical map and maps lines back to the input coordinates.
inline std::vector<EigenLine> finish_lines(const CubicCanonicalForm& f, std::vector<VecXr> ys, double tol = 1e-9) {
  const auto Q = build_map(f);
  const double scale = std::max(1.0, Q.coefficient_norm());
  CompiledPolys<double> Qd(Q.components(), 3);
  std::vector<VecXr> kept;
  for (auto y : ys) {
    if (!y.allFinite() || y.norm() == 0.0) continue;
    y /= y.norm();
    bool dup = false;
    for (const auto& k : kept) dup = dup || (y - y.dot(k) * k).norm() < 1e-9;
    if (!dup) kept.push_back(y);
  }
  std::vector<EigenLine> out;
  for (const auto& y : kept) {
    const VecXr qy = Qd.value(y);
    const double lambda = qy.dot(y);
    if ((qy - lambda * y).norm() > tol * scale)
      fail(ErrorCode::residual_too_large, "reconstructed line is not an eigenline of the canonical map");
    const VecXr x = f.basis * y;
    Vec<cplx> rep(3);
    for (int i = 0; i < 3; ++i) rep[i] = x[i];
    EigenLine l = normalize_eigenvalue(rep, lambda / f.scale, 2, FieldTag::float_real, scale / f.scale);
    l.residual = (qy - lambda * y).norm();
    l.simple = true;
    out.push_back(std::move(l));
  }
  return out;
}

inline VecXr unit_c1() {
  VecXr y = VecXr::Zero(3);
  y[0] = 1.0;
  return y;
}

inline std::vector<VecXr> roots_to_points(const Poly& p, const std::function<VecXr(double)>& point) {
  std::vector<VecXr> out;
  if (p.is_zero()) return out;
  for (double t : upoly::real_roots(p, std::nullopt, Rational(1, 1ull << 60)).refined) out.push_back(point(t));
  return out;
}

inline double eval_poly(const Poly& p, double t) {
  double acc = 0.0;
  for (int k = p.degree(); k >= 0; --k) acc = acc * t + to_double(p.coeff(k));
  return acc;
}

}  // namespace detail

/// Lines for the Generic (and Degenerate) tag from the real roots of rho:
/// x2 = 1, x3 = t, x1 = v(t) / t, together with Rc1.
inline std::vector<EigenLine> reconstruct_eigenlines(const CubicCanonicalForm& f, const upoly::RootReport& roots) {
  const Poly v = v_polynomial(f);
  std::vector<VecXr> ys{detail::unit_c1()};
  for (double t : roots.refined) {
    if (t == 0.0) fail(ErrorCode::precondition_violated, "rho has a root at t = 0");
    VecXr y(3);
    y << detail::eval_poly(v, t) / t, 1.0, t;
    ys.push_back(y);
  }
  return detail::finish_lines(f, std::move(ys));
}

struct SpecialSolution {
  std::vector<EigenLine> lines;          // isolated lines, input coordinates
  std::optional<Form<Rational>> quadric; // family of eigenlines, canonical coordinates
};

/// Explicit reductions for every tag except Generic.
inline SpecialSolution solve_special_case(const CubicCanonicalForm& f, const CubicClassification& c) {
  if (c.tag == CubicCase::generic || c.tag == CubicCase::degenerate)
    fail(ErrorCode::invalid_argument, "use rho_polynomial and reconstruct_eigenlines for the generic case");
  SpecialSolution out;
  out.quadric = c.quadric;
  std::vector<VecXr> ys{detail::unit_c1()};
  auto add = [&](const std::vector<VecXr>& more) { ys.insert(ys.end(), more.begin(), more.end()); };

  if (c.tag == CubicCase::axial || c.tag == CubicCase::axial_quadric) {
    CubicCanonicalForm g = f;
    g.beta2 = g.beta3 = 0;
    if (c.tag == CubicCase::axial_quadric) g.alpha3 = g.alpha2;
    if (c.tag == CubicCase::axial) {
      const auto m = minors(build_map(g));
      using namespace detail;
      add(binary_lines(as_binary(divide_by_variable(restrict_zero(m.m12, 0), 1), 1, 2), 1, 2));  // x1 = 0
      add(binary_lines(as_binary(divide_by_variable(restrict_zero(m.m13, 1), 2), 0, 2), 0, 2));  // x2 = 0
      add(binary_lines(as_binary(divide_by_variable(restrict_zero(m.m12, 2), 1), 0, 1), 0, 1));  // x3 = 0
    }
    out.lines = detail::finish_lines(f, std::move(ys));
    return out;
  }

  if (c.tag == CubicCase::generic_equal_alphas) {
    CubicCanonicalForm g = f;
    g.alpha3 = g.alpha2;
    const auto m = minors(build_map(g));
    const Poly mu = detail::substitute(m.m23, {Poly{}, Poly::constant(Rational(1)), Poly::x()});
    const auto ea = detail::v_coefficients(m.e);
    for (double t : upoly::real_roots(mu, std::nullopt, Rational(1, 1ull << 60)).refined) {
      std::array<double, 3> k{0.0, 0.0, 0.0};
      for (std::size_t a = 0; a < ea.size() && a < 3; ++a) k[a] = detail::eval_poly(ea[a], t);
      for (double v : detail::real_quadratic_roots(k[2], k[1], k[0])) {
        VecXr y(3);
        y << v / t, 1.0, t;
        ys.push_back(y);
      }
    }
    out.lines = detail::finish_lines(f, std::move(ys));
    return out;
  }

  // semi-axial, worked out with beta2 = 0 (after exchanging x2 and x3 if needed)
  CubicCanonicalForm g = c.swapped ? detail::swapped(f) : f;
  g.beta2 = 0;
  if (c.subcase == SemiAxialCase::equal_alphas) g.alpha3 = g.alpha2;
  if (c.subcase == SemiAxialCase::three_alpha_degenerate || c.subcase == SemiAxialCase::three_alpha_quadric)
    g.alpha3 = -3 * g.alpha2;
  g.basis.setIdentity();
  g.scale = 1.0;
  const auto m = minors(build_map(g));
  std::vector<VecXr> local;
  // in-plane x2 = 0: m13 = x3 * (binary quadratic in x1, x3)
  auto inplane = detail::binary_lines(
      detail::as_binary(detail::divide_by_variable(detail::restrict_zero(m.m13, 1), 2), 0, 2), 0, 2);
  local.insert(local.end(), inplane.begin(), inplane.end());
  // off-plane: A = m23 / x2, B = m12 / x2
  const auto A = detail::divide_by_variable(m.m23, 1);
  const auto B = detail::divide_by_variable(m.m12, 1);
  const Rational d2 = A.coefficient(MultiIndex({1, 0, 1}));  // 2 (alpha2 - alpha3)
  MPoly<Rational> Arest = A;
  Arest.add_term(MultiIndex({1, 0, 1}), -d2);

  switch (c.subcase) {
    case SemiAxialCase::equal_alphas: {
      // A has no x1: a binary form in (x2, x3); then B is quadratic in x1
      for (const auto& p : detail::binary_lines(detail::as_binary(A, 1, 2), 1, 2)) {
        std::array<double, 3> k{0.0, 0.0, 0.0};
        for (const auto& [e, cc] : B.terms())
          k[e[0]] += to_double(cc) * std::pow(p[1], e[1]) * std::pow(p[2], e[2]);
        for (double x1 : detail::real_quadratic_roots(k[2], k[1], k[0])) {
          VecXr y = p;
          y[0] = x1;
          local.push_back(y);
        }
      }
      break;
    }
    case SemiAxialCase::three_alpha_degenerate: {
      // B has no x1^2: eliminate x1 x3 between A and B
      const Rational bx = B.coefficient(MultiIndex({1, 0, 1}));
      const MPoly<Rational> K = d2 * B - bx * A;
      for (const auto& p : detail::binary_lines(detail::as_binary(K, 1, 2), 1, 2)) {
        if (p[2] == 0.0) continue;
        VecXr y = p;
        const double r = Arest.template evaluate<double>(std::span<const double>(p.data(), 3));
        y[0] = -r / (to_double(d2) * p[2]);
        local.push_back(y);
      }
      break;
    }
    case SemiAxialCase::three_alpha_quadric: break;
    case SemiAxialCase::general: {
      // x3 = 1, x2 = t, x1 from A, substituted into B
      const Poly X1 = detail::substitute(Arest, {Poly{}, Poly::x(), Poly::constant(Rational(1))}) * (Rational(-1) / d2);
      const Poly quartic = detail::substitute(B, {X1, Poly::x(), Poly::constant(Rational(1))});
      auto pts = detail::roots_to_points(quartic, [&](double t) {
        VecXr y(3);
        y << detail::eval_poly(X1, t), t, 1.0;
        return y;
      });
      local.insert(local.end(), pts.begin(), pts.end());
      break;
    }
    case SemiAxialCase::none: break;
  }
  for (auto& y : local) {
    if (c.quadric) {
      // members of the family are described by the quadric
      const auto& qp = c.swapped ? detail::swap_23(*c.quadric) : *c.quadric;
      Vec<double> yy{y[0], y[1], y[2]};
      if (std::abs(qp.evaluate(yy)) < 1e-9 * y.squaredNorm()) continue;
    }
    if (c.swapped) std::swap(y[1], y[2]);
    ys.push_back(y);
  }
  out.lines = detail::finish_lines(f, std::move(ys));
  return out;
}

/// The quartic in t = x2 (x3 = 1) for SemiAxial/General, beta2 = 0 coordinates.
inline Poly semi_axial_quartic(const CubicCanonicalForm& f) {
  const auto c = classify(f);
  if (c.tag != CubicCase::semi_axial || c.subcase != SemiAxialCase::general)
    fail(ErrorCode::precondition_violated, "quartic applies to the general semi-axial case");
  CubicCanonicalForm g = c.swapped ? detail::swapped(f) : f;
  g.beta2 = 0;
  const auto m = minors(build_map(g));
  const auto A = detail::divide_by_variable(m.m23, 1);
  const auto B = detail::divide_by_variable(m.m12, 1);
  const Rational d2 = A.coefficient(MultiIndex({1, 0, 1}));
  MPoly<Rational> Arest = A;
  Arest.add_term(MultiIndex({1, 0, 1}), -d2);
  const Poly X1 = detail::substitute(Arest, {Poly{}, Poly::x(), Poly::constant(Rational(1))}) * (Rational(-1) / d2);
  return detail::substitute(B, {X1, Poly::x(), Poly::constant(Rational(1))});
}

namespace detail {

struct Adapted {
  double a2, a3, b2, b3;
  Eigen::Matrix3d basis;
};

/// Parameters of the real map Q in the orthonormal basis (c1, c2, c3).
inline Adapted parameters_in_basis(const HomogeneousMap<double>& Q, Eigen::Matrix3d basis) {
  CompiledPolys<double> Qc(Q.components(), 3);
  VecXr q(3);
  MatXr J(3, 3);
  Qc.eval(basis.col(0), q, J);
  const MatXr L = 0.25 * (J + J.transpose());
  auto pol = [&](const Eigen::Vector3d& u, const Eigen::Vector3d& w) {
    Vec<double> a{u[0], u[1], u[2]}, b{w[0], w[1], w[2]};
    Vec<double> r = polarize_apply(Q, std::vector<Vec<double>>{a, b});
    return Eigen::Vector3d(r[0], r[1], r[2]);
  };
  Adapted p;
  p.a2 = basis.col(1).dot(L * basis.col(1));
  p.a3 = basis.col(2).dot(L * basis.col(2));
  const Eigen::Vector3d t22 = pol(basis.col(1), basis.col(1));
  p.b2 = t22.dot(basis.col(1));
  p.b3 = t22.dot(basis.col(2));
  p.basis = basis;
  return p;
}

inline CubicCanonicalForm form_from_adapted(Adapted p, double zero_tol) {
  CubicCanonicalForm f;
  f.exact = false;
  f.basis = p.basis;
  const double s = std::max({std::abs(p.a2), std::abs(p.a3), std::abs(p.b2), std::abs(p.b3)});
  auto snap = [&](double& x) {
    if (std::abs(x) < zero_tol * s) x = 0.0;
    else if (std::abs(x) < 1e-6 * s) f.near_degenerate = true;
  };
  snap(p.b2);
  snap(p.b3);
  double d = p.a2 - p.a3;
  if (std::abs(d) < zero_tol * s) d = 0.0, p.a3 = p.a2;
  else if (std::abs(d) < 1e-6 * s) f.near_degenerate = true;
  if (d != 0.0) {
    f.scale = 1.0 / (2.0 * d);
    f.alpha2 = Rational(p.a2 * f.scale);
    f.alpha3 = f.alpha2 - Rational(1, 2);
    f.beta2 = Rational(p.b2 * f.scale);
    f.beta3 = Rational(p.b3 * f.scale);
  } else {
    f.alpha2 = f.alpha3 = Rational(p.a2);
    f.beta2 = Rational(p.b2);
    f.beta3 = Rational(p.b3);
  }
  return f;
}

template <class T>
HomogeneousMap<double> checked_cubic_map(const Form<T>& q) {
  if (q.dim() != 3 || q.degree() != 3) fail(ErrorCode::not_cubic_r3, "expected a cubic form in 3 variables");
  const auto Q = gradient_map(q);
  if (!gradient_diagnostics(Q).is_traceless) fail(ErrorCode::not_harmonic, "the Laplacian of q is not zero");
  return Q.template cast<double>();
}

}  // namespace detail

/// Adapted coordinates of a harmonic cubic: c1 minimizes q on the sphere, c2 and c3
/// diagonalize L(c1) on its complement with alpha2 >= alpha3, and all parameters are
/// scaled by a positive factor to 2(alpha2 - alpha3) = 1 when the alphas differ.
/// Sign convention: beta2 >= 0 and det(c1, c2, c3) = +1.
template <class T>
CubicCanonicalForm canonicalize(const Form<T>& q, std::uint64_t seed = 0, double zero_tol = 1e-10) {
  const auto Q = detail::checked_cubic_map(q);
  const auto ext = extremum_on_sphere(q, ExtremumMode::min, seed);
  Eigen::Vector3d c1(ext.point[0], ext.point[1], ext.point[2]);
  c1.normalize();
  CompiledPolys<double> Qc(Q.components(), 3);
  VecXr qv(3);
  MatXr J(3, 3);
  Qc.eval(c1, qv, J);
  const MatXr Bc = complement_basis(c1);
  const MatXr S = Bc.transpose() * (0.25 * (J + J.transpose())) * Bc;
  Eigen::SelfAdjointEigenSolver<MatXr> es(S);
  Eigen::Matrix3d basis;
  basis.col(0) = c1;
  basis.col(1) = Bc * es.eigenvectors().col(1);
  basis.col(2) = Bc * es.eigenvectors().col(0);
  auto p = detail::parameters_in_basis(Q, basis);
  if (p.b2 < 0) {
    basis.col(1) = -basis.col(1);
    p = detail::parameters_in_basis(Q, basis);
  }
  if (basis.determinant() < 0) {
    basis.col(2) = -basis.col(2);
    p = detail::parameters_in_basis(Q, basis);
  }
  const double s = std::max({std::abs(p.a2), std::abs(p.a3), std::abs(p.b2), std::abs(p.b3)});
  const double m1 = 3 * p.a2 + p.a3, m2 = p.a2 + 3 * p.a3;
  if ((std::abs(m1) <= 1e-9 * s && std::abs(m2) <= 1e-9 * s) || m1 < -1e-8 * s || m2 < -1e-8 * s)
    fail(ErrorCode::minimum_degenerate, "c1 is not a nondegenerate minimum direction");
  return detail::form_from_adapted(p, zero_tol);
}

/// Parameters in a caller-chosen orthonormal basis whose first column is a
/// minimizing direction; the other two must diagonalize L(c1).
template <class T>
CubicCanonicalForm canonical_from_basis(const Form<T>& q, const Eigen::Matrix3d& basis, double zero_tol = 1e-10) {
  const auto Q = detail::checked_cubic_map(q);
  if (!(basis.transpose() * basis).isApprox(Eigen::Matrix3d::Identity(), 1e-12))
    fail(ErrorCode::invalid_argument, "basis must be orthonormal");
  auto p = detail::parameters_in_basis(Q, basis);
  if (p.a2 < p.a3) {
    Eigen::Matrix3d b = basis;
    b.col(1) = basis.col(2);
    b.col(2) = basis.col(1);
    p = detail::parameters_in_basis(Q, b);
  }
  return detail::form_from_adapted(p, zero_tol);
}

struct CriticalPoint {
  Vec<double> point;  // unit vector on the sphere
  StationaryType type = StationaryType::degenerate;
  int index = 0;
};

struct CubicReport {
  CubicCanonicalForm canonical;
  CubicClassification classification;
  std::optional<Poly> rho;
  std::optional<upoly::RootReport> rho_roots;
  int real_line_count = 0;  // isolated real lines; families are reported via the quadric
  std::vector<EigenLine> eigenlines;
  std::vector<CriticalPoint> critical_profile;  // both antipodes of every line
  int maxima_count = 0;
  int minima_count = 0;
  int saddle_count = 0;
  int degenerate_count = 0;
  std::optional<PoincareHopf> ph_check;  // absent for families and degenerate points
};

/// Pipeline on a canonical form; lines are re-verified against `Q` (the input map).
inline CubicReport analyze(const CubicCanonicalForm& form, const HomogeneousMap<double>& Q, double tol = 1e-9) {
  CubicReport rep;
  rep.canonical = form;
  rep.classification = classify(form);
  std::vector<EigenLine> lines;
  if (rep.classification.tag == CubicCase::generic || rep.classification.tag == CubicCase::degenerate) {
    rep.rho = rho_polynomial(form);
    rep.rho_roots = upoly::real_roots(*rep.rho, std::nullopt, Rational(1, 1ull << 60));
    lines = reconstruct_eigenlines(form, *rep.rho_roots);
  } else {
    lines = solve_special_case(form, rep.classification).lines;
  }

  const double scale = std::max(1.0, Q.coefficient_norm());
  CompiledPolys<double> Qc(Q.components(), 3);
  for (auto& l : lines) {
    VecXr u = to_eigen(l.real_vector());
    u /= u.norm();
    const VecXr qu = Qc.value(u);
    const double lambda = qu.dot(u);
    if ((qu - lambda * u).norm() > tol * scale)
      fail(ErrorCode::residual_too_large, "line does not verify against the input map");
    EigenLine fixed = normalize_eigenvalue(to_vec(VecXc(u.cast<cplx>())), lambda, 2, FieldTag::float_real, scale);
    const auto ver = verify_eigenline(Q, fixed, tol);
    fixed.residual = ver.residual;
    fixed.simple = ver.simple;
    rep.eigenlines.push_back(std::move(fixed));
  }
  std::sort(rep.eigenlines.begin(), rep.eigenlines.end(), tenseig::detail::canonical_less);
  rep.real_line_count = static_cast<int>(rep.eigenlines.size());

  std::vector<int> indices;
  for (const auto& l : rep.eigenlines) {
    const Vec<double> c = l.real_vector();
    const auto si = sphere_field_index(Q, c);
    const auto sa = antipodal(si, 2, 3);
    Vec<double> mc(3);
    for (int i = 0; i < 3; ++i) mc[i] = -c[i];
    for (const auto& [pt, s] : {std::pair{c, si}, std::pair{mc, sa}}) {
      rep.critical_profile.push_back({pt, s.type, s.index});
      switch (s.type) {
        case StationaryType::max: ++rep.maxima_count; break;
        case StationaryType::min: ++rep.minima_count; break;
        case StationaryType::saddle: ++rep.saddle_count; break;
        case StationaryType::degenerate: ++rep.degenerate_count; break;
      }
    }
    indices.push_back(si.index);
  }
  if (!rep.classification.infinite() && rep.degenerate_count == 0) rep.ph_check = poincare_hopf_check(indices, 3, 2);
  return rep;
}

template <class T>
CubicReport analyze(const Form<T>& q, std::uint64_t seed = 0, double tol = 1e-9) {
  const auto Q = detail::checked_cubic_map(q);
  return analyze(canonicalize(q, seed), Q, tol);
}

}  // namespace tenseig::cubic3
