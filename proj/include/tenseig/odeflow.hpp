#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "tenseig/eigenlines.hpp"
#include "tenseig/sphere.hpp"

namespace tenseig {

/// Solution phi(t) c of x' = Q(x) along an eigenline, phi' = alpha phi^m.
struct RaySolution {
  Vec<double> c;  // unit representative
  double alpha = 0.0;
  int m = 2;
  double y0 = 0.0;
  std::optional<double> blow_up_time;
  std::optional<Rational> blow_up_time_exact;  // when alpha and y0 are rational

  double value(double t) const {
    if (alpha == 0.0 || y0 == 0.0) return y0;
    const double base = 1.0 - alpha * (m - 1) * std::pow(y0, m - 1) * t;
    return y0 * std::pow(base, -1.0 / (m - 1));
  }
  double derivative(double t) const { return alpha * std::pow(value(t), m); }
  Vec<double> state(double t) const {
    Vec<double> x(c.size());
    const double p = value(t);
    for (std::size_t i = 0; i < c.size(); ++i) x[i] = p * c[i];
    return x;
  }
  bool stationary() const { return alpha == 0.0 || y0 == 0.0; }
};

namespace detail {
inline Rational rational_power(const Rational& a, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= a;
  return r;
}
}  // namespace detail

/// Scalar ray dynamics for given alpha, m and y0.
inline RaySolution ray_solution(double alpha, int m, double y0) {
  if (m < 2) fail(ErrorCode::invalid_argument, "degree must be >= 2");
  RaySolution r;
  r.alpha = alpha;
  r.m = m;
  r.y0 = y0;
  const double k = alpha * std::pow(y0, m - 1);
  if (k > 0) r.blow_up_time = 1.0 / (k * (m - 1));
  return r;
}

inline RaySolution ray_solution(const Rational& alpha, int m, const Rational& y0) {
  RaySolution r = ray_solution(to_double(alpha), m, to_double(y0));
  const Rational k = alpha * detail::rational_power(y0, m - 1);
  if (k > 0) {
    r.blow_up_time_exact = Rational(1) / (k * (m - 1));
    r.blow_up_time = to_double(*r.blow_up_time_exact);
  } else {
    r.blow_up_time.reset();
  }
  return r;
}

/// Ray through y0 c for a verified real eigenline of Q; c is the unit representative.
template <class T>
RaySolution ray_solution(const HomogeneousMap<T>& Q, const EigenLine& line, double y0) {
  static_assert(!is_complex_v<T>, "ray solutions are real");
  if (!line.real) fail(ErrorCode::invalid_argument, "ray solutions need a real eigenline");
  verify_eigenline(Q, line, 1e-9);
  VecXr c = to_eigen(line.real_vector());
  c /= c.norm();
  CompiledPolys<double> Qc(Q.components(), Q.dim());
  double alpha = Qc.value(c).dot(c);
  if (std::abs(alpha) < 1e-12 * std::max(1.0, Q.coefficient_norm())) alpha = 0.0;
  RaySolution r = ray_solution(alpha, Q.degree(), y0);
  r.c = to_vec(c);
  return r;
}

template <class T>
RaySolution ray_solution(const HomogeneousMap<T>& Q, const Vec<double>& c, double y0) {
  EigenLine l;
  l.real = true;
  l.rep.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) l.rep[i] = c[i];
  return ray_solution(Q, l, y0);
}

struct UnboundedCertificate {
  Vec<double> c;  // unit, P_m(c) = alpha c
  double alpha = 0.0;
};

struct UnboundedReport {
  std::optional<UnboundedCertificate> certificate;
  int real_lines = 0;
  bool all_real_nilpotent = false;  // the other horn of the even-degree dichotomy
  EigenStatus status = EigenStatus::complete;
};

/// Looks for a real eigenline of the leading form with positive eigenvalue on the
/// unit representative; such a line carries an unbounded solution. Ties in alpha
/// go to the lexicographically largest representative.
template <class T>
UnboundedReport unbounded_certificate(const PolynomialMap<T>& P, std::uint64_t seed = 0) {
  static_assert(!is_complex_v<T>, "certificates are for real maps");
  const auto Pm = P.leading_form();
  if (Pm.degree() < 2) fail(ErrorCode::invalid_argument, "leading form must have degree >= 2");
  EigenOptions opt;
  opt.seed = seed;
  const auto rep = find_eigenlines(Pm, opt);
  const double scale = std::max(1.0, Pm.coefficient_norm());
  UnboundedReport out;
  out.status = rep.status;
  out.all_real_nilpotent = true;
  for (const auto& l : rep.lines) {
    if (!l.real) continue;
    ++out.real_lines;
    if (l.lambda_class != 0) out.all_real_nilpotent = false;
    const double a = l.lambda.real();
    if (a <= 1e-9 * scale) continue;
    const Vec<double> c = l.real_vector();
    bool better = !out.certificate || a > out.certificate->alpha * (1 + 1e-12);
    if (!better && std::abs(a - out.certificate->alpha) <= 1e-12 * a) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double x = detail::rounded(c[i]), y = detail::rounded(out.certificate->c[i]);
        if (x != y) {
          better = x > y;
          break;
        }
      }
    }
    if (better) out.certificate = UnboundedCertificate{c, a};
  }
  if (out.real_lines == 0) out.all_real_nilpotent = false;
  return out;
}

template <class T>
UnboundedReport unbounded_certificate(const HomogeneousMap<T>& Q, std::uint64_t seed = 0) {
  return unbounded_certificate(PolynomialMap<T>(Q), seed);
}

/// Stationary point at infinity in the direction c of a real eigenline of P_m.
struct InfinityPoint {
  Vec<double> c;
  double alpha = 0.0;
  std::vector<cplx> betas;     // eigenvalues of DP_m(c) on the quotient by Rc
  std::vector<cplx> spectrum;  // -alpha, then betas - alpha
  double radial_defect = 0.0;  // |DP_m(c) c - m alpha c|
};

template <class T>
InfinityPoint infinity_spectrum(const PolynomialMap<T>& P, const EigenLine& line) {
  static_assert(!is_complex_v<T>, "spectrum at infinity is for real maps");
  const auto Pm = P.leading_form();
  const int n = Pm.dim(), m = Pm.degree();
  if (!line.real) fail(ErrorCode::invalid_argument, "direction must be a real eigenline");
  if (static_cast<int>(line.rep.size()) != n) fail(ErrorCode::dimension_mismatch, "direction length differs from n");
  VecXr c = to_eigen(line.real_vector());
  if (c.norm() == 0.0) fail(ErrorCode::invalid_argument, "direction must be nonzero");
  c /= c.norm();
  CompiledPolys<double> F(Pm.components(), n);
  VecXr v(n);
  MatXr J(n, n);
  F.eval(c, v, J);
  const double scale = std::max(1.0, Pm.coefficient_norm());
  InfinityPoint out;
  out.alpha = v.dot(c);
  if ((v - out.alpha * c).norm() > 1e-8 * scale) fail(ErrorCode::not_an_eigenline, "direction is not an eigenline of P_m");
  out.c = to_vec(c);
  out.radial_defect = (J * c - m * out.alpha * c).norm();
  out.spectrum.push_back(-out.alpha);
  if (n > 1) {
    const MatXr B = complement_basis(c);
    const MatXr S = B.transpose() * J * B;
    Eigen::EigenSolver<MatXr> es(S, false);
    std::vector<cplx> b(es.eigenvalues().begin(), es.eigenvalues().end());
    std::sort(b.begin(), b.end(), [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
    for (auto z : b) {
      out.betas.push_back(z);
      out.spectrum.push_back(z - out.alpha);
    }
  }
  return out;
}

template <class T>
InfinityPoint infinity_spectrum(const HomogeneousMap<T>& Q, const EigenLine& line) {
  return infinity_spectrum(PolynomialMap<T>(Q), line);
}

}  // namespace tenseig
