#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tenseig/homotopy.hpp"
#include "tenseig/numeric.hpp"
#include "tenseig/sphere.hpp"
#include "tenseig/tensor_core.hpp"

namespace tenseig {

/// [[A, -B], [B, A]]: the real 2n x 2n matrix of the complex map A + iB.
inline MatXr real_rep(const MatXr& A, const MatXr& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    fail(ErrorCode::dimension_mismatch, "real_rep needs square blocks of equal size");
  const auto n = A.rows();
  MatXr R(2 * n, 2 * n);
  R << A, -B, B, A;
  return R;
}

/// Real form of a complex polynomial map on C^n as a map on R^{2n}:
/// variables (x_1..x_n, y_1..y_n) with z = x + iy, components (Re P, Im P).
inline PolynomialMap<double> real_representation(const PolynomialMap<cplx>& P) {
  const int n = P.dim();
  std::vector<MPoly<cplx>> z;
  for (int k = 0; k < n; ++k) {
    MPoly<cplx> zk(2 * n);
    zk.add_term(MultiIndex::unit(2 * n, k), 1.0);
    zk.add_term(MultiIndex::unit(2 * n, n + k), cplx(0.0, 1.0));
    z.push_back(std::move(zk));
  }
  std::vector<MPoly<double>> re(n, MPoly<double>(2 * n)), im(n, MPoly<double>(2 * n));
  for (int j = 0; j < n; ++j) {
    MPoly<cplx> acc(2 * n);
    for (const auto& [e, c] : P.component(j).terms()) {
      MPoly<cplx> t = MPoly<cplx>::constant(2 * n, c);
      for (int k = 0; k < n; ++k)
        for (int p = 0; p < e[k]; ++p) t = t * z[k];
      acc += t;
    }
    for (const auto& [e, c] : acc.terms()) {
      re[j].add_term(e, c.real());
      im[j].add_term(e, c.imag());
    }
  }
  for (auto& p : im) re.push_back(std::move(p));
  return PolynomialMap<double>(2 * n, std::move(re));
}

inline PolynomialMap<double> real_representation(const HomogeneousMap<cplx>& Q) {
  return real_representation(PolynomialMap<cplx>(Q));
}

struct DegreeOptions {
  std::uint64_t seed = 0;
  int restarts = 200;           // real multistart cross-check
  int sphere_samples = 10000;   // for the leading-form growth constant
  int global_samples = 3;
};

struct DegreeReport {
  int degree = 0;
  int samples = 0;
  std::vector<int> solutions_per_sample;
  double rho = 0.0;     // min of ||P_m|| on the sampled unit sphere
  double radius = 0.0;  // ball containing every real solution (growth bound)
  std::vector<Vec<double>> solutions;  // real solutions of the last sample
};

namespace detail {

template <class T>
double leading_rho(const PolynomialMap<T>& P, int samples, std::uint64_t seed) {
  const auto Pm = P.leading_form();
  const int n = P.dim();
  CompiledPolys<double> L(Pm.components(), n);
  double rho = INFINITY;
  std::mt19937_64 rng(derive_seed(seed, 0x5eed));
  if (n == 1) {
    VecXr u(1);
    for (double s : {1.0, -1.0}) {
      u[0] = s;
      rho = std::min(rho, L.value(u).norm());
    }
    return rho;
  }
  std::vector<std::pair<double, VecXr>> best;
  for (int i = 0; i < samples; ++i) {
    VecXr u = random_real_unit(rng, n);
    best.push_back({L.value(u).norm(), u});
  }
  const std::size_t keep = std::min<std::size_t>(8, best.size());
  std::partial_sort(best.begin(), best.begin() + keep, best.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  // Gauss-Newton on the sphere from the best samples: exact zeros are missed by sampling alone
  VecXr v(L.size());
  MatXr J(L.size(), n);
  for (std::size_t i = 0; i < keep; ++i) {
    VecXr u = best[i].second;
    double f = best[i].first;
    for (int it = 0; it < 60 && f > 0; ++it) {
      L.eval(u, v, J);
      const MatXr B = complement_basis(u);
      VecXr d = (J * B).completeOrthogonalDecomposition().solve(v);
      bool moved = false;
      for (double h = 1.0; h > 1e-6; h *= 0.5) {
        VecXr w = u - h * (B * d);
        w /= w.norm();
        const double fw = L.value(w).norm();
        if (fw < f) {
          u = w;
          f = fw;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    rho = std::min(rho, f);
  }
  return rho;
}

inline bool real_newton(const CompiledPolys<double>& F, const VecXr& y, VecXr& x) {
  const int n = static_cast<int>(x.size());
  VecXr v(n);
  MatXr J(n, n);
  double last = INFINITY;
  for (int it = 0; it < 60; ++it) {
    F.eval(x, v, J);
    VecXr d = Eigen::PartialPivLU<MatXr>(J).solve(v - y);
    if (!d.allFinite()) return false;
    x -= d;
    last = d.norm();
    if (last <= 1e-15 * (1.0 + x.norm())) break;
    if (x.norm() > 1e12) return false;
  }
  return last < 1e-9 * (1.0 + x.norm());
}

}  // namespace detail

/// Brouwer degree of a real polynomial map at y: sum of sgn det DP(z) over the
/// real solutions of P(z) = y. Solutions come from the total-degree complex
/// homotopy, cross-checked by real multistart Newton in the growth-bound ball.
template <class T>
DegreeReport brouwer_degree(const PolynomialMap<T>& P, const Vec<double>& y, const DegreeOptions& opt = {}) {
  static_assert(!is_complex_v<T>, "use real_representation for complex maps");
  const int n = P.dim();
  if (static_cast<int>(y.size()) != n) fail(ErrorCode::dimension_mismatch, "target length differs from n");
  const int m = P.degree();
  if (m < 1) fail(ErrorCode::invalid_argument, "map must be nonconstant");
  double scale = 0.0;
  for (const auto& c : P.components()) scale += c.coefficient_norm() * c.coefficient_norm();
  scale = std::max(1.0, std::sqrt(scale));

  DegreeReport rep;
  rep.samples = 1;
  rep.rho = detail::leading_rho(P, opt.sphere_samples, opt.seed);
  if (rep.rho <= 1e-8 * scale) fail(ErrorCode::leading_form_vanishes, "leading form has a real zero off the origin");
  const VecXr yv = to_eigen(y);
  rep.radius = std::max(1.0, std::pow(2.0 * yv.norm() / rep.rho, 1.0 / m));

  std::vector<MPoly<cplx>> shifted;
  std::vector<int> degs;
  for (int j = 0; j < n; ++j) {
    MPoly<cplx> p = P.component(j).template cast<cplx>();
    p.add_term(MultiIndex(std::vector<int>(n, 0)), cplx(-y[j], 0.0));
    const int d = p.total_degree();
    if (d < 1) fail(ErrorCode::invalid_argument, "component is constant");
    degs.push_back(d);
    shifted.push_back(std::move(p));
  }
  const CompiledPolys<cplx> Fc(shifted, n);
  const CompiledPolys<double> Fr(P.components(), n);

  std::vector<VecXr> sols;
  auto add = [&](VecXr x) {
    if (!detail::real_newton(Fr, yv, x)) return;
    for (const auto& s : sols)
      if ((s - x).norm() <= 1e-8 * (1.0 + x.norm())) return;
    sols.push_back(x);
  };
  for (const auto& s : homotopy::solve_total_degree(Fc, degs, derive_seed(opt.seed, 1))) {
    if (!s.finite || s.residual > 1e-6 * scale * (1.0 + std::pow(s.x.norm(), m))) continue;
    if (s.x.imag().norm() <= 1e-7 * (1.0 + s.x.norm())) add(s.x.real());
  }
  for (int k = 0; k < opt.restarts; ++k) {
    std::mt19937_64 rng(derive_seed(opt.seed, 1000 + k));
    std::uniform_real_distribution<double> rr(0.0, 1.0);
    VecXr x = random_real_unit(rng, n) * rep.radius * std::pow(rr(rng), 1.0 / n);
    add(x);
  }
  std::sort(sols.begin(), sols.end(), [](const VecXr& a, const VecXr& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });

  VecXr v(n);
  MatXr J(n, n);
  for (const auto& x : sols) {
    Fr.eval(x, v, J);
    Eigen::JacobiSVD<MatXr> svd(J);
    const double smin = svd.singularValues()[n - 1];
    if (smin < 1e-8 * scale * std::pow(std::max(1.0, x.norm()), m - 1))
      fail(ErrorCode::critical_target, "target is (close to) a critical value");
    rep.degree += J.determinant() > 0 ? 1 : -1;
    rep.solutions.push_back(to_vec(x));
  }
  rep.solutions_per_sample.push_back(static_cast<int>(sols.size()));
  return rep;
}

template <class T>
DegreeReport brouwer_degree(const HomogeneousMap<T>& Q, const Vec<double>& y, const DegreeOptions& opt = {}) {
  return brouwer_degree(PolynomialMap<T>(Q), y, opt);
}

/// Global degree: the Brouwer degree at several random targets, which must agree.
template <class T>
DegreeReport global_degree(const PolynomialMap<T>& P, const DegreeOptions& opt = {}) {
  const int n = P.dim();
  DegreeReport out;
  int attempts = 0;
  while (out.samples < opt.global_samples) {
    if (++attempts > 4 * opt.global_samples + 4) fail(ErrorCode::non_convergence, "no regular target found");
    std::mt19937_64 rng(derive_seed(opt.seed, 77 + attempts));
    std::normal_distribution<double> g(0.0, 1.0);
    Vec<double> y(n);
    for (auto& a : y) a = g(rng);
    DegreeOptions o = opt;
    o.seed = derive_seed(opt.seed, 500 + attempts);
    DegreeReport r;
    try {
      r = brouwer_degree(P, y, o);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::critical_target) continue;
      throw;
    }
    if (out.samples > 0 && r.degree != out.degree)
      fail(ErrorCode::non_convergence, "degree differs between targets");
    out.degree = r.degree;
    out.rho = r.rho;
    out.radius = std::max(out.radius, r.radius);
    out.solutions = r.solutions;
    out.solutions_per_sample.push_back(r.solutions_per_sample.front());
    ++out.samples;
  }
  return out;
}

template <class T>
DegreeReport global_degree(const HomogeneousMap<T>& Q, const DegreeOptions& opt = {}) {
  return global_degree(PolynomialMap<T>(Q), opt);
}

}  // namespace tenseig
