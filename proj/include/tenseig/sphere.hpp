#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tenseig/eigenlines.hpp"

namespace tenseig {

enum class StationaryType { min, max, saddle, degenerate };

inline const char* to_string(StationaryType t) {
  switch (t) {
    case StationaryType::min: return "min";
    case StationaryType::max: return "max";
    case StationaryType::saddle: return "saddle";
    case StationaryType::degenerate: return "degenerate";
  }
  return "?";
}

struct SphereIndex {
  double alpha = 0.0;
  std::vector<double> betas;    // eigenvalues of DQ(c) on the tangent space, ascending
  std::vector<double> shifted;  // betas - alpha
  int index = 0;                // 0 when degenerate
  StationaryType type = StationaryType::degenerate;
};

/// Orthonormal basis of the orthogonal complement of the unit vector c, as columns.
inline MatXr complement_basis(const VecXr& c) {
  const int n = static_cast<int>(c.size());
  Eigen::HouseholderQR<MatXr> qr(c);
  MatXr H = qr.householderQ() * MatXr::Identity(n, n);
  return H.rightCols(n - 1);
}

/// Index of the sphere field Q*(x) = Q(x) - <Q(x), x> x at a real unit
/// eigenvector c of the gradient map Q.
template <class T>
SphereIndex sphere_field_index(const HomogeneousMap<T>& Q, const Vec<double>& c, double tol = 1e-9) {
  static_assert(!is_complex_v<T>, "sphere field index needs a real map");
  const int n = Q.dim();
  if (static_cast<int>(c.size()) != n) fail(ErrorCode::dimension_mismatch, "point length differs from n");
  if (!gradient_diagnostics(Q).is_gradient) fail(ErrorCode::not_a_gradient, "Jacobian is not symmetric");
  VecXr u = to_eigen(c);
  if (u.norm() == 0.0) fail(ErrorCode::invalid_argument, "point must be nonzero");
  u /= u.norm();
  const double scale = std::max(1.0, Q.coefficient_norm());
  CompiledPolys<double> Qr(Q.components(), n);
  VecXr q(n);
  MatXr J(n, n);
  Qr.eval(u, q, J);
  SphereIndex out;
  out.alpha = q.dot(u);
  if ((q - out.alpha * u).norm() > 1e-8 * scale) fail(ErrorCode::not_an_eigenline, "c is not an eigenvector of Q");
  if (n == 1) {
    out.index = 1;
    out.type = StationaryType::min;
    return out;
  }
  const MatXr B = complement_basis(u);
  const MatXr S = B.transpose() * (0.5 * (J + J.transpose())) * B;
  Eigen::SelfAdjointEigenSolver<MatXr> es(S, Eigen::EigenvaluesOnly);
  bool pos = true, neg = true, deg = false;
  int sign = 1;
  for (int i = 0; i < n - 1; ++i) {
    const double b = es.eigenvalues()[i];
    const double s = b - out.alpha;
    out.betas.push_back(b);
    out.shifted.push_back(s);
    if (std::abs(s) <= tol * scale) deg = true;
    pos = pos && s > 0;
    neg = neg && s < 0;
    if (s < 0) sign = -sign;
  }
  if (deg) return out;
  out.index = sign;
  out.type = pos ? StationaryType::min : (neg ? StationaryType::max : StationaryType::saddle);
  return out;
}

/// The same data at -c: alpha and the spectrum pick up the factor (-1)^{m-1}.
inline SphereIndex antipodal(const SphereIndex& s, int m, int n) {
  SphereIndex r = s;
  const double f = (m % 2 == 0) ? -1.0 : 1.0;
  r.alpha *= f;
  for (auto& b : r.betas) b *= f;
  for (auto& b : r.shifted) b *= f;
  std::reverse(r.betas.begin(), r.betas.end());
  std::reverse(r.shifted.begin(), r.shifted.end());
  if (s.type == StationaryType::degenerate) return r;
  if (m % 2 == 0) {
    if (s.type == StationaryType::min) r.type = StationaryType::max;
    else if (s.type == StationaryType::max) r.type = StationaryType::min;
    if ((n - 1) % 2 == 1) r.index = -s.index;
  }
  return r;
}

struct PoincareHopf {
  int index_sum = 0;  // over points of the sphere, both antipodes of each line
  int expected = 0;
  bool pass = false;
};

/// Sums indices over antipodal pairs: the index at -c equals the index at c
/// unless both m and n are even, in which case it is opposite.
inline PoincareHopf poincare_hopf_check(const std::vector<int>& line_indices, int n, int m) {
  if (n < 1 || m < 1) fail(ErrorCode::invalid_argument, "n and m must be positive");
  PoincareHopf r;
  const bool opposite = (m % 2 == 0) && (n % 2 == 0);
  for (int i : line_indices) {
    if (i == 0) fail(ErrorCode::degenerate_stationary_point, "degenerate stationary point present");
    r.index_sum += opposite ? 0 : 2 * i;
  }
  r.expected = (n % 2 == 1) ? 2 : 0;
  r.pass = r.index_sum == r.expected;
  return r;
}

enum class ExtremumMode { min, max };

struct Extremum {
  Vec<double> point;  // unit vector attaining the value
  double value = 0.0;
  EigenLine line;     // the corresponding eigenline of gradient_map(q)
};

/// Global extremum of a real form on the unit sphere: seeded multistart
/// projected gradient with Armijo steps, then Lagrange-Newton polish.
template <class T>
Extremum extremum_on_sphere(const Form<T>& q, ExtremumMode mode, std::uint64_t seed = 0, int starts = 64) {
  static_assert(!is_complex_v<T>, "extremum on the sphere needs a real form");
  const int n = q.dim();
  const double sg = mode == ExtremumMode::max ? 1.0 : -1.0;
  CompiledPolys<double> F(std::vector<MPoly<T>>{q.poly()}, n);
  std::vector<MPoly<T>> grad;
  for (int k = 0; k < n; ++k) grad.push_back(q.poly().derivative(k));
  CompiledPolys<double> G(grad, n);
  auto f = [&](const VecXr& x) { return sg * F.value(x)[0]; };

  struct Cand {
    VecXr x;
    double v;
  };
  std::vector<Cand> cands;
  for (int s = 0; s < starts; ++s) {
    std::mt19937_64 rng(derive_seed(seed, s));
    VecXr x = random_real_unit(rng, n);
    double fx = f(x);
    for (int it = 0; it < 2000; ++it) {
      VecXr g = sg * G.value(x);
      VecXr gt = g - g.dot(x) * x;
      const double gn2 = gt.squaredNorm();
      if (gn2 < 1e-14) break;  // Newton below takes over
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
        VecXr y = x + step * gt;
        y /= y.norm();
        const double fy = f(y);
        if (fy >= fx + 1e-4 * step * gn2) {
          x = y;
          fx = fy;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    // Lagrange-Newton on (grad q(x) - mu x, (|x|^2 - 1)/2)
    VecXr z(n + 1);
    z.head(n) = x;
    z[n] = G.value(x).dot(x);
    VecXr gv(n);
    MatXr Hs(n, n);
    for (int it = 0; it < 20; ++it) {
      G.eval(z.head(n), gv, Hs);
      VecXr R(n + 1);
      R.head(n) = gv - z[n] * z.head(n);
      R[n] = 0.5 * (z.head(n).squaredNorm() - 1.0);
      MatXr JR = MatXr::Zero(n + 1, n + 1);
      JR.topLeftCorner(n, n) = Hs - z[n] * MatXr::Identity(n, n);
      JR.block(0, n, n, 1) = -z.head(n);
      JR.block(n, 0, 1, n) = z.head(n).transpose();
      VecXr d = Eigen::FullPivLU<MatXr>(JR).solve(R);
      if (!d.allFinite() || d.norm() > 1e-1) break;
      z -= d;
      if (d.norm() < 1e-16) break;
    }
    VecXr xp = z.head(n) / z.head(n).norm();
    if ((xp - x).norm() < 1e-2 && f(xp) >= fx - 1e-12) x = xp;
    cands.push_back({x, f(x)});
  }

  auto lex_less = [](const VecXr& a, const VecXr& b) {
    for (int i = 0; i < a.size(); ++i) {
      const double x = detail::rounded(a[i]), y = detail::rounded(b[i]);
      if (x != y) return x < y;
    }
    return false;
  };
  double best = -INFINITY;
  for (const auto& c : cands) best = std::max(best, c.v);
  const Cand* pick = nullptr;
  for (const auto& c : cands) {
    if (c.v < best - 1e-12 * std::max(1.0, std::abs(best))) continue;
    if (!pick || lex_less(c.x, pick->x)) pick = &c;
  }

  Extremum out;
  out.point = to_vec(pick->x);
  out.value = sg * pick->v;
  const auto Q = gradient_map(q);
  Vec<cplx> rep(n);
  for (int i = 0; i < n; ++i) rep[i] = pick->x[i];
  out.line = normalize_eigenvalue(rep, out.value, Q.degree(), Q.field(), std::max(1.0, Q.coefficient_norm()));
  const auto ver = verify_eigenline(Q, out.line, 1e-8);
  out.line.residual = ver.residual;
  out.line.simple = ver.simple;
  return out;
}

}  // namespace tenseig
