#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "tenseig/numeric.hpp"

namespace tenseig::homotopy {

struct TrackerOptions {
  double initial_step = 0.02;
  double max_step = 0.1;
  double min_step = 1e-14;
  int max_steps = 50000;
  double corrector_tol = 1e-10;
  double divergence_bound = 1e9;  // ||z|| beyond this abandons the path
};

struct PathResult {
  VecXc z;
  double t = 0.0;
  bool reached_end = false;
  bool diverged = false;
  int steps = 0;
};

/// Predictor-corrector tracking of H(z, t) = 0 from t = 0 to t = 1.
/// `sys.eval(z, t, H, Hz, Ht)` must fill the value and both partial derivatives.
template <class System>
PathResult track_path(const System& sys, VecXc z, const TrackerOptions& opt = {}) {
  const int N = static_cast<int>(z.size());
  VecXc H(N), Ht(N);
  MatXc Hz(N, N);
  auto velocity = [&](const VecXc& zz, double tt, bool& ok) -> VecXc {
    sys.eval(zz, tt, H, Hz, Ht);
    Eigen::PartialPivLU<MatXc> lu(Hz);
    VecXc v = -lu.solve(Ht);
    ok = v.allFinite();
    return v;
  };

  PathResult res;
  double t = 0.0, dt = opt.initial_step;
  int streak = 0;
  while (t < 1.0) {
    if (++res.steps > opt.max_steps || dt < opt.min_step) break;
    const double h = std::min(dt, 1.0 - t);
    bool ok = true, ok2 = true, ok3 = true, ok4 = true;
    VecXc k1 = velocity(z, t, ok);
    VecXc k2 = velocity(z + 0.5 * h * k1, t + 0.5 * h, ok2);
    VecXc k3 = velocity(z + 0.5 * h * k2, t + 0.5 * h, ok3);
    VecXc k4 = velocity(z + h * k3, t + h, ok4);
    bool accepted = false;
    VecXc w;
    if (ok && ok2 && ok3 && ok4) {
      w = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double t1 = (t + h >= 1.0) ? 1.0 : t + h;
      double prev = INFINITY;
      for (int it = 0; it < 3; ++it) {
        sys.eval(w, t1, H, Hz, Ht);
        VecXc d = Eigen::PartialPivLU<MatXc>(Hz).solve(H);
        const double nd = d.norm();
        if (!std::isfinite(nd) || nd > 0.5 * prev) break;
        w -= d;
        prev = nd;
        if (nd <= opt.corrector_tol * (1.0 + w.norm())) {
          accepted = true;
          break;
        }
      }
      if (accepted && (w - z).norm() > 0.5 * (1.0 + z.norm()) && h > 1e-3) accepted = false;
      if (accepted) t = t1;
    }
    if (accepted) {
      z = w;
      if (z.norm() > opt.divergence_bound) {
        res.diverged = true;
        break;
      }
      if (++streak >= 3) {
        dt = std::min(2.0 * dt, opt.max_step);
        streak = 0;
      }
    } else {
      dt *= 0.5;
      streak = 0;
    }
  }
  res.z = z;
  res.t = t;
  res.reached_end = (t >= 1.0) && !res.diverged;
  return res;
}

/// Newton iteration on F(z) = 0 with `sys.eval(z, F, J)`; returns the final
/// step norm (small on convergence).
template <class Eval>
double newton_polish(const Eval& eval, VecXc& z, int max_iter = 30, double tol = 1e-15) {
  const int N = static_cast<int>(z.size());
  VecXc F(N);
  MatXc J(N, N);
  double last = INFINITY;
  for (int it = 0; it < max_iter; ++it) {
    eval(z, F, J);
    VecXc d = Eigen::PartialPivLU<MatXc>(J).solve(F);
    if (!d.allFinite()) break;
    const double nd = d.norm();
    if (nd > 2.0 * last && it > 2) break;
    z -= d;
    last = nd;
    if (nd <= tol * (1.0 + z.norm())) break;
  }
  return last;
}

inline cplx random_gamma(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

struct Solution {
  VecXc x;
  bool finite = false;
  double residual = INFINITY;
};

/// All isolated complex solutions of a square system F(x) = 0 via the
/// total-degree homotopy (1 - t) g G(x) + t F(x), G_i = x_i^{d_i} - 1.
/// Paths that diverge (solutions at infinity) come back with finite = false.
inline std::vector<Solution> solve_total_degree(const CompiledPolys<cplx>& F, const std::vector<int>& degrees,
                                                std::uint64_t seed, const TrackerOptions& opt = {}) {
  const int n = F.nvars();
  if (F.size() != n || static_cast<int>(degrees.size()) != n)
    fail(ErrorCode::dimension_mismatch, "total-degree homotopy needs a square system");
  std::mt19937_64 rng(seed);
  const cplx gamma = random_gamma(rng);

  struct Sys {
    const CompiledPolys<cplx>& F;
    const std::vector<int>& d;
    cplx gamma;
    mutable VecXc fv;
    mutable MatXc fj;
    void eval(const VecXc& z, double t, VecXc& H, MatXc& Hz, VecXc& Ht) const {
      F.eval(z, fv, fj);
      const int n = static_cast<int>(z.size());
      Hz = t * fj;
      for (int i = 0; i < n; ++i) {
        const cplx g = std::pow(z[i], d[i]) - 1.0;
        H[i] = (1.0 - t) * gamma * g + t * fv[i];
        Ht[i] = fv[i] - gamma * g;
        Hz(i, i) += (1.0 - t) * gamma * double(d[i]) * std::pow(z[i], d[i] - 1);
      }
    }
  } sys{F, degrees, gamma, VecXc(n), MatXc(n, n)};

  auto polish = [&](const VecXc& z, VecXc& f, MatXc& j) { F.eval(z, f, j); };

  std::vector<Solution> out;
  std::vector<int> idx(n, 0);
  while (true) {
    VecXc z0(n);
    for (int i = 0; i < n; ++i) z0[i] = std::polar(1.0, 2.0 * std::numbers::pi * idx[i] / degrees[i]);
    auto r = track_path(sys, z0, opt);
    Solution s;
    s.x = r.z;
    if (r.reached_end) {
      newton_polish(polish, s.x);
      s.residual = F.value(s.x).norm();
      s.finite = s.x.allFinite() && s.x.norm() < opt.divergence_bound;
    }
    out.push_back(std::move(s));
    int k = 0;
    while (k < n && ++idx[k] == degrees[k]) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

}  // namespace tenseig::homotopy
