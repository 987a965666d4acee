#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tenseig/homotopy.hpp"
#include "tenseig/numeric.hpp"
#include "tenseig/tensor_core.hpp"

namespace tenseig {

/// (m^n - 1)/(m - 1) = 1 + m + ... + m^{n-1}.
inline long long bezout_count(int n, int m) {
  if (n < 1) fail(ErrorCode::invalid_argument, "dimension must be >= 1");
  if (m < 2) fail(ErrorCode::invalid_argument, "degree must be >= 2");
  long long s = 0, p = 1;
  for (int k = 0; k < n; ++k, p *= m) s += p;
  return s;
}

struct EigenLine {
  Vec<cplx> rep;          // unit vector, sign/phase canonicalized
  bool real = false;      // rep is real (imaginary parts exactly zero)
  cplx lambda = 0.0;      // Q(rep) = lambda rep
  int lambda_class = 0;   // 0 nilpotent, +1 idempotent, -1 (real, odd m only)
  bool simple = false;
  double residual = 0.0;  // ||Q(v) - class v|| for the normalized representative v

  /// v = a rep with Q(v) = lambda_class v; rep itself when nilpotent.
  Vec<cplx> normalized(int m) const {
    if (lambda_class == 0) return rep;
    cplx a;
    if (real) a = std::pow(std::abs(lambda), -1.0 / (m - 1));
    else a = std::pow(1.0 / lambda, 1.0 / (m - 1));
    Vec<cplx> v = rep;
    for (auto& c : v) c *= a;
    return v;
  }

  Vec<double> real_vector() const {
    Vec<double> r(rep.size());
    for (std::size_t i = 0; i < rep.size(); ++i) r[i] = rep[i].real();
    return r;
  }
};

namespace detail {

inline bool is_real_field(FieldTag f) { return f != FieldTag::float_complex; }

inline int first_significant(const VecXc& u) {
  for (int i = 0; i < u.size(); ++i)
    if (std::abs(u[i]) > 1e-8) return i;
  return 0;
}

inline double line_distance(const VecXc& u, const VecXc& v) {
  return (u - v.dot(u) * v).norm();
}

/// Unit-representative eigenvalue and residual for a numeric map.
inline double unit_residual(const CompiledPolys<cplx>& Q, const VecXc& u, cplx lambda) {
  return (Q.value(u) - lambda * u).norm();
}

}  // namespace detail

/// Rescales v so that lambda lands in {0, 1} (complex field, or real field with
/// even m) or {0, 1, -1} (real field, odd m), and fixes the sign or phase of
/// the unit representative. `scale` sets the nilpotent threshold 1e-9 * scale.
inline EigenLine normalize_eigenvalue(const Vec<cplx>& v, cplx lambda, int m, FieldTag field, double scale = 1.0) {
  VecXc u = to_eigen(v);
  const double s = u.norm();
  if (s == 0.0) fail(ErrorCode::invalid_argument, "eigenvector must be nonzero");
  if (m < 2) fail(ErrorCode::invalid_argument, "degree must be >= 2");
  u /= s;
  lambda /= std::pow(s, m - 1);

  bool real = detail::is_real_field(field);
  for (int i = 0; i < u.size() && real; ++i) real = u[i].imag() == 0.0;
  const bool nil = std::abs(lambda) < 1e-9 * std::max(1.0, scale);
  EigenLine line;
  const int k = detail::first_significant(u);
  if (real) {
    lambda = lambda.real();
    int flip = u[k].real() < 0 ? -1 : 1;
    if (!nil && m % 2 == 0) flip = lambda.real() < 0 ? -1 : 1;
    if (flip < 0) {
      u = -u;
      if (m % 2 == 0) lambda = -lambda;
    }
    line.lambda_class = nil ? 0 : (lambda.real() > 0 ? 1 : -1);
  } else {
    const cplx ph = std::abs(u[k]) > 0 ? std::conj(u[k]) / std::abs(u[k]) : 1.0;
    u *= ph;
    u[k] = std::abs(u[k]);
    lambda *= std::pow(ph, m - 1);
    line.lambda_class = nil ? 0 : 1;
  }
  line.rep = to_vec(u);
  line.real = real;
  line.lambda = lambda;
  return line;
}

enum class EigenStatus { complete, degenerate, non_convergence, possibly_infinite };

inline const char* to_string(EigenStatus s) {
  switch (s) {
    case EigenStatus::complete: return "Complete";
    case EigenStatus::degenerate: return "Degenerate";
    case EigenStatus::non_convergence: return "NonConvergence";
    case EigenStatus::possibly_infinite: return "PossiblyInfinite";
  }
  return "?";
}

struct EigenOptions {
  std::uint64_t seed = 0;
  int restarts = -1;       // multistart Newton budget; -1 means 20 * bezout_count
  double tol = 1e-10;      // acceptance tolerance, relative to max(1, ||Q||)
  bool real_only = false;  // keep only real lines (real fields)
  bool use_homotopy = true;
};

struct EigenReport {
  std::vector<EigenLine> lines;
  EigenStatus status = EigenStatus::complete;
  long long bezout = 0;
  int complex_count = 0;  // distinct lines over C, before any real_only filter
  int real_count = 0;

  std::vector<EigenLine> real_lines() const {
    std::vector<EigenLine> r;
    for (const auto& l : lines)
      if (l.real) r.push_back(l);
    return r;
  }
};

namespace detail {

struct EigenContext {
  int n, m;
  double scale;
  FieldTag field;
  CompiledPolys<cplx> Qc;
  CompiledPolys<double> Qr;  // empty for complex maps
  bool has_real = false;
};

/// Newton on (Q(x) - lambda x, <a, x> - 1) in C^{n+1}.
inline bool chart_newton(const EigenContext& c, const VecXc& a, VecXc& x, cplx& lambda, int max_iter = 60) {
  const int n = c.n;
  VecXc z(n + 1);
  z.head(n) = x;
  z[n] = lambda;
  VecXc q(n);
  MatXc J(n, n);
  auto eval = [&](const VecXc& zz, VecXc& F, MatXc& JF) {
    c.Qc.eval(zz.head(n), q, J);
    F.resize(n + 1);
    JF.setZero(n + 1, n + 1);
    F.head(n) = q - zz[n] * zz.head(n);
    F[n] = (a.transpose() * zz.head(n))(0) - 1.0;
    JF.topLeftCorner(n, n) = J - zz[n] * MatXc::Identity(n, n);
    JF.block(0, n, n, 1) = -zz.head(n);
    JF.block(n, 0, 1, n) = a.transpose();
  };
  const double step = homotopy::newton_polish(eval, z, max_iter, 1e-15);
  x = z.head(n);
  lambda = z[n];
  return std::isfinite(step) && z.allFinite() && step < 1e-8 * (1.0 + z.norm());
}

/// Real Newton on (Q(x) - lambda x, <b, x> - 1) in R^{n+1}.
inline bool real_chart_newton(const EigenContext& c, const VecXr& b, VecXr& x, double& lambda) {
  const int n = c.n;
  VecXr q(n);
  MatXr J(n, n);
  double last = INFINITY;
  for (int it = 0; it < 40; ++it) {
    c.Qr.eval(x, q, J);
    VecXr F(n + 1);
    MatXr JF = MatXr::Zero(n + 1, n + 1);
    F.head(n) = q - lambda * x;
    F[n] = b.dot(x) - 1.0;
    JF.topLeftCorner(n, n) = J - lambda * MatXr::Identity(n, n);
    JF.block(0, n, n, 1) = -x;
    JF.block(n, 0, 1, n) = b.transpose();
    VecXr d = Eigen::PartialPivLU<MatXr>(JF).solve(F);
    if (!d.allFinite()) return false;
    x -= d.head(n);
    lambda -= d[n];
    last = d.norm();
    if (last <= 1e-15 * (1.0 + x.norm() + std::abs(lambda))) break;
  }
  return last < 1e-9 * (1.0 + x.norm());
}

inline bool bordered_simple(const EigenContext& c, const VecXc& u, cplx lambda) {
  const int n = c.n;
  VecXc q(n);
  MatXc J(n, n);
  c.Qc.eval(u, q, J);
  MatXc B = MatXc::Zero(n + 1, n + 1);
  B.topLeftCorner(n, n) = J - lambda * MatXc::Identity(n, n);
  B.block(0, n, n, 1) = -u;
  B.block(n, 0, 1, n) = u.adjoint();
  return relative_sigma_min(B) > 1e-7;
}

/// Turns a chart solution into a unit line; for real maps tries to certify it as a real line.
inline std::optional<EigenLine> make_line(const EigenContext& c, const VecXc& x, cplx lambda) {
  if (!x.allFinite() || x.norm() == 0.0) return std::nullopt;
  const double s = x.norm();
  VecXc u = x / s;
  cplx lu = lambda / std::pow(s, c.m - 1);
  if (unit_residual(c.Qc, u, lu) > 1e-8 * c.scale) return std::nullopt;

  Vec<cplx> rep = to_vec(u);
  FieldTag field = FieldTag::float_complex;
  if (c.has_real) {
    int k = 0;
    for (int i = 1; i < c.n; ++i)
      if (std::abs(u[i]) > std::abs(u[k])) k = i;
    VecXc w = u / u[k];
    if (w.imag().cwiseAbs().maxCoeff() < 1e-6) {
      VecXr xr = w.real();
      VecXr b = xr / xr.squaredNorm();
      double lr = (lu / std::pow(u[k], c.m - 1)).real();
      if (real_chart_newton(c, b, xr, lr)) {
        VecXr ur = xr / xr.norm();
        if (line_distance(u, ur.cast<cplx>()) < 1e-6) {
          for (int i = 0; i < c.n; ++i) rep[i] = ur[i];
          lu = lr / std::pow(xr.norm(), c.m - 1);
          field = c.field;
        }
      }
    }
  }
  EigenLine line = normalize_eigenvalue(rep, lu, c.m, field, c.scale);
  VecXc ue = to_eigen(line.rep);
  line.simple = bordered_simple(c, ue, line.lambda);
  VecXc v = to_eigen(line.normalized(c.m));
  line.residual = (c.Qc.value(v) - double(line.lambda_class) * v).norm();
  return line;
}

inline void merge(std::vector<EigenLine>& lines, const EigenLine& l) {
  const VecXc u = to_eigen(l.rep);
  for (auto& o : lines) {
    // Newton only reaches about sqrt(eps) at a multiple line
    const double tol = (l.simple && o.simple) ? 1e-8 : 1e-6;
    if (line_distance(u, to_eigen(o.rep)) < tol) {
      if (l.residual < o.residual && l.real == o.real) o = l;
      return;
    }
  }
  lines.push_back(l);
}

inline double rounded(double x) { return std::round(x * 1e9) / 1e9 + 0.0; }

inline bool canonical_less(const EigenLine& a, const EigenLine& b) {
  if (a.real != b.real) return a.real;
  if (a.lambda_class != b.lambda_class) return a.lambda_class < b.lambda_class;
  for (std::size_t i = 0; i < a.rep.size(); ++i) {
    double x = rounded(a.rep[i].real()), y = rounded(b.rep[i].real());
    if (x != y) return x < y;
    x = rounded(a.rep[i].imag());
    y = rounded(b.rep[i].imag());
    if (x != y) return x < y;
  }
  return false;
}

/// Start lines of x -> (x_1^m, ..., x_n^m): support S, the first index in S
/// fixed to 1, the others (m-1)-th roots of unity.
inline std::vector<VecXc> power_map_lines(int n, int m) {
  std::vector<VecXc> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> S;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) S.push_back(i);
    std::vector<int> idx(S.size(), 0);
    while (true) {
      VecXc v = VecXc::Zero(n);
      v[S[0]] = 1.0;
      for (std::size_t k = 1; k < S.size(); ++k) v[S[k]] = std::polar(1.0, 2.0 * std::numbers::pi * idx[k] / (m - 1));
      out.push_back(v);
      std::size_t k = 1;
      while (k < S.size() && ++idx[k] == m - 1) idx[k++] = 0;
      if (k >= S.size()) break;
    }
  }
  return out;
}

}  // namespace detail

/// All eigenlines of Q. Stage one tracks the (m^n - 1)/(m - 1) eigenlines of
/// the power map g (x_i^m) to those of Q along (1 - t) g P + t Q in a random
/// affine chart; stage two (only if lines are missing) runs seeded multistart
/// Newton on the projectivized system. Results are verified, deduplicated by
/// angular distance and sorted canonically.
template <class T>
EigenReport find_eigenlines(const HomogeneousMap<T>& Q, const EigenOptions& opt = {}) {
  const int n = Q.dim(), m = Q.degree();
  if (m < 2) fail(ErrorCode::invalid_argument, "eigenline search needs degree >= 2");
  detail::EigenContext c{n, m, std::max(1.0, Q.coefficient_norm()), Q.field(),
                         CompiledPolys<cplx>(Q.components(), n), {}, false};
  if constexpr (!is_complex_v<T>) {
    c.Qr = CompiledPolys<double>(Q.components(), n);
    c.has_real = true;
  }
  EigenReport rep;
  rep.bezout = bezout_count(n, m);

  std::mt19937_64 rng(derive_seed(opt.seed, 0));
  const VecXc a = random_complex_unit(rng, n).conjugate();
  const cplx gamma = homotopy::random_gamma(rng);

  std::vector<EigenLine> lines;
  if (opt.use_homotopy) {
    std::vector<MPoly<cplx>> pw;
    for (int i = 0; i < n; ++i) {
      MPoly<cplx> p(n);
      std::vector<int> e(n, 0);
      e[i] = m;
      p.add_term(MultiIndex(std::move(e)), 1.0);
      pw.push_back(std::move(p));
    }
    const CompiledPolys<cplx> G(pw, n);
    struct Sys {
      const detail::EigenContext& c;
      const CompiledPolys<cplx>& G;
      const VecXc& a;
      cplx gamma;
      void eval(const VecXc& z, double t, VecXc& H, MatXc& Hz, VecXc& Ht) const {
        const int n = c.n;
        VecXc q(n), g(n);
        MatXc Jq(n, n), Jg(n, n);
        c.Qc.eval(z.head(n), q, Jq);
        G.eval(z.head(n), g, Jg);
        const cplx lam = z[n];
        H.resize(n + 1);
        Ht.setZero(n + 1);
        Hz.setZero(n + 1, n + 1);
        H.head(n) = (1.0 - t) * gamma * g + t * q - lam * z.head(n);
        H[n] = (a.transpose() * z.head(n))(0) - 1.0;
        Ht.head(n) = q - gamma * g;
        Hz.topLeftCorner(n, n) = (1.0 - t) * gamma * Jg + t * Jq - lam * MatXc::Identity(n, n);
        Hz.block(0, n, n, 1) = -z.head(n);
        Hz.block(n, 0, 1, n) = a.transpose();
      }
    } sys{c, G, a, gamma};

    for (const VecXc& v : detail::power_map_lines(n, m)) {
      const cplx av = (a.transpose() * v)(0);
      VecXc z(n + 1);
      z.head(n) = v / av;
      int i0 = 0;
      while (v[i0] == 0.0) ++i0;
      z[n] = gamma * std::pow(z[i0], m - 1);
      auto r = homotopy::track_path(sys, z);
      if (!r.reached_end) continue;
      VecXc x = r.z.head(n);
      cplx lam = r.z[n];
      detail::chart_newton(c, a, x, lam);
      if (auto l = detail::make_line(c, x, lam)) detail::merge(lines, *l);
    }
  }

  const int budget = opt.restarts >= 0 ? opt.restarts : static_cast<int>(20 * rep.bezout);
  if (static_cast<long long>(lines.size()) < rep.bezout) {
    for (int k = 0; k < budget; ++k) {
      std::mt19937_64 r(derive_seed(opt.seed, static_cast<std::uint64_t>(k) + 1));
      VecXc x = random_complex_unit(r, n);
      const cplx ax = (a.transpose() * x)(0);
      if (std::abs(ax) < 1e-3) continue;
      x /= ax;
      cplx lam = x.dot(c.Qc.value(x)) / x.squaredNorm();
      if (!detail::chart_newton(c, a, x, lam)) continue;
      if (auto l = detail::make_line(c, x, lam)) detail::merge(lines, *l);
      if (static_cast<long long>(lines.size()) > 3 * rep.bezout) break;
    }
  }

  std::sort(lines.begin(), lines.end(), detail::canonical_less);
  rep.complex_count = static_cast<int>(lines.size());
  bool all_simple = true;
  for (const auto& l : lines) {
    rep.real_count += l.real;
    all_simple = all_simple && l.simple;
  }
  if (rep.complex_count > rep.bezout) rep.status = EigenStatus::possibly_infinite;
  else if (!all_simple) rep.status = EigenStatus::degenerate;
  else if (rep.complex_count < rep.bezout) rep.status = EigenStatus::non_convergence;
  else rep.status = EigenStatus::complete;
  if (opt.real_only) std::erase_if(lines, [](const EigenLine& l) { return !l.real; });
  rep.lines = std::move(lines);
  return rep;
}

struct Verification {
  double residual = 0.0;
  bool simple = false;
};

/// Recomputes the residual of the normalized representative and the
/// multiplicity-one flag (invertible bordered Jacobian at the line).
template <class T>
Verification verify_eigenline(const HomogeneousMap<T>& Q, const EigenLine& line, double tol = 1e-10) {
  const int n = Q.dim(), m = Q.degree();
  if (static_cast<int>(line.rep.size()) != n) fail(ErrorCode::dimension_mismatch, "representative length differs from n");
  VecXc u = to_eigen(line.rep);
  if (u.norm() == 0.0) fail(ErrorCode::invalid_argument, "representative must be nonzero");
  const double scale = std::max(1.0, Q.coefficient_norm());
  detail::EigenContext c{n, m, scale, Q.field(), CompiledPolys<cplx>(Q.components(), n), {}, false};
  u /= u.norm();
  const cplx lambda = u.dot(c.Qc.value(u));
  if (detail::unit_residual(c.Qc, u, lambda) > tol * scale)
    fail(ErrorCode::not_an_eigenline, "Q(v) is not parallel to v");
  EigenLine l = normalize_eigenvalue(to_vec(u), lambda, m, line.real ? Q.field() : FieldTag::float_complex, scale);
  VecXc v = to_eigen(l.normalized(m));
  Verification out;
  out.residual = (c.Qc.value(v) - double(l.lambda_class) * v).norm();
  out.simple = detail::bordered_simple(c, to_eigen(l.rep), l.lambda);
  return out;
}

template <class T>
Verification verify_eigenline(const HomogeneousMap<T>& Q, const Vec<cplx>& rep, double tol = 1e-10) {
  EigenLine l;
  l.rep = rep;
  l.real = std::all_of(rep.begin(), rep.end(), [](cplx z) { return z.imag() == 0.0; });
  return verify_eigenline(Q, l, tol);
}

}  // namespace tenseig
