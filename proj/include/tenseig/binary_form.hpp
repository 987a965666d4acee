#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <vector>

#include "tenseig/sturm.hpp"
#include "tenseig/tensor_core.hpp"

namespace tenseig::upoly {

/// A root (x1 : x2) of a binary form; finite roots are stored as (t : 1).
struct ProjectiveRoot {
  std::complex<double> x1;
  std::complex<double> x2;
  int multiplicity = 1;
  bool real = false;
  std::optional<Interval> isolating;  // real finite roots of rational forms
  bool at_infinity() const { return x2 == 0.0; }
};

/// All complex roots of a squarefree polynomial: companion-matrix eigenvalues
/// polished by a few Newton steps on the exact coefficients.
template <class F>
std::vector<std::complex<double>> complex_roots(const UnivarPoly<F>& f) {
  using C = std::complex<double>;
  const int d = f.degree();
  std::vector<C> out;
  if (d < 1) return out;
  std::vector<C> c(d + 1);
  for (int k = 0; k <= d; ++k) c[k] = scalar_cast<C>(f.coeffs()[k]);
  if (d == 1) {
    out.push_back(-c[0] / c[1]);
    return out;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  auto df = f.derivative();
  for (int i = 0; i < d; ++i) {
    C z = es.eigenvalues()[i];
    for (int it = 0; it < 4; ++it) {
      C fz = f.template eval<C>(z);
      C dz = df.template eval<C>(z);
      if (std::abs(dz) == 0.0) break;
      C step = fz / dz;
      z -= step;
      if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
    }
    out.push_back(z);
  }
  return out;
}

/// Projective roots of a nonzero binary form F(x1, x2) of degree d, with
/// multiplicities. Dehomogenizes at x2 = 1; (1 : 0) is a root of multiplicity
/// d - deg F(t, 1). Total multiplicity is always d.
template <class F>
std::vector<ProjectiveRoot> solve_binary_form(const Form<F>& form) {
  if (form.dim() != 2) fail(ErrorCode::dimension_mismatch, "binary form must have 2 variables");
  const int d = form.degree();
  std::vector<F> coeffs(d + 1, F(0));
  for (const auto& [e, c] : form.poly().terms()) coeffs[e[0]] = c;
  UnivarPoly<F> f(std::move(coeffs));
  if (f.is_zero()) fail(ErrorCode::zero_polynomial, "binary form is identically zero");

  std::vector<ProjectiveRoot> out;
  if (f.degree() < d) out.push_back({1.0, 0.0, d - f.degree(), true, std::nullopt});
  const auto factors = squarefree_factorization(f);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& g = factors[i];
    if (g.degree() < 1) continue;
    const int mult = static_cast<int>(i) + 1;
    auto roots = complex_roots(g);
    if constexpr (std::is_same_v<F, Rational>) {
      auto rep = real_roots(g, std::nullopt, Rational(1, 1ull << 60));
      for (std::size_t r = 0; r < rep.intervals.size(); ++r)
        out.push_back({rep.refined[r], 1.0, mult, true, rep.intervals[r]});
      std::sort(roots.begin(), roots.end(),
                [](auto a, auto b) { return std::abs(a.imag()) > std::abs(b.imag()); });
      const int nonreal = g.degree() - rep.count;
      for (int r = 0; r < nonreal; ++r) out.push_back({roots[r], 1.0, mult, false, std::nullopt});
    } else {
      for (auto z : roots) out.push_back({z, 1.0, mult, false, std::nullopt});
    }
  }
  return out;
}

}  // namespace tenseig::upoly
