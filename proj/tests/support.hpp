#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "tenseig/tensor_core.hpp"

namespace tenseig::test_support {

inline Rational Q(const char* s) { return parse_rational(s); }

/// Random rational with small numerator and denominator, never zero when `nonzero`.
inline Rational random_rational(std::mt19937_64& rng, int range = 9, int maxden = 4, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-range, range), den(1, maxden);
  while (true) {
    int a = num(rng);
    if (nonzero && a == 0) continue;
    return Rational(a, den(rng));
  }
}

template <class T>
HomogeneousMap<T> random_map(std::mt19937_64& rng, int n, int m) {
  std::vector<MPoly<T>> comps(n, MPoly<T>(n));
  std::normal_distribution<double> g(0.0, 1.0);
  for (int j = 0; j < n; ++j)
    for (const auto& e : monomials_of_degree(n, m)) {
      if constexpr (std::is_same_v<T, Rational>) comps[j].add_term(e, random_rational(rng));
      else if constexpr (std::is_same_v<T, double>) comps[j].add_term(e, g(rng));
      else comps[j].add_term(e, std::complex<double>(g(rng), g(rng)));
    }
  return HomogeneousMap<T>(n, m, std::move(comps));
}

template <class T>
Form<T> random_form(std::mt19937_64& rng, int n, int d) {
  MPoly<T> p(n);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const auto& e : monomials_of_degree(n, d)) {
    if constexpr (std::is_same_v<T, Rational>) p.add_term(e, random_rational(rng));
    else p.add_term(e, g(rng));
  }
  if (p.is_zero()) p.add_term(monomials_of_degree(n, d).front(), T(1));
  return Form<T>(n, d, std::move(p));
}

/// Harmonic projection of a random integer cubic on R^3: h = q - |x|^2 (Lap q) / 10.
inline Form<Rational> random_harmonic_cubic(std::mt19937_64& rng) {
  while (true) {
    MPoly<Rational> p(3);
    std::uniform_int_distribution<int> c(-9, 9);
    for (const auto& e : monomials_of_degree(3, 3)) p.add_term(e, Rational(c(rng)));
    Form<Rational> q(3, 3, p);
    MPoly<Rational> lap = laplacian(q);
    MPoly<Rational> r2(3);
    for (int k = 0; k < 3; ++k) r2.add_term(MultiIndex::unit(3, k) + MultiIndex::unit(3, k), Rational(1));
    MPoly<Rational> h = p - r2 * lap * Rational(1, 10);
    if (!h.is_zero()) return Form<Rational>(3, 3, h);
  }
}

inline Vec<double> random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec<double> v(n);
  for (auto& a : v) a = g(rng);
  return v;
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(a);
  Eigen::Matrix3d r = qr.householderQ();
  if (r.determinant() < 0) r.col(0) *= -1;
  return r;
}

}  // namespace tenseig::test_support
