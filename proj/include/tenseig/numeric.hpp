#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "tenseig/tensor_core.hpp"

namespace tenseig {

using cplx = std::complex<double>;
using VecXc = Eigen::VectorXcd;
using MatXc = Eigen::MatrixXcd;
using VecXr = Eigen::VectorXd;
using MatXr = Eigen::MatrixXd;

/// splitmix64 step, used to derive independent per-restart seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Dense numeric image of a list of polynomials in n variables, for fast
/// repeated evaluation of values and Jacobians in scalar type S.
template <class S>
class CompiledPolys {
 public:
  CompiledPolys() = default;

  template <class T>
  CompiledPolys(const std::vector<MPoly<T>>& polys, int n) : n_(n) {
    for (const auto& p : polys) {
      std::vector<Term> terms;
      for (const auto& [e, c] : p.terms()) {
        Term t{e.exponents(), S{}};
        if constexpr (is_complex_v<S>) t.c = scalar_cast<cplx>(c);
        else t.c = real_coefficient(c);
        for (int k = 0; k < n; ++k) maxdeg_ = std::max(maxdeg_, t.e[k]);
        terms.push_back(std::move(t));
      }
      polys_.push_back(std::move(terms));
    }
  }

  int size() const { return static_cast<int>(polys_.size()); }
  int nvars() const { return n_; }

  Eigen::Matrix<S, Eigen::Dynamic, 1> value(const Eigen::Matrix<S, Eigen::Dynamic, 1>& x) const {
    fill_powers(x);
    Eigen::Matrix<S, Eigen::Dynamic, 1> y(size());
    for (int j = 0; j < size(); ++j) {
      S acc{0};
      for (const auto& t : polys_[j]) {
        S v = t.c;
        for (int k = 0; k < n_; ++k) v *= pw_[k][t.e[k]];
        acc += v;
      }
      y[j] = acc;
    }
    return y;
  }

  /// Value and Jacobian in one pass.
  void eval(const Eigen::Matrix<S, Eigen::Dynamic, 1>& x, Eigen::Matrix<S, Eigen::Dynamic, 1>& y,
            Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& J) const {
    fill_powers(x);
    y.setZero(size());
    J.setZero(size(), n_);
    for (int j = 0; j < size(); ++j) {
      for (const auto& t : polys_[j]) {
        S v = t.c;
        for (int k = 0; k < n_; ++k) v *= pw_[k][t.e[k]];
        y[j] += v;
        for (int k = 0; k < n_; ++k) {
          if (t.e[k] == 0) continue;
          S d = t.c * S(double(t.e[k]));
          for (int i = 0; i < n_; ++i) d *= pw_[i][i == k ? t.e[i] - 1 : t.e[i]];
          J(j, k) += d;
        }
      }
    }
  }

 private:
  struct Term {
    std::vector<int> e;
    S c;
  };

  template <class T>
  static double real_coefficient(const T& c) {
    if constexpr (is_complex_v<T>) fail(ErrorCode::invalid_argument, "complex coefficient in a real evaluation");
    else return scalar_cast<double>(c);
  }

  void fill_powers(const Eigen::Matrix<S, Eigen::Dynamic, 1>& x) const {
    pw_.assign(n_, std::vector<S>(maxdeg_ + 1, S(1)));
    for (int k = 0; k < n_; ++k)
      for (int p = 1; p <= maxdeg_; ++p) pw_[k][p] = pw_[k][p - 1] * x[k];
  }

  int n_ = 0;
  int maxdeg_ = 0;
  std::vector<std::vector<Term>> polys_;
  mutable std::vector<std::vector<S>> pw_;
};

template <class U>
Eigen::Matrix<U, Eigen::Dynamic, 1> to_eigen(const Vec<U>& v) {
  Eigen::Matrix<U, Eigen::Dynamic, 1> r(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) r[static_cast<Eigen::Index>(i)] = v[i];
  return r;
}

template <class Derived>
auto to_vec(const Eigen::MatrixBase<Derived>& v) {
  Vec<typename Derived::Scalar> r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

inline VecXc random_complex_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  VecXc v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(g(rng), g(rng));
  return v / v.norm();
}

inline VecXr random_real_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  VecXr v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = g(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

/// Smallest singular value relative to the largest.
template <class M>
double relative_sigma_min(const M& A) {
  Eigen::JacobiSVD<M> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0.0;
  return s[s.size() - 1] / s[0];
}

}  // namespace tenseig
