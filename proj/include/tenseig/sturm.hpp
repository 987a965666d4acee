#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tenseig/upoly.hpp"

namespace tenseig::upoly {

using Poly = UnivarPoly<Rational>;

/// p_0 = p, p_1 = p', p_{k+1} = -rem(p_{k-1}, p_k), each entry rescaled by a
/// positive factor to primitive integer form. The last entry is gcd(p, p') up to scale.
struct SturmChain {
  std::vector<Poly> polys;

  bool squarefree() const { return !polys.empty() && polys.back().degree() == 0; }
  const Poly& gcd_with_derivative() const { return polys.back(); }
};

inline SturmChain sturm_chain(const Poly& p) {
  if (p.is_zero()) fail(ErrorCode::zero_polynomial, "Sturm chain of the zero polynomial");
  SturmChain chain;
  chain.polys.push_back(primitive_part(p));
  if (p.degree() == 0) return chain;
  chain.polys.push_back(primitive_part(p.derivative()));
  while (true) {
    const auto& a = chain.polys[chain.polys.size() - 2];
    const auto& b = chain.polys.back();
    auto r = divmod(a, b).remainder;
    if (r.is_zero()) break;
    chain.polys.push_back(primitive_part(-r));
  }
  return chain;
}

/// Sign of f just to the right (side = +1) or left (side = -1) of x, taken
/// from the first nonvanishing derivative. Returns 0 only for f == 0.
inline int side_sign(const Poly& f, const Rational& x, int side) {
  Poly g = f;
  for (int k = 0; !g.is_zero(); ++k) {
    int s = sign(g(x));
    if (s != 0) return (side < 0 && (k % 2 == 1)) ? -s : s;
    g = g.derivative();
  }
  return 0;
}

inline int sign_at_infinity(const Poly& f, int side) {
  if (f.is_zero()) return 0;
  int s = sign(f.leading());
  return (side < 0 && f.degree() % 2 == 1) ? -s : s;
}

inline int count_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

/// Finite point x approached from `side`, or +-infinity when `x` is empty.
inline int variations(const SturmChain& chain, const std::optional<Rational>& x, int side) {
  std::vector<int> s;
  s.reserve(chain.polys.size());
  for (const auto& f : chain.polys) s.push_back(x ? side_sign(f, *x, side) : sign_at_infinity(f, side));
  return count_variations(s);
}

/// Distinct real roots in the open interval (a, b); empty optionals mean infinity.
inline int count_roots_open(const SturmChain& chain, const std::optional<Rational>& a, const std::optional<Rational>& b) {
  return variations(chain, a, a ? +1 : -1) - variations(chain, b, b ? -1 : +1);
}

struct Interval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  Rational midpoint() const { return (lo + hi) / 2; }
  Rational width() const { return hi - lo; }
};

struct RootReport {
  int count = 0;                    // distinct real roots
  std::vector<Interval> intervals;  // disjoint, sorted; exact roots have lo == hi
  std::vector<double> refined;      // midpoints of the refined intervals
  std::vector<int> multiplicities;  // per root, from the squarefree factorization
  bool squarefree = true;           // false flags a multiple root (nonconstant gcd(p, p'))
};

/// Cauchy bound: every root satisfies |t| < 1 + max |c_k / c_d|.
inline Rational root_bound(const Poly& p) {
  Rational m{0};
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeffs()[k] / p.leading());
    if (r > m) m = r;
  }
  return m + 1;
}

/// Shrinks an isolating interval around its single simple root of the
/// squarefree polynomial `sqf` until the width is at most `width`.
inline Interval refine_interval(const Poly& sqf, Interval iv, const Rational& width) {
  if (iv.exact()) return iv;
  int s_lo = side_sign(sqf, iv.lo, +1);
  while (iv.width() > width) {
    Rational mid = iv.midpoint();
    int s = sign(sqf(mid));
    if (s == 0) return {mid, mid};
    if (s == s_lo) iv.lo = mid;
    else iv.hi = mid;
  }
  return iv;
}

inline int root_multiplicity(const std::vector<Poly>& factors, const Interval& iv) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (f.degree() < 1) continue;
    if (iv.exact()) {
      if (f(iv.lo) == 0) return static_cast<int>(i) + 1;
    } else {
      auto ch = sturm_chain(f);
      int c = count_roots_open(ch, iv.lo, iv.hi);
      if (c > 0) return static_cast<int>(i) + 1;
    }
  }
  return 1;
}

/// Exact count and isolation of the real roots of p, over the whole line or
/// over the closed range [a, b]. Multiple roots are handled through the
/// squarefree part and reported via `squarefree = false` and multiplicities.
inline RootReport real_roots(const Poly& p, std::optional<std::pair<Rational, Rational>> range = std::nullopt,
                             const Rational& width = Rational(1, 1u << 30)) {
  if (p.is_zero()) fail(ErrorCode::zero_polynomial, "real roots of the zero polynomial");
  if (width <= 0) fail(ErrorCode::invalid_argument, "refinement width must be positive");
  if (range && range->first > range->second) fail(ErrorCode::invalid_argument, "empty range");
  RootReport rep;
  if (p.degree() == 0) return rep;
  const Poly g = poly_gcd(p, p.derivative());
  rep.squarefree = g.degree() == 0;
  const Poly sqf = divmod(p, g).quotient.monic();
  const SturmChain chain = sturm_chain(sqf);

  std::vector<Interval> found;
  Rational lo, hi;
  if (range) {
    lo = range->first;
    hi = range->second;
    if (sqf(lo) == 0) found.push_back({lo, lo});
    if (hi != lo && sqf(hi) == 0) found.push_back({hi, hi});
  } else {
    Rational b = root_bound(sqf);
    lo = -b;
    hi = b;
  }
  if (hi > lo) {
    std::vector<std::pair<Interval, int>> stack;
    int c = count_roots_open(chain, lo, hi);
    if (c > 0) stack.push_back({{lo, hi}, c});
    while (!stack.empty()) {
      auto [iv, cnt] = stack.back();
      stack.pop_back();
      if (cnt == 1) {
        found.push_back(iv);
        continue;
      }
      Rational mid = iv.midpoint();
      if (sqf(mid) == 0) found.push_back({mid, mid});
      int cl = count_roots_open(chain, iv.lo, mid);
      int cr = count_roots_open(chain, mid, iv.hi);
      if (cl > 0) stack.push_back({{iv.lo, mid}, cl});
      if (cr > 0) stack.push_back({{mid, iv.hi}, cr});
    }
  }
  std::sort(found.begin(), found.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  const auto factors = squarefree_factorization(p);
  for (auto& iv : found) {
    iv = refine_interval(sqf, iv, width);
    rep.intervals.push_back(iv);
    rep.refined.push_back(to_double(iv.midpoint()));
    rep.multiplicities.push_back(root_multiplicity(factors, iv));
  }
  rep.count = static_cast<int>(rep.intervals.size());
  return rep;
}

}  // namespace tenseig::upoly
