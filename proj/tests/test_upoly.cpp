#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tenseig/binary_form.hpp"

using namespace tenseig;
using namespace tenseig::upoly;
using tenseig::test_support::Q;
namespace ts = tenseig::test_support;

namespace {

Poly P(std::initializer_list<int> c) {
  std::vector<Rational> v;
  for (int a : c) v.emplace_back(a);
  return Poly(std::move(v));
}

Poly mu(const Rational& g) {
  // -t^3 + 3g t^2 + 3t - g
  return Poly({-g, Rational(3), 3 * g, Rational(-1)});
}

Poly random_poly(std::mt19937_64& rng, int deg) {
  std::vector<Rational> c(deg + 1);
  for (auto& a : c) a = ts::random_rational(rng, 9, 3);
  if (c.back() == 0) c.back() = 1;
  return Poly(std::move(c));
}

// Sign changes on a fine grid, then bisection in doubles: counts simple roots
// well separated from each other, which the generators below guarantee.
int grid_count(const Poly& p, double lo, double hi, int steps) {
  int n = 0;
  double prev = p.eval<double>(lo);
  for (int i = 1; i <= steps; ++i) {
    double x = lo + (hi - lo) * i / steps;
    double v = p.eval<double>(x);
    if (v == 0.0) {
      ++n;
      v = p.eval<double>(x + (hi - lo) / steps / 2);
    } else if (prev != 0.0 && (v > 0) != (prev > 0)) {
      ++n;
    }
    prev = v;
  }
  return n;
}

Form<Rational> binary(std::initializer_list<std::pair<std::pair<int, int>, int>> terms) {
  MPoly<Rational> p(2);
  int d = 0;
  for (auto [e, c] : terms) {
    p.add_term(MultiIndex{e.first, e.second}, Rational(c));
    d = e.first + e.second;
  }
  return Form<Rational>(2, d, p);
}

}  // namespace

TEST(Sturm, ChainOfTSquaredMinusOne) {
  auto ch = sturm_chain(P({-1, 0, 1}));
  ASSERT_EQ(ch.polys.size(), 3u);
  EXPECT_EQ(ch.polys[0], P({-1, 0, 1}));
  EXPECT_EQ(ch.polys[1], P({0, 1}));
  EXPECT_EQ(ch.polys[2].degree(), 0);
  EXPECT_GT(ch.polys[2].leading(), 0);
  EXPECT_TRUE(ch.squarefree());
}

TEST(Sturm, RepeatedRootIsNotSquarefree) {
  auto ch = sturm_chain(P({1, -2, 1}));
  EXPECT_FALSE(ch.squarefree());
  EXPECT_EQ(ch.gcd_with_derivative().monic(), P({-1, 1}));
}

TEST(Sturm, ZeroPolynomialRejected) {
  EXPECT_THROW(sturm_chain(Poly{}), Error);
  EXPECT_THROW(real_roots(Poly{}), Error);
}

TEST(RealRoots, Examples) {
  EXPECT_EQ(real_roots(P({1, 0, 1})).count, 0);
  auto r = real_roots(P({-1, 0, 1}));
  ASSERT_EQ(r.count, 2);
  EXPECT_NEAR(r.refined[0], -1.0, 1e-9);
  EXPECT_NEAR(r.refined[1], 1.0, 1e-9);
}

TEST(RealRoots, ParsedCubicHasOneRealRoot) {
  // -t^3 + 3t^2 - 3t - 1 = -((t - 1)^3 + 2)
  auto p = parse_poly("-1*t^3+3*t^2-3*t-1");
  EXPECT_EQ(p, P({-1, -3, 3, -1}));
  auto r = real_roots(p);
  ASSERT_EQ(r.count, 1);
  EXPECT_NEAR(r.refined[0], 1.0 - std::cbrt(2.0), 1e-9);
  EXPECT_TRUE(sturm_chain(p).squarefree());
}

TEST(RealRoots, MuAtGammaOneHasThreeRoots) {
  // -(t + 1)(t^2 - 4t + 1)
  auto p = mu(Rational(1));
  EXPECT_EQ(p, -(P({1, 1}) * P({1, -4, 1})));
  auto r = real_roots(p);
  ASSERT_EQ(r.count, 3);
  EXPECT_NEAR(r.refined[0], -1.0, 1e-9);
  EXPECT_NEAR(r.refined[1], 2.0 - std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(r.refined[2], 2.0 + std::sqrt(3.0), 1e-9);
  EXPECT_TRUE(r.squarefree);
}

TEST(RealRoots, MuHasThreeRootsForAnyGamma) {
  // discriminant of mu is 108 (g^2 + 1)^2 > 0
  for (int num = -12; num <= 12; ++num) {
    Rational g(num, 5);
    EXPECT_EQ(real_roots(mu(g)).count, 3) << g;
  }
}

TEST(RealRoots, ClosedRangeIncludesEndpoints) {
  auto p = P({0, -1, 0, 1});  // t^3 - t
  using R = std::pair<Rational, Rational>;
  EXPECT_EQ(real_roots(p, R{Rational(-1), Rational(1)}).count, 3);
  EXPECT_EQ(real_roots(p, R{Rational(0), Rational(1)}).count, 2);
  EXPECT_EQ(real_roots(p, R{Q("1/2"), Rational(2)}).count, 1);
  EXPECT_EQ(real_roots(p, R{Q("1/4"), Q("3/4")}).count, 0);
  auto exact = real_roots(p, R{Rational(1), Rational(1)});
  ASSERT_EQ(exact.count, 1);
  EXPECT_TRUE(exact.intervals[0].exact());
  EXPECT_THROW(real_roots(p, R{Rational(1), Rational(0)}), Error);
}

TEST(RealRoots, MultiplicitiesReported) {
  auto p = P({-1, 1}).pow(3) * P({2, 1}) * P({1, 0, 1});
  auto r = real_roots(p);
  ASSERT_EQ(r.count, 2);
  EXPECT_FALSE(r.squarefree);
  EXPECT_EQ(r.multiplicities, (std::vector<int>{1, 3}));
}

TEST(RealRoots, RefinementWidthRespected) {
  Rational w(1, 1u << 20);
  auto r = real_roots(P({-2, 0, 1}), std::nullopt, w);
  ASSERT_EQ(r.count, 2);
  for (const auto& iv : r.intervals) {
    EXPECT_LE(iv.width(), w);
    EXPECT_LT((iv.lo * iv.lo - 2) * (iv.hi * iv.hi - 2), 0);
  }
}

TEST(Gcd, Examples) {
  auto a = P({-1, 1}) * P({-2, 1});
  auto b = P({-1, 1}) * P({3, 1});
  EXPECT_EQ(poly_gcd(a, b), P({-1, 1}));
  EXPECT_EQ(poly_gcd(P({1, 0, 1}), P({0, 1})), P({1}));
  EXPECT_EQ(poly_gcd(Poly{}, P({0, 2})), P({0, 1}));
  EXPECT_THROW(poly_gcd(Poly{}, Poly{}), Error);
}

TEST(Gcd, BezoutIdentityRandom) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto c = random_poly(rng, trial % 3);
    auto a = random_poly(rng, 3) * c;
    auto b = random_poly(rng, 2) * c;
    auto eg = extended_gcd(a, b);
    EXPECT_EQ(eg.u * a + eg.v * b, eg.gcd);
    EXPECT_TRUE(divmod(a, eg.gcd).remainder.is_zero());
    EXPECT_TRUE(divmod(b, eg.gcd).remainder.is_zero());
    EXPECT_GE(eg.gcd.degree(), c.degree());
    EXPECT_EQ(eg.gcd.leading(), 1);
  }
}

TEST(Squarefree, YunFactorsRecombine) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    auto f1 = random_poly(rng, 2), f2 = random_poly(rng, 1), f3 = random_poly(rng, 1);
    auto p = f1 * f2.pow(2) * f3.pow(3);
    auto fac = squarefree_factorization(p);
    Poly prod = P({1});
    for (std::size_t i = 0; i < fac.size(); ++i) prod = prod * fac[i].pow(static_cast<int>(i) + 1);
    EXPECT_EQ(prod, p.monic());
    for (const auto& f : fac)
      if (f.degree() > 0) EXPECT_EQ(poly_gcd(f, f.derivative()).degree(), 0);
  }
}

TEST(Parse, RoundTrip) {
  for (const char* s : {"t^2-1", "-1*t^3+3*t^2-3*t-1", "1/2*t^4-t", "7", "t"}) {
    auto p = parse_poly(s);
    EXPECT_EQ(parse_poly(upoly::to_string(p)), p) << s;
  }
  EXPECT_EQ(parse_poly("2.5*t^2 - 1e-1"), Poly({Q("-1/10"), Rational(0), Q("5/2")}));
  EXPECT_THROW(parse_poly("t^^2"), Error);
}

TEST(RealRootsProperty, AgreesWithGridOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    // roots at distinct integers plus an irreducible quadratic factor
    std::vector<int> pick;
    std::uniform_int_distribution<int> u(-6, 6), k(0, 4);
    int nr = k(rng);
    while (static_cast<int>(pick.size()) < nr) {
      int r = u(rng);
      if (std::find(pick.begin(), pick.end(), r) == pick.end()) pick.push_back(r);
    }
    Poly p = P({1, 1, 1});
    for (int r : pick) p = p * P({-r, 1});
    auto shifted = p.compose(P({1, 2}) * Rational(1, 2));  // roots moved to r - 1/2
    EXPECT_EQ(real_roots(p).count, nr);
    EXPECT_EQ(grid_count(shifted, -10.0, 10.0, 4003), real_roots(shifted).count);
  }
}

TEST(RealRootsProperty, IrreducibleQuadraticFactorDoesNotChangeCount) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_poly(rng, 1 + trial % 5);
    EXPECT_EQ(real_roots(p * P({1, 0, 1})).count, real_roots(p).count);
  }
}

TEST(RealRootsProperty, GcdDegreeMatchesMultiplicities) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> root(-5, 5), mult(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    Poly p = P({1});
    int total = 0;
    for (int i = 0; i < 3; ++i) {
      int m = mult(rng);
      p = p * P({-root(rng), 1}).pow(m);
    }
    auto r = real_roots(p);
    for (int m : r.multiplicities) total += m;
    EXPECT_EQ(total, p.degree());
    EXPECT_EQ(poly_gcd(p, p.derivative()).degree(), total - r.count);
    EXPECT_EQ(r.squarefree, total == r.count);
  }
}

TEST(BinaryForm, ThreeDistinctRoots) {
  // x1 x2 (x1 - x2) = x1^2 x2 - x1 x2^2
  auto roots = solve_binary_form(binary({{{2, 1}, 1}, {{1, 2}, -1}}));
  ASSERT_EQ(roots.size(), 3u);
  std::vector<std::pair<double, double>> got;
  for (const auto& r : roots) {
    EXPECT_TRUE(r.real);
    EXPECT_EQ(r.multiplicity, 1);
    got.push_back({r.x1.real(), r.x2.real()});
  }
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got[0], (std::pair<double, double>{0.0, 1.0}));
  EXPECT_EQ(got[1], (std::pair<double, double>{1.0, 0.0}));
  EXPECT_NEAR(got[2].first, 1.0, 1e-12);
  EXPECT_EQ(got[2].second, 1.0);
}

TEST(BinaryForm, DoubleRootAtZero) {
  auto roots = solve_binary_form(binary({{{2, 0}, 1}}));
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots[0].multiplicity, 2);
  EXPECT_TRUE(roots[0].real);
  EXPECT_EQ(roots[0].x1, 0.0);
  EXPECT_EQ(roots[0].x2, 1.0);
}

TEST(BinaryForm, ComplexPair) {
  auto roots = solve_binary_form(binary({{{2, 0}, 1}, {{0, 2}, 1}}));
  ASSERT_EQ(roots.size(), 2u);
  for (const auto& r : roots) {
    EXPECT_FALSE(r.real);
    EXPECT_NEAR(std::abs(r.x1.imag()), 1.0, 1e-12);
    EXPECT_NEAR(r.x1.real(), 0.0, 1e-12);
  }
}

TEST(BinaryForm, ZeroFormRejected) {
  EXPECT_THROW(solve_binary_form(Form<Rational>(2, 3, MPoly<Rational>(2))), Error);
}

TEST(BinaryFormProperty, MultiplicitiesSumToDegree) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 2 + trial % 5;
    auto f = ts::random_form<Rational>(rng, 2, d);
    auto roots = solve_binary_form(f);
    int total = 0;
    for (const auto& r : roots) {
      total += r.multiplicity;
      std::complex<double> v = 0;
      for (const auto& [e, c] : f.poly().terms())
        v += to_double(c) * std::pow(r.x1, e[0]) * std::pow(r.x2, e[1]);
      double scale = 0;
      for (const auto& [e, c] : f.poly().terms()) scale += std::abs(to_double(c));
      if (r.multiplicity == 1) EXPECT_LT(std::abs(v), 1e-8 * scale * std::pow(1 + std::abs(r.x1), d));
    }
    EXPECT_EQ(total, d);
  }
}
