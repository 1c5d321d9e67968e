#include <gtest/gtest.h>

#include <map>
#include <random>
#include <tuple>

#include "qchar/toda.hpp"
#include "qchar/whittaker.hpp"

using namespace qchar;
using namespace qchar::toda;

namespace {

constexpr Orientation kMinus{-1, -1};

Rational rpow(Rational x, int n) {
  Rational out = 1;
  if (n < 0) {
    x = 1 / x;
    n = -n;
  }
  while (n-- > 0) out *= x;
  return out;
}

// (a)_n at a rational point
Rational rpoch(const Rational& a, const Rational& q, int n) {
  Rational out = 1;
  for (int i = 0; i < n; ++i) out *= 1 - a * rpow(q, i);
  return out;
}

struct Pt {
  Rational z1, z2, q;
};

Rational I_at(int d1, int d2, const Pt& p) {
  if (d1 < 0 || d2 < 0) return 0;
  const Rational &z1 = p.z1, &z2 = p.z2, &q = p.q;
  Rational w = q / (z1 * z2);
  return rpoch(w, q, d1 + d2) / (rpoch(q, q, d1) * rpoch(q, q, d2) * rpoch(q / z1, q, d1) * rpoch(q / z2, q, d2) *
                                 rpoch(w, q, d1) * rpoch(w, q, d2));
}

Rational Iddn_at(int d1, int d2, int n, const Pt& p) {
  const Rational &z1 = p.z1, &z2 = p.z2, &q = p.q;
  int k = d1 - 2 * n;
  Rational ratio = k >= 0 ? rpoch(q * z2, q, k) : 1 / rpoch(rpow(q, k + 1) * z2, q, -k);
  return ratio / (rpoch(q, q, d1 - n) * rpoch(q, q, d2 - n) * rpoch(q, q, n) * rpoch(q / z1, q, d1 - n) *
                  rpoch(q / (z1 * z2), q, n) * rpoch(rpow(q, -d1 + 2 * n + 1) / z2, q, d2 - n) *
                  rpoch(q * z2, q, d1 - n) * rpoch(q / z2, q, n));
}

Rational eval_fs(const FactoredSum& s, const Pt& p) {
  Rational out = 0;
  for (const auto& t : s.terms()) {
    Rational x = t.coeff * rpow(p.z1, t.mono.m1) * rpow(p.z2, t.mono.m2) * rpow(p.q, t.mono.e);
    for (const auto& f : t.factors) {
      Rational a = rpow(p.z1, f.base.m1) * rpow(p.z2, f.base.m2) * rpow(p.q, f.base.e);
      Rational v = rpoch(a, p.q, f.length);
      x *= f.exponent > 0 ? v : 1 / v;
    }
    out += x;
  }
  return out;
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(2, 40), den(41, 97);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

Pt random_point(std::mt19937& rng) {
  Pt p{random_rational(rng), random_rational(rng), random_rational(rng)};
  p.z1 = 1 / p.z1;
  p.z2 = 1 / p.z2;
  return p;
}

// ---- (v, x, y) side: x = v^{l1-l2}, y = v^{l2-l3}

struct VPt {
  Rational v, x, y;
};

Rational br(const VPt& p, int a12, int a23, int c) {
  Rational V = rpow(p.x, a12) * rpow(p.y, a23) * rpow(p.v, c);
  return (V - 1 / V) / (p.v - 1 / p.v);
}

Rational brp(const VPt& p, int a12, int a23, int c, int len) {
  Rational out = 1;
  for (int i = 0; i < len; ++i) out *= br(p, a12, a23, c + i);
  return out;
}

Rational c_direct(int d1, int d2, int n, const VPt& p) {
  auto fact = [&](int m) { return brp(p, 0, 0, 1, m); };
  int k = d1 - 2 * n;
  Rational ratio = k >= 0 ? brp(p, 0, 1, 2, k) : 1 / brp(p, 0, 1, 2 + k, -k);
  return ratio / (fact(d1 - n) * fact(d2 - n) * fact(n) * brp(p, 1, 0, -d1 + n + 1, d1 - n) *
                  brp(p, 1, 1, -n + 2, n) * brp(p, 0, 1, 2, d1 - n) * brp(p, 0, 1, d1 - d2 - n + 1, d2 - n) *
                  brp(p, 0, 1, -n + 1, n));
}

Rational eval_v(const VRational& t, const VPt& p) {
  auto mono = [&](const LaurentPoly3::Key& k) -> Rational { return rpow(p.v, k[0]) * rpow(p.x, k[1]) * rpow(p.y, k[2]); };
  Rational out = t.coeff * mono(t.mono);
  for (const auto& [b, m] : t.factors) out *= rpow(1 - mono(b), m);
  return out;
}

Pt as_zq(const VPt& p) { return {p.x * p.x * p.v * p.v, p.y * p.y * p.v * p.v, p.v * p.v}; }

// plain geometric-series expansion in (z1^{-1}, z2^{-1}, q); key = (deg z1^{-1}, deg z2^{-1}, q)
using Dense = std::map<std::tuple<int, int, int>, Rational>;

Dense dense_mul_binomial(const Dense& s, int a, int b, int c, int zmax, int qhi) {
  Dense out = s;
  for (const auto& [k, v] : s) {
    auto [x, y, e] = k;
    if (x + a + y + b <= zmax && e + c <= qhi) out[{x + a, y + b, e + c}] -= v;
  }
  return out;
}

Dense dense_div_binomial(const Dense& s, int a, int b, int c, int zmax, int qhi) {
  Dense out;
  for (const auto& [k, v] : s) {
    auto [x, y, e] = k;
    for (int t = 0; x + t * a + y + t * b <= zmax && e + t * c <= qhi; ++t) {
      out[{x + t * a, y + t * b, e + t * c}] += v;
      if (a == 0 && b == 0 && c == 0) break;
    }
  }
  return out;
}

Dense I_dense(int d1, int d2, int zmax, int qhi) {
  Dense s{{{0, 0, 0}, Rational(1)}};
  for (int i = 0; i < d1 + d2; ++i) s = dense_mul_binomial(s, 1, 1, 1 + i, zmax, qhi);
  for (int i = 0; i < d1; ++i) {
    s = dense_div_binomial(s, 0, 0, 1 + i, zmax, qhi);
    s = dense_div_binomial(s, 1, 0, 1 + i, zmax, qhi);
    s = dense_div_binomial(s, 1, 1, 1 + i, zmax, qhi);
  }
  for (int i = 0; i < d2; ++i) {
    s = dense_div_binomial(s, 0, 0, 1 + i, zmax, qhi);
    s = dense_div_binomial(s, 0, 1, 1 + i, zmax, qhi);
    s = dense_div_binomial(s, 1, 1, 1 + i, zmax, qhi);
  }
  return s;
}

::testing::AssertionResult same(const Series2& a, const Series2& b) {
  auto d = first_difference(a, b);
  if (!d) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "differs at z1^" << d->m1 << " z2^" << d->m2 << " q^" << d->e << ": "
                                       << to_string(d->lhs) << " vs " << to_string(d->rhs);
}

}  // namespace

TEST(IFunction, Vacuum) {
  FactoredSum I = I_dd(0, 0);
  ASSERT_EQ(I.size(), 1u);
  EXPECT_TRUE(I.terms()[0].factors.empty());
  EXPECT_EQ(I.terms()[0].coeff, 1);
}

TEST(IFunction, OneZeroClosedForm) {
  FactoredTerm t;
  t *= poch(qp(1), 1, -1);
  t *= poch(ZqMonomial{-1, 0, 1}, 1, -1);
  EXPECT_TRUE(rational_identity(I_dd(1, 0), FactoredSum(t)));
  EXPECT_FALSE(rational_identity(I_dd(1, 1), FactoredSum(t)));
}

TEST(IFunction, NegativeIndexIsZero) {
  EXPECT_TRUE(I_dd(-1, 2).empty());
  EXPECT_TRUE(I_dd(0, -1).empty());
  EXPECT_TRUE(Jbar(-1, 0).empty());
}

TEST(IFunction, Symmetry) {
  for (int d1 = 0; d1 <= 4; ++d1)
    for (int d2 = 0; d2 <= 4; ++d2)
      EXPECT_TRUE(rational_identity(substitute(I_dd(d1, d2), z2(), z1()), I_dd(d2, d1))) << d1 << "," << d2;
}

TEST(IFunction, MatchesPointEvaluation) {
  std::mt19937 rng(11);
  for (int d1 = 0; d1 <= 3; ++d1)
    for (int d2 = 0; d2 <= 3; ++d2) {
      Pt p = random_point(rng);
      EXPECT_EQ(eval_fs(I_dd(d1, d2), p), I_at(d1, d2, p));
    }
}

TEST(JFunction, InfiniteFactors) {
  Series2 lhs = expand(Jbar(1, 1) * FactoredSum(FactoredTerm{1, {}, {poch(z1(), 1), poch(z2(), 1), poch({1, 1, 0}, 1)}}),
                       {1, 1}, 4, 0, 6);
  Series2 rhs = expand(J(1, 1), {1, 1}, 4, 0, 6);
  EXPECT_TRUE(same(lhs, rhs));
  FactoredTerm inf;
  inf *= poch(z1() * qp(1), kInfinity, -1);
  inf *= poch(z2() * qp(1), kInfinity, -1);
  inf *= poch(ZqMonomial{1, 1, 1}, kInfinity, -1);
  EXPECT_TRUE(same(expand(J(0, 0), {1, 1}, 5, 0, 8), expand(FactoredSum(inf), {1, 1}, 5, 0, 8)));
}

TEST(Toda, ExactRecursion) {
  for (int d1 = 0; d1 <= 6; ++d1)
    for (int d2 = 0; d2 <= 6; ++d2)
      if (d1 + d2 >= 1) EXPECT_TRUE(verify_toda(d1, d2)) << d1 << "," << d2;
}

TEST(Toda, PointOracle) {
  std::mt19937 rng(5);
  for (int d1 = 0; d1 <= 3; ++d1)
    for (int d2 = 0; d2 <= 3; ++d2) {
      if (d1 + d2 == 0) continue;
      Pt p = random_point(rng);
      const Rational &z1 = p.z1, &z2 = p.z2, &q = p.q;
      Rational lhs = ((rpow(q, d1) - 1) / z1 + (rpow(q, d2 - d1) - 1) + z2 * (rpow(q, -d2) - 1)) * I_at(d1, d2, p);
      Rational rhs = rpow(q, d2 - d1) * I_at(d1 - 1, d2, p) + z2 * rpow(q, -d2) * I_at(d1, d2 - 1, p);
      EXPECT_EQ(lhs, rhs) << d1 << "," << d2;
      EXPECT_NE(lhs, rhs + I_at(d1, d2, p));
    }
}

TEST(Toda, IrecExact) {
  for (int d1 = 0; d1 <= 4; ++d1)
    for (int d2 = 0; d2 <= 4; ++d2) EXPECT_TRUE(verify_Irec(d1, d2)) << d1 << "," << d2;
}

TEST(Toda, IrecPointOracle) {
  std::mt19937 rng(7);
  Pt p = random_point(rng);
  for (auto [d1, d2] : {std::pair{1, 0}, {2, 1}, {3, 3}}) {
    Rational rhs = 0;
    for (int n1 = 0; n1 <= d1; ++n1)
      for (int n2 = 0; n2 <= d2; ++n2)
        rhs += rpow(p.z1, -n1) * rpow(p.z2, -n2) * rpow(p.q, n1 * n1 + n2 * n2 - n1 * n2) /
               (rpoch(p.q, p.q, d1 - n1) * rpoch(p.q, p.q, d2 - n2)) * I_at(n1, n2, p);
    EXPECT_EQ(I_at(d1, d2, p), rhs);
  }
}

TEST(Toda, ExpansionAgainstGeometricSeries) {
  const int zmax = 6, qhi = 12;
  for (int d1 = 0; d1 <= 2; ++d1)
    for (int d2 = 0; d2 <= 2; ++d2) {
      Series2 s = expand(I_dd(d1, d2), kMinus, zmax, 0, qhi);
      Series2 oracle(kMinus, zmax, 0, qhi);
      for (const auto& [k, v] : I_dense(d1, d2, zmax, qhi)) {
        auto [x, y, e] = k;
        oracle.add_term(-x, -y, e, v);
      }
      EXPECT_TRUE(same(s, oracle)) << d1 << "," << d2;
    }
}

TEST(Toda, FermionicExpansion) {
  const int zmax = 6, qhi = 12;
  for (int d1 = 0; d1 <= 4; ++d1)
    for (int d2 = 0; d2 <= 4; ++d2)
      EXPECT_TRUE(same(I_fermionic(d1, d2, zmax, 0, qhi), expand(I_dd(d1, d2), kMinus, zmax, 0, qhi)))
          << d1 << "," << d2;
}

TEST(Toda, FermionicOneZeroByHand) {
  // 1/((1-q)(1-q/z1)) = sum_t z1^{-t} q^t / (q)_1 ... to depth 2
  Series2 s = I_fermionic(1, 0, 2, 0, 3);
  EXPECT_EQ(s.coeff(0, 0, 0), 1);
  EXPECT_EQ(s.coeff(0, 0, 1), 1);
  EXPECT_EQ(s.coeff(-1, 0, 1), 1);
  EXPECT_EQ(s.coeff(-1, 0, 2), 1);
  EXPECT_EQ(s.coeff(-2, 0, 2), 1);
  EXPECT_EQ(s.coeff(-2, 0, 1), 0);
}

TEST(Toda, SumOverN) {
  for (int d1 = 0; d1 <= 5; ++d1)
    for (int d2 = 0; d2 <= 5; ++d2) EXPECT_TRUE(verify_I_sum(d1, d2)) << d1 << "," << d2;
}

TEST(Toda, IddnPointOracle) {
  std::mt19937 rng(3);
  for (int d1 = 0; d1 <= 4; ++d1)
    for (int d2 = 0; d2 <= 4; ++d2)
      for (int n = 0; n <= std::min(d1, d2); ++n) {
        Pt p = random_point(rng);
        EXPECT_EQ(eval_fs(I_ddn(d1, d2, n), p), Iddn_at(d1, d2, n, p)) << d1 << d2 << n;
      }
  EXPECT_TRUE(I_ddn(1, 1, 2).empty());
}

TEST(GT, Trivial) {
  EXPECT_EQ(gt_coeffs({3, 0, 0}).a.coeff, 0);
  GTCoeffs g = gt_coeffs({0, 0, 0});
  EXPECT_EQ(g.c.coeff, 1);
  EXPECT_TRUE(g.c.factors.empty());
  EXPECT_EQ(g.c.mono, (LaurentPoly3::Key{0, 0, 0}));
  EXPECT_THROW(gt_coeffs({1, 0, 1}), std::invalid_argument);
}

TEST(GT, BracketSymmetry) {
  VPt p{Rational(3, 7), Rational(5, 11), Rational(2, 13)};
  VPt pb{1 / p.v, 1 / p.x, 1 / p.y};
  for (LinForm a : {LinForm{1, 0, 1}, LinForm{0, 1, -2}, LinForm{1, 1, 3}, LinForm{0, 0, 4}}) {
    EXPECT_EQ(eval_v(bracket(a), p), br(p, a.a12, a.a23, a.c));
    EXPECT_EQ(eval_v(bracket(a), pb), eval_v(bracket(a), p));
    EXPECT_EQ(eval_v(bracket(-a), p), -eval_v(bracket(a), p));
  }
  EXPECT_EQ(bracket({0, 0, 0}).coeff, 0);
}

TEST(GT, CoefficientsMatchBrackets) {
  VPt p{Rational(2, 5), Rational(7, 3), Rational(4, 9)};
  for (int d1 = 0; d1 <= 3; ++d1)
    for (int d2 = 0; d2 <= 3; ++d2)
      for (int n = 0; n <= std::min(d1, d2); ++n) {
        GTCoeffs g = gt_coeffs({d1, d2, n});
        EXPECT_EQ(eval_v(g.c, p), c_direct(d1, d2, n, p));
        EXPECT_EQ(eval_v(g.a, p), br(p, 0, 0, d2 - n) * br(p, 0, 1, d1 - d2 - n + 1));
        Rational b2 = br(p, 0, 0, d1 - n) * br(p, 0, 1, d1 - d2 - n) * br(p, 0, 1, d1 - n + 1) *
                      br(p, 1, 0, -d1 + n + 1) / (br(p, 0, 1, d1 - 2 * n) * br(p, 0, 1, d1 - 2 * n + 1));
        EXPECT_EQ(eval_v(g.b2, p), b2);
      }
}

TEST(GT, TermsExact) {
  for (int d1 = 0; d1 <= 4; ++d1)
    for (int d2 = 0; d2 <= 4; ++d2)
      for (int n = 0; n <= std::min(d1, d2); ++n) EXPECT_TRUE(verify_terms(d1, d2, n)) << d1 << d2 << n;
}

TEST(GT, TermsPointOracle) {
  VPt p{Rational(3, 5), Rational(9, 7), Rational(5, 12)};
  for (auto [d1, d2, n] : {std::tuple{1, 0, 0}, {2, 2, 1}, {3, 1, 1}, {2, 3, 0}}) {
    Rational vs = rpow(p.v, -d1 * d1 - d2 * d2 + d1 * d2) * rpow(p.x, d1) * rpow(p.y, d2);
    Rational den = rpow((1 - p.v * p.v) * (1 - 1 / (p.v * p.v)), d1 + d2);
    EXPECT_EQ(Iddn_at(d1, d2, n, as_zq(p)), vs * c_direct(d1, d2, n, p) / den);
    EXPECT_NE(Iddn_at(d1, d2, n, as_zq(p)), p.v * vs * c_direct(d1, d2, n, p) / den);
  }
}

TEST(GT, CBarInvariance) {
  for (int d1 = 0; d1 <= 4; ++d1)
    for (int d2 = 0; d2 <= 4; ++d2)
      for (int n = 0; n <= std::min(d1, d2); ++n) EXPECT_TRUE(verify_c_bar_invariance(d1, d2, n));
  VPt p{Rational(2, 7), Rational(3, 4), Rational(6, 5)};
  VPt pb{1 / p.v, 1 / p.x, 1 / p.y};
  EXPECT_EQ(c_direct(3, 2, 1, p), c_direct(3, 2, 1, pb));
  VRational nonsym;
  nonsym.mul_linear({0, 2, 0}, 1);
  VRational b = bar(nonsym);
  b.coeff = -b.coeff;
  EXPECT_FALSE(combined_numerator({nonsym, b}).is_zero());
}

TEST(Numeric, Samples) {
  std::vector<Rejection> rej;
  auto s = draw_samples(4, 99, 2, 50, &rej);
  ASSERT_EQ(s.size(), 4u);
  for (const auto& x : s) {
    EXPECT_GT(x.v, 0.3);
    EXPECT_LT(x.v, 0.7);
    for (double l : {x.l12, x.l23}) {
      EXPECT_GE(l, 20);
      EXPECT_LE(l, 40);
      EXPECT_EQ(l - std::floor(l), 0.5);
    }
  }
  auto again = draw_samples(4, 99, 2, 50);
  EXPECT_EQ(again[2].v, s[2].v);
  EXPECT_FALSE(screen_sample({0.5, 1.5, 0.5}, 3, 50).empty());
  EXPECT_TRUE(screen_sample({0.5, 20.5, 30.5}, 3, 50).empty());
  EXPECT_DOUBLE_EQ(numeric_tolerance(100), 1e-85);
}

TEST(Numeric, GTRelations) {
  auto s = draw_samples(2, 1, 3, 60);
  auto res = verify_gt_representation(3, s, 60);
  EXPECT_EQ(res.size(), 2u * 22u);
  for (const auto& r : res) EXPECT_TRUE(r.pass) << r.check << " " << r.max_residual;
}

TEST(Numeric, CasimirOnHighestWeight) {
  auto res = verify_gt_representation(0, {Sample{0.4, 25.5, 30.5}}, 60);
  bool seen = false;
  for (const auto& r : res)
    if (r.check == "casimir") {
      seen = true;
      EXPECT_TRUE(r.pass);
    }
  EXPECT_TRUE(seen);
}

TEST(Numeric, Whittaker) {
  auto s = draw_samples(2, 2, 3, 60);
  for (const auto& r : verify_whittaker(3, s, 60)) EXPECT_TRUE(r.pass) << r.check << " " << r.max_residual;
}

TEST(Numeric, FlippedExponentFailsE1Only) {
  auto res = verify_whittaker(2, {Sample{0.45, 23.5, 27.5}}, 60, WhittakerExponent::Flipped);
  for (const auto& r : res) {
    bool expect_fail = r.check == "whittaker-E1" || r.check == "dual-E1";
    EXPECT_EQ(r.pass, !expect_fail) << r.check << " " << r.max_residual;
  }
}
