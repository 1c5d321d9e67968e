#include "qchar/toda.hpp"

#include <functional>
#include <stdexcept>

namespace qchar::toda {

namespace {

const ZqMonomial kZ12{1, 1, 0};

FactoredSum with_infinite(FactoredSum x, int shift) {
  FactoredTerm t;
  t *= poch(z1() * qp(shift), kInfinity, -1);
  t *= poch(z2() * qp(shift), kInfinity, -1);
  t *= poch(kZ12 * qp(shift), kInfinity, -1);
  x *= t;
  return x;
}

// weakly decreasing sequences bounded by top, summing to at most budget
void for_each_decreasing(int top, int budget, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> s;
  std::function<void(int, int)> rec = [&](int cap, int left) {
    f(s);
    for (int x = 1; x <= std::min(cap, left); ++x) {
      s.push_back(x);
      rec(x, left - x);
      s.pop_back();
    }
  };
  rec(top, budget);
}

}  // namespace

FactoredSum I_dd(int d1, int d2) {
  if (d1 < 0 || d2 < 0) return {};
  const ZqMonomial inv12{-1, -1, 1};
  FactoredTerm t;
  t *= poch(inv12, d1 + d2, 1);
  t *= poch(qp(1), d1, -1);
  t *= poch(qp(1), d2, -1);
  t *= poch(ZqMonomial{-1, 0, 1}, d1, -1);
  t *= poch(ZqMonomial{0, -1, 1}, d2, -1);
  t *= poch(inv12, d1, -1);
  t *= poch(inv12, d2, -1);
  return FactoredSum(t);
}

FactoredSum Jbar(int d1, int d2) { return with_infinite(I_dd(d1, d2), 0); }
FactoredSum J(int d1, int d2) { return with_infinite(I_dd(d1, d2), 1); }

bool verify_toda(int d1, int d2) {
  FactoredSum I = I_dd(d1, d2);
  FactoredSum lhs = fs_scale(I, {-1, 0, d1}) - fs_scale(I, {-1, 0, 0}) + fs_scale(I, qp(d2 - d1)) - I +
                    fs_scale(I, {0, 1, -d2}) - fs_scale(I, z2());
  FactoredSum rhs = fs_scale(I_dd(d1 - 1, d2), qp(d2 - d1)) + fs_scale(I_dd(d1, d2 - 1), {0, 1, -d2});
  return rational_identity(lhs, rhs);
}

FactoredSum I_fermionic_fs(int d1, int d2, int zmax) {
  FactoredSum out;
  for_each_decreasing(d1, zmax, [&](const std::vector<int>& n) {
    int sn = 0;
    for (int x : n) sn += x;
    for_each_decreasing(d2, zmax - sn, [&](const std::vector<int>& m) {
      FactoredTerm t;
      int sm = 0, e = 0;
      for (int x : m) sm += x;
      size_t len = std::max(n.size(), m.size());
      for (size_t i = 0; i < len; ++i) {
        int a = i < n.size() ? n[i] : 0, b = i < m.size() ? m[i] : 0;
        e += a * a + b * b - a * b;
      }
      t.mono = {-sn, -sm, e};
      auto chain = [&](int top, const std::vector<int>& s) {
        int prev = top;
        for (int x : s) {
          t *= poch(qp(1), prev - x, -1);
          prev = x;
        }
        t *= poch(qp(1), prev, -1);
      };
      chain(d1, n);
      chain(d2, m);
      out.add(t);
    });
  });
  return out;
}

Series2 I_fermionic(int d1, int d2, int zmax, int qlo, int qhi) {
  return expand(I_fermionic_fs(d1, d2, zmax), {-1, -1}, zmax, qlo, qhi);
}

bool verify_Irec(int d1, int d2) {
  FactoredSum rhs;
  for (int n1 = 0; n1 <= d1; ++n1)
    for (int n2 = 0; n2 <= d2; ++n2) {
      FactoredTerm t;
      t.mono = {-n1, -n2, n1 * n1 + n2 * n2 - n1 * n2};
      t *= poch(qp(1), d1 - n1, -1);
      t *= poch(qp(1), d2 - n2, -1);
      FactoredSum s(t);
      s *= I_dd(n1, n2);
      rhs += s;
    }
  return rational_identity(I_dd(d1, d2), rhs);
}

FactoredSum I_ddn(int d1, int d2, int n) {
  if (n < 0 || n > std::min(d1, d2)) return {};
  FactoredTerm t;
  t *= poch(qp(1), d1 - n, -1);
  t *= poch(qp(1), d2 - n, -1);
  t *= poch(qp(1), n, -1);
  t *= poch(z2() * qp(1), kInfinity, 1);
  t *= poch(ZqMonomial{-1, 0, 1}, d1 - n, -1);
  t *= poch(ZqMonomial{-1, -1, 1}, n, -1);
  t *= poch(z2() * qp(d1 - 2 * n + 1), kInfinity, -1);
  t *= poch(ZqMonomial{0, -1, -d1 + 2 * n + 1}, d2 - n, -1);
  t *= poch(z2() * qp(1), d1 - n, -1);
  t *= poch(ZqMonomial{0, -1, 1}, n, -1);
  return normalize_poch_ratios(FactoredSum(t));
}

bool verify_I_sum(int d1, int d2) {
  FactoredSum rhs;
  for (int n = 0; n <= std::min(d1, d2); ++n) rhs += I_ddn(d1, d2, n);
  return rational_identity(I_dd(d1, d2), rhs);
}

// ---- Gelfand-Tsetlin data

bool valid(const GTIndex& i) { return i.d1 >= 0 && i.d2 >= 0 && i.n >= 0 && i.n <= std::min(i.d1, i.d2); }

LinForm operator+(LinForm a, int c) {
  a.c += c;
  return a;
}
LinForm operator-(LinForm a) { return {-a.a12, -a.a23, -a.c}; }

namespace {

const LinForm kL12{1, 0, 0}, kL23{0, 1, 0}, kL13{1, 1, 0}, kOne{0, 0, 1};

LinForm num(int c) { return {0, 0, c}; }

LaurentPoly3::Key vkey(LinForm a) { return {a.c, a.a12, a.a23}; }

}  // namespace

void mul_bracket(VRational& t, LinForm a, int mult) {
  if (mult == 0) return;
  // [a] = v^{1-a} (1 - v^{2a}) / (1 - v^2)
  auto k = vkey(a);
  t.mono[0] += mult * (1 - k[0]);
  t.mono[1] -= mult * k[1];
  t.mono[2] -= mult * k[2];
  t.mul_linear({2 * k[0], 2 * k[1], 2 * k[2]}, mult);
  t.mul_linear({2, 0, 0}, -mult);
}

void mul_bracket_poch(VRational& t, LinForm a, int len, int mult) {
  for (int i = 0; i < len; ++i) mul_bracket(t, a + i, mult);
}

VRational bracket(LinForm a) {
  VRational t;
  mul_bracket(t, a);
  return t;
}

VRational bar(const VRational& t) {
  VRational out;
  out.coeff = t.coeff;
  for (int i = 0; i < 3; ++i) out.mono[i] = -t.mono[i];
  for (const auto& [b, m] : t.factors) out.mul_linear({-b[0], -b[1], -b[2]}, m);
  return out;
}

std::vector<VRational> to_vxy(const FactoredSum& x) {
  auto img = [](const LaurentPoly3::Key& k) -> LaurentPoly3::Key {
    return {2 * (k[0] + k[1] + k[2]), 2 * k[0], 2 * k[1]};
  };
  std::vector<VRational> out;
  for (const auto& t : linear_terms(x)) {
    VRational u;
    u.coeff = t.coeff;
    u.mono = img(t.mono);
    for (const auto& [b, m] : t.factors) u.mul_linear(img(b), m);
    out.push_back(u);
  }
  return out;
}

GTCoeffs gt_coeffs(const GTIndex& i) {
  if (!valid(i)) throw std::invalid_argument("invalid Gelfand-Tsetlin index");
  const int d1 = i.d1, d2 = i.d2, n = i.n;
  GTCoeffs g;
  mul_bracket(g.a, num(d2 - n));
  mul_bracket(g.a, kL23 + (d1 - d2 - n + 1));

  mul_bracket(g.b1, num(d2 - n + 1));
  mul_bracket(g.b1, num(n));
  mul_bracket(g.b1, kL23 + (-n + 1));
  mul_bracket(g.b1, kL13 + (-n + 2));
  mul_bracket(g.b1, kL23 + (d1 - 2 * n + 1), -1);
  mul_bracket(g.b1, kL23 + (d1 - 2 * n + 2), -1);

  mul_bracket(g.b2, num(d1 - n));
  mul_bracket(g.b2, kL23 + (d1 - d2 - n));
  mul_bracket(g.b2, kL23 + (d1 - n + 1));
  mul_bracket(g.b2, kL12 + (-d1 + n + 1));
  mul_bracket(g.b2, kL23 + (d1 - 2 * n), -1);
  mul_bracket(g.b2, kL23 + (d1 - 2 * n + 1), -1);

  VRational& c = g.c;
  mul_bracket_poch(c, kOne, d1 - n, -1);
  mul_bracket_poch(c, kOne, d2 - n, -1);
  mul_bracket_poch(c, kOne, n, -1);
  // [l23+2]_inf / [l23+d1-2n+2]_inf
  int k = d1 - 2 * n;
  if (k >= 0)
    mul_bracket_poch(c, kL23 + 2, k);
  else
    mul_bracket_poch(c, kL23 + (2 + k), -k, -1);
  mul_bracket_poch(c, kL12 + (-d1 + n + 1), d1 - n, -1);
  mul_bracket_poch(c, kL13 + (-n + 2), n, -1);
  mul_bracket_poch(c, kL23 + 2, d1 - n, -1);
  mul_bracket_poch(c, kL23 + (d1 - d2 - n + 1), d2 - n, -1);
  mul_bracket_poch(c, kL23 + (-n + 1), n, -1);

  g.r = {-d1, -n, n * n - (d1 + 1) * n + d1 + d1 * d1};
  g.s = {d1, d2, -d1 * d1 - d2 * d2 + d1 * d2};
  return g;
}

bool verify_terms(int d1, int d2, int n) {
  GTCoeffs g = gt_coeffs({d1, d2, n});
  VRational rhs = g.c;
  auto k = vkey(g.s);
  for (int i = 0; i < 3; ++i) rhs.mono[i] += k[i];
  rhs.mul_linear({2, 0, 0}, -(d1 + d2));
  rhs.mul_linear({-2, 0, 0}, -(d1 + d2));
  rhs.coeff = -rhs.coeff;
  auto terms = to_vxy(I_ddn(d1, d2, n));
  terms.push_back(rhs);
  return combined_numerator(terms).is_zero();
}

bool verify_c_bar_invariance(int d1, int d2, int n) {
  VRational c = gt_coeffs({d1, d2, n}).c;
  VRational b = bar(c);
  b.coeff = -b.coeff;
  return combined_numerator({c, b}).is_zero();
}

}  // namespace qchar::toda
