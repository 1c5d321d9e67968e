#include "qchar/sl3.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "qchar/toda.hpp"

namespace qchar::sl3 {

namespace {

constexpr Orientation kPlus{1, 1};
const ZqMonomial kZ12{1, 1, 0};

int Q2(int m, int n) { return m * m + n * n - m * n; }

int odeg(const ZqMonomial& m, Orientation o = kPlus) { return o.dir1 * m.m1 + o.dir2 * m.m2; }

FactoredSum scaled(const FactoredSum& x, const ZqMonomial& m, const Rational& c = 1) { return fs_scale(x, m, c); }

FactoredSum subst(const FactoredSum& x, int c1, int c2) {
  if (c1 == 0 && c2 == 0) return x;
  return substitute(x, z1() * qp(c1), z2() * qp(c2));
}

FactoredSum linear(const ZqMonomial& base) {
  FactoredTerm t;
  t *= poch(base, 1, 1);
  return FactoredSum(t);
}

}  // namespace

std::string to_string(const ModuleParams& p) {
  return "(" + std::to_string(p.k1) + "," + std::to_string(p.k2) + ";" + std::to_string(p.l1) + "," +
         std::to_string(p.l2) + "," + std::to_string(p.l3) + ")";
}

bool in_P_U(const ModuleParams& p) {
  return 0 <= p.l1 && p.l1 <= p.k1 && 0 <= p.l2 && p.l2 <= p.k2 && 0 <= p.l3 && p.l3 <= std::min(p.l1, p.l2);
}

bool in_P_V(const ModuleParams& p) {
  return 0 <= p.l1 && p.l1 <= p.k1 && 0 <= p.l2 && p.l2 <= p.k2 && p.l1 <= p.l3 &&
         p.l3 <= std::min(p.l1 + p.l2, p.k1);
}

bool in_R_U(const ModuleParams& p) {
  int t = p.l1 + p.l2 - p.l3;
  return p.k1 <= t && t <= p.k2 && in_P_U(p);
}

bool in_R_V(const ModuleParams& p) {
  int t = p.l1 + p.l2 - p.l3;
  return 0 <= t && t <= p.k2 - p.k1 && in_P_V(p);
}

bool in_Rbar_U(const ModuleParams& p) {
  int t = p.l1 + p.l2 - p.l3;
  return 0 <= t && t <= p.k2 && in_P_U(p);
}

bool in_Rtilde_U(const ModuleParams& p) {
  int t = p.l1 + p.l2 - p.l3;
  return p.k1 - 1 <= t && t <= p.k2 && in_P_U(p);
}

// ---------------------------------------------------------------- X basis

void for_each_X(int k, int l1, int l2, int zmax, int dmax, const std::function<void(const std::vector<int>&)>& f) {
  if (l1 < 0 || l1 + l2 < 0 || k < 0) return;
  std::vector<int> a;
  std::function<void(int, int, int)> rec = [&](int i, int zrem, int drem) {
    int t = i / 2, w = i % 2 ? 2 : 1;
    if (i >= 2 && t > drem) {
      std::vector<int> out = a;
      while (!out.empty() && out.back() == 0) out.pop_back();
      f(out);
      return;
    }
    int cap = k;
    if (i >= 1) cap -= a[i - 1];
    if (i >= 2) cap -= a[i - 2];
    if (i == 0) cap = std::min(cap, l1);
    if (i == 1) cap = std::min(cap, l1 + l2 - a[0]);
    cap = std::min(cap, zrem / w);
    if (t > 0) cap = std::min(cap, drem / t);
    for (int c = 0; c <= cap; ++c) {
      a.push_back(c);
      rec(i + 1, zrem - c * w, drem - c * t);
      a.pop_back();
    }
  };
  rec(0, zmax, dmax);
}

ZqMonomial x_monomial(const std::vector<int>& a) {
  ZqMonomial m;
  for (size_t i = 0; i < a.size(); ++i) {
    int t = static_cast<int>(i / 2);
    if (i % 2 == 0) {
      m = m * ZqMonomial{a[i], 0, t * a[i]};
    } else {
      m = m * ZqMonomial{a[i], a[i], t * a[i]};
    }
  }
  return m;
}

namespace {

// chi_X evaluated at (image1, image2); original z-degree budget enum_zmax must cover the window
Series2 enumerate_X_image(int k, int l1, int l2, int enum_zmax, int zmax, int qlo, int qhi, ZqMonomial img1,
                          ZqMonomial img2) {
  Series2 out(kPlus, zmax, qlo, qhi);
  if (img1.e < 0 || img2.e < 0) throw std::invalid_argument("enumerate_X: negative q-shift");
  for_each_X(k, l1, l2, enum_zmax, qhi, [&](const std::vector<int>& a) {
    ZqMonomial m = x_monomial(a);
    ZqMonomial im = img1.pow(m.m1) * img2.pow(m.m2) * qp(m.e);
    out.add_term(im.m1, im.m2, im.e, 1);
  });
  return out;
}

}  // namespace

Series2 enumerate_X(int k, int l1, int l2, int zmax, int qhi) {
  return enumerate_X_image(k, l1, l2, zmax, zmax, 0, qhi, z1(), z2());
}

// ---------------------------------------------------------------- chi_B

ZqMonomial p_table(int k, int l1, int l2, int m, int n, int s) {
  switch (s) {
    case 0: return {k * m, k * n, 0};
    case 1: return {k * m + l1, k * n, 0};
    case 2: return {k * m + l1 + l2, k * n + l2, 0};
    case 3: return {k * m + l1 + l2, k * n + l1 + l2, 0};
    case 4: return {k * m + l1, k * n + l1 + l2, 0};
    case 5: return {k * m, k * n + l2, 0};
  }
  throw std::invalid_argument("p_table: s out of range");
}

int a_table(int k, int l1, int l2, int m, int n, int s) {
  int base = k * Q2(m, n);
  switch (s) {
    case 0: return base - m * l1 - n * l2;
    case 1: return base + (m - n) * l1 - n * l2;
    case 2: return base + (m - n) * l1 + m * l2;
    case 3: return base + n * l1 + m * l2;
    case 4: return base + n * l1 + (n - m) * l2;
    case 5: return base - m * l1 + (n - m) * l2;
  }
  throw std::invalid_argument("a_table: s out of range");
}

std::vector<PochFactor> d_table(int m, int n, int s) {
  const ZqMonomial Z1 = z1(), Z2 = z2(), I1{-1, 0, 0}, I2{0, -1, 0}, I12{-1, -1, 0};
  auto P = [](ZqMonomial b, int e, int len) { return poch(b * qp(e), len, 1); };
  const int mn = m - n;
  switch (s) {
    case 0:
      return {P(qp(0), 1, n), P(qp(0), 1, mn), P(Z1, 2 * m - n, kInfinity), P(I1, -2 * m + n + 1, mn),
              P(kZ12, m + n, kInfinity), P(I12, -m - n + 1, n), P(Z2, 2 * n - m, mn), P(I2, -2 * n + m + 1, n)};
    case 1:
      return {P(qp(0), 1, n), P(qp(0), 1, mn), P(Z1, 2 * m - n + 1, kInfinity), P(I1, -2 * m + n, mn + 1),
              P(kZ12, m + n, kInfinity), P(I12, -m - n + 1, n), P(Z2, 2 * n - m, mn), P(I2, -2 * n + m + 1, n)};
    case 2:
      return {P(qp(0), 1, n), P(qp(0), 1, mn), P(Z1, 2 * m - n + 1, kInfinity), P(I1, -2 * m + n, mn),
              P(kZ12, m + n + 1, kInfinity), P(I12, -m - n, n + 1), P(Z2, 2 * n - m, mn + 1),
              P(I2, -2 * n + m + 1, n)};
    case 3:
      return {P(qp(0), 1, n), P(qp(0), 1, mn), P(Z1, 2 * m - n + 1, kInfinity), P(I1, -2 * m + n, mn),
              P(kZ12, m + n + 1, kInfinity), P(I12, -m - n, n + 1), P(Z2, 2 * n - m + 1, mn),
              P(I2, -2 * n + m, n + 1)};
    case 4:
      return {P(qp(0), 1, n), P(qp(0), 1, mn - 1), P(Z1, 2 * m - n, kInfinity), P(I1, -2 * m + n + 1, mn),
              P(kZ12, m + n + 1, kInfinity), P(I12, -m - n, n + 1), P(Z2, 2 * n - m + 1, mn),
              P(I2, -2 * n + m, n + 1)};
    case 5:
      return {P(qp(0), 1, n), P(qp(0), 1, mn - 1), P(Z1, 2 * m - n, kInfinity), P(I1, -2 * m + n + 1, mn),
              P(kZ12, m + n, kInfinity), P(I12, -m - n + 1, n), P(Z2, 2 * n - m + 1, mn),
              P(I2, -2 * n + m, n + 1)};
  }
  throw std::invalid_argument("d_table: s out of range");
}

FactoredTerm chi_B_term(int k, int l1, int l2, int m, int n, int s) {
  FactoredTerm t;
  t.mono = p_table(k, l1, l2, m, n, s) * qp(a_table(k, l1, l2, m, n, s));
  for (auto f : d_table(m, n, s)) {
    f.exponent = -f.exponent;
    t.factors.push_back(f);
  }
  return t;
}

FactoredSum chi_B_fs(int k, int A, int B, int zmax, ZqMonomial image1, ZqMonomial image2, Orientation o) {
  const int l1 = A, l2 = B - A;
  const int g1 = odeg(image1, o), g2 = odeg(image2, o);
  // every denominator factor expands with nonnegative oriented degree, so a term never goes below its
  // substituted p-monomial; that monomial grows at least like k*m*min(g1, g1+g2)
  const int growth = std::min(g1, g1 + g2);
  int lmin = 0;
  for (int s = 0; s < 6; ++s) {
    ZqMonomial p = p_table(0, l1, l2, 0, 0, s);
    lmin = std::min(lmin, p.m1 * g1 + p.m2 * g2);
  }
  int mmax;
  if (k >= 1) {
    if (growth < 1) throw ExpansionError("chi_B: substitution does not increase degree");
    mmax = zmax - lmin < 0 ? -1 : (zmax - lmin) / (k * growth);
  } else {
    mmax = 4 * (zmax - lmin + 2);
  }
  FactoredSum out;
  for (int m = 0; m <= mmax; ++m)
    for (int n = 0; n <= m; ++n)
      for (int s = 0; s < 6; ++s) {
        FactoredSum t(chi_B_term(k, l1, l2, m, n, s));
        if (t.empty()) continue;
        if (!(image1 == z1()) || !(image2 == z2())) t = substitute(t, image1, image2);
        for (const auto& term : t.terms()) {
          int lo = min_oriented_degree(term, o);
          assert(k < 1 || lo >= k * m * growth + lmin);
          if (lo <= zmax) out.add(term);
        }
      }
  return out;
}

Series2 chi_B(int k, int A, int B, int zmax, int qlo, int qhi) {
  return expand(chi_B_fs(k, A, B, zmax), kPlus, zmax, qlo, qhi);
}

Series2 chi_X_at(ChiBackend b, int k, int l1, int l2, int zmax, int qlo, int qhi, ZqMonomial img1,
                 ZqMonomial img2) {
  if (b == ChiBackend::Enumerate) {
    // images of z1 and z1 z2 have degree >= 1, so the original degree never exceeds 2 zmax
    return enumerate_X_image(k, l1, l2, 2 * zmax, zmax, qlo, qhi, img1, img2);
  }
  return expand(chi_B_fs(k, l1, l1 + l2, zmax, img1, img2), kPlus, zmax, qlo, qhi);
}

Series2 chi_X(ChiBackend b, int k, int l1, int l2, int zmax, int qlo, int qhi) {
  return chi_X_at(b, k, l1, l2, zmax, qlo, qhi, z1(), z2());
}

bool verify_sr(ChiBackend b, int k, int l1, int l2, int zmax, int qlo, int qhi) {
  Series2 lhs = chi_X(b, k, l1, l2, zmax, qlo, qhi);
  Series2 rhs = chi_X(b, k, l1 - 1, l2 + 1, zmax, qlo, qhi);
  const ZqMonomial img2{0, -1, 1};
  if (b == ChiBackend::Bosonic) {
    // out-of-range subscripts give terms of negative degree, so multiply before expanding
    rhs += expand(scaled(chi_B_fs(k, l2, k - l1, zmax - l1, kZ12, img2), z1(l1)), kPlus, zmax, qlo, qhi);
  } else if (zmax >= l1) {
    rhs += chi_X_at(b, k, l2, k - l1 - l2, zmax - l1, qlo, qhi, kZ12, img2).monomial_shift(l1, 0, 0);
  }
  return series_eq(lhs, rhs);
}

// ---------------------------------------------------------------- phi_B, psi_B

namespace {

enum class Which { Phi, Psi };

FactoredSum outer_term(int i, int k2, int l2, bool second) {
  FactoredTerm t;
  if (!second) {
    t.mono = {0, i * k2, i * i * k2 - i * l2};
    t *= poch(qp(1), i, -1);
    t *= poch(z2() * qp(2 * i), kInfinity, -1);
    t *= poch(ZqMonomial{0, -1, -2 * i + 1}, i, -1);
  } else {
    t.mono = {0, i * k2 + l2, i * i * k2 + i * l2};
    t *= poch(qp(1), i, -1);
    t *= poch(z2() * qp(2 * i + 1), kInfinity, -1);
    t *= poch(ZqMonomial{0, -1, -2 * i}, i + 1, -1);
  }
  return FactoredSum(t);
}

FactoredSum build_B(Which w, const ModuleParams& p, int zmax, const SumOptions& opt) {
  if (p.k2 < 1) throw std::invalid_argument("phi_B/psi_B: need k2 >= 1");
  const int imax = std::max(zmax, 0) + opt.imax_buffer;
  // inner arguments of the two sums
  auto inner = [&](int i, bool second, int budget) {
    ZqMonomial a1, a2;
    if (w == Which::Phi) {
      if (!second) {
        a1 = kZ12 * qp(i - 1);
        a2 = ZqMonomial{0, -1, -2 * i + 1};
      } else {
        a1 = z1() * qp(-i - 1);
        a2 = z2() * qp(2 * i + 1);
      }
      return chi_B_fs(p.k1, p.l3, p.l1, budget, a1, a2);
    }
    if (!second) {
      a1 = z1() * qp(-i);
      a2 = z2() * qp(2 * i);
    } else {
      a1 = kZ12 * qp(i);
      a2 = ZqMonomial{0, -1, -2 * i};
    }
    return chi_B_fs(p.k1, p.l1, p.l3, budget, a1, a2);
  };
  // lower bound for any inner chi_B term: the l-part of its p-monomial under the worst image
  const int A = w == Which::Phi ? p.l3 : p.l1, B = w == Which::Phi ? p.l1 : p.l3;
  int inner_lb = 0;
  for (int s = 0; s < 6; ++s) {
    ZqMonomial pm = p_table(0, A, B - A, 0, 0, s);
    inner_lb = std::min({inner_lb, pm.m1 + pm.m2, 2 * pm.m1 - pm.m2});
  }
  FactoredSum out;
  for (int i = 0; i <= imax; ++i)
    for (bool second : {false, true}) {
      FactoredSum o = outer_term(i, p.k2, p.l2, second);
      int olo = min_oriented_degree(o.terms().front(), kPlus);
      if (i == imax && olo + inner_lb <= zmax)
        throw ExpansionError("phi_B/psi_B: outer sum not exhausted at i = " + std::to_string(imax) +
                             "; increase the i buffer");
      if (olo + inner_lb > zmax) continue;
      FactoredSum in = inner(i, second, zmax - olo);
      o *= in;
      out += o;
    }
  return out;
}

struct Key {
  int which;
  ModuleParams p;
  int zmax, qlo, qhi, c1, c2;
  ZqMonomial mono;
  friend auto operator<=>(const Key&, const Key&) = default;
};

std::mutex cache_mu;
std::map<std::tuple<int, ModuleParams, int>, FactoredSum> fs_cache;
std::map<Key, Series2> series_cache;

const FactoredSum& cached_fs(Which w, const ModuleParams& p, int zmax) {
  auto key = std::make_tuple(static_cast<int>(w), p, zmax);
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = fs_cache.find(key);
    if (it != fs_cache.end()) return it->second;
  }
  FactoredSum x;
  for (SumOptions opt;; opt.imax_buffer *= 2) {
    try {
      x = build_B(w, p, zmax, opt);
      break;
    } catch (const ExpansionError&) {
      if (opt.imax_buffer > 256) throw;
    }
  }
  std::lock_guard<std::mutex> lock(cache_mu);
  return fs_cache.emplace(key, std::move(x)).first->second;
}

// mono * F(q^c1 z1, q^c2 z2) on the window, F in {phi_B, psi_B}
Series2 series_B(Which w, const ModuleParams& p, int zmax, int qlo, int qhi, int c1, int c2,
                 ZqMonomial mono = {}) {
  Key key{static_cast<int>(w), p, zmax, qlo, qhi, c1, c2, mono};
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = series_cache.find(key);
    if (it != series_cache.end()) return it->second;
  }
  Series2 s = expand(scaled(subst(cached_fs(w, p, zmax - odeg(mono)), c1, c2), mono), kPlus, zmax, qlo, qhi);
  std::lock_guard<std::mutex> lock(cache_mu);
  series_cache.emplace(key, s);
  return s;
}

}  // namespace

FactoredSum phi_B_fs(const ModuleParams& p, int zmax, const SumOptions& opt) {
  return build_B(Which::Phi, p, zmax, opt);
}
FactoredSum psi_B_fs(const ModuleParams& p, int zmax, const SumOptions& opt) {
  return build_B(Which::Psi, p, zmax, opt);
}

Series2 phi_B(const ModuleParams& p, int zmax, int qlo, int qhi, int c1, int c2) {
  return series_B(Which::Phi, p, zmax, qlo, qhi, c1, c2);
}
Series2 psi_B(const ModuleParams& p, int zmax, int qlo, int qhi, int c1, int c2) {
  return series_B(Which::Psi, p, zmax, qlo, qhi, c1, c2);
}

const char* ses_name(SesKind k) {
  switch (k) {
    case SesKind::a: return "a";
    case SesKind::b: return "b";
    case SesKind::c: return "c";
    case SesKind::d: return "d";
  }
  return "?";
}

namespace {

struct Window {
  int zmax, qlo, qhi;
};

// one side of a recursion: mono * F_params(q^c1 z1, q^c2 z2), or zero
struct Piece {
  Which w;
  ModuleParams p;
  int c1 = 0, c2 = 0;
  ZqMonomial mono{};
  bool zero = false;
};

Series2 eval(const Piece& x, const Window& win) {
  if (x.zero) return Series2(kPlus, win.zmax, win.qlo, win.qhi);
  return series_B(x.w, x.p, win.zmax, win.qlo, win.qhi, x.c1, x.c2, x.mono);
}

Piece clamp(Piece x) {
  auto& p = x.p;
  if (p.l1 < 0 || p.l2 < 0 || p.l3 < 0) {
    x.zero = true;
    return x;
  }
  if (x.w == Which::Phi) p.l3 = std::min(p.l3, std::min(p.l1, p.l2));
  if (x.w == Which::Psi) p.l3 = std::min(p.l3, p.l1 + p.l2);
  return x;
}

// lhs and the two right-hand pieces of the recursion; clamped indices when `clamped`
std::array<Piece, 3> relation(SesKind kind, const ModuleParams& q, bool clamped) {
  const int k1 = q.k1, k2 = q.k2, l1 = q.l1, l2 = q.l2, l3 = q.l3;
  auto P = [&](Which, int a, int b, int c) { return ModuleParams{k1, k2, a, b, c}; };
  switch (kind) {
    case SesKind::a:
      return {Piece{Which::Phi, q},
              Piece{Which::Phi, P(Which::Phi, l1, l2 - 1, clamped ? std::min(l3, l2 - 1) : l3)},
              Piece{Which::Psi, P(Which::Psi, l3, k2 - l2, l1), -1, 1, z2(l2)}};
    case SesKind::b:
      return {Piece{Which::Psi, q},
              Piece{Which::Psi, P(Which::Psi, l1, l2 - 1, clamped ? std::min(l3, l1 + l2 - 1) : l3)},
              Piece{Which::Phi, P(Which::Phi, l3, k2 - l2, l1), 0, 1, z2(l2)}};
    case SesKind::c:
      return {Piece{Which::Phi, q}, Piece{Which::Phi, P(Which::Phi, l1, l2, l3 - 1)},
              Piece{Which::Psi,
                    P(Which::Psi, l1 - l3, l2 - l3, clamped ? std::min(k1 - l3, l1 + l2 - 2 * l3) : k1 - l3), 0, 0,
                    ZqMonomial{l3, l3, -l3}}};
    case SesKind::d:
      return {Piece{Which::Psi, q},
              Piece{Which::Psi, P(Which::Psi, l1 - 1, l2, clamped ? std::min(l3, l1 + l2 - 1) : l3)},
              Piece{Which::Phi, P(Which::Phi, k1 - l1, l1 + l2, l3 - l1), 1, 0, z1(l1)}};
  }
  throw std::invalid_argument("relation: bad kind");
}

}  // namespace

bool verify_B_relation(SesKind kind, const ModuleParams& p, int zmax, int qlo, int qhi) {
  Window win{zmax, qlo, qhi};
  auto r = relation(kind, p, false);
  return series_eq(eval(r[0], win), eval(r[1], win) + eval(r[2], win));
}

bool ses_region(SesKind kind, const ModuleParams& p) {
  switch (kind) {
    case SesKind::a: return in_R_U(p);
    case SesKind::b: return in_R_V(p);
    case SesKind::c: return in_Rbar_U(p) && (p.l1 + p.l2 - p.l3 != p.k2 || p.l3 == 0);
    case SesKind::d: return in_R_V(p);
  }
  return false;
}

namespace {

// the character itself: phi_B on the tilde region, the fermionic formula at l3 = min(l1,l2), psi_B on R_V
Series2 eval_character(const Piece& x, const Window& win) {
  if (x.zero) return Series2(kPlus, win.zmax, win.qlo, win.qhi);
  const auto& p = x.p;
  if (x.w == Which::Psi) {
    if (!in_R_V(p)) throw std::invalid_argument("no character formula for psi at " + to_string(p));
    return eval(x, win);
  }
  if (in_Rtilde_U(p)) return eval(x, win);
  if (!in_P_U(p) || p.l3 != std::min(p.l1, p.l2))
    throw std::invalid_argument("no character formula for phi at " + to_string(p));
  FactoredSum f = fermionic_F_fs(p.k1, p.k2, p.l1, p.l2, win.zmax - odeg(x.mono));
  return expand(scaled(subst(f, x.c1, x.c2), x.mono), kPlus, win.zmax, win.qlo, win.qhi);
}

}  // namespace

bool verify_SES(SesKind kind, const ModuleParams& p, int zmax, int qlo, int qhi, SesOracle oracle) {
  if (!ses_region(kind, p)) throw std::invalid_argument("verify_SES: parameters outside the recursion's region");
  Window win{zmax, qlo, qhi};
  auto r = relation(kind, p, true);
  for (auto& x : r) x = clamp(x);
  auto ev = [&](const Piece& x) { return oracle == SesOracle::Character ? eval_character(x, win) : eval(x, win); };
  return series_eq(ev(r[0]), ev(r[1]) + ev(r[2]));
}

Series2 phi_clamped(ModuleParams p, int zmax, int qlo, int qhi, int c1, int c2) {
  return eval(clamp(Piece{Which::Phi, p, c1, c2}), {zmax, qlo, qhi});
}

Series2 psi_clamped(ModuleParams p, int zmax, int qlo, int qhi, int c1, int c2) {
  return eval(clamp(Piece{Which::Psi, p, c1, c2}), {zmax, qlo, qhi});
}

namespace {

bool tc_side(const ModuleParams& p) { return p.l1 + p.l2 - p.l3 != p.k2 || p.l3 == 0; }

int classify(const Piece& from, const Piece& to) {
  const auto& p = from.p;
  if (!to.zero) return from.w == Which::Phi ? 5 : 6;
  if (from.w == Which::Psi) return p.l1 < 0 ? 1 : p.l2 < 0 ? 2 : 0;
  return p.l2 < 0 ? 3 : p.l3 < 0 ? 4 : 0;
}

}  // namespace

std::vector<BoundaryCheck> boundary_checks(int k1, int k2) {
  std::vector<BoundaryCheck> out;
  for (int l1 = 0; l1 <= k1; ++l1)
    for (int l2 = 0; l2 <= k2; ++l2)
      for (int l3 = 0; l3 <= k1 + k2; ++l3)
        for (auto kind : {SesKind::a, SesKind::b, SesKind::c, SesKind::d}) {
          ModuleParams p{k1, k2, l1, l2, l3};
          bool used = kind == SesKind::a   ? in_R_U(p)
                      : kind == SesKind::c ? in_Rtilde_U(p) && tc_side(p)
                                           : in_R_V(p);
          if (!used) continue;
          auto raw = relation(kind, p, false), thm = relation(kind, p, true);
          for (int j = 1; j <= 2; ++j) {
            Piece to = clamp(thm[j]);
            if (!to.zero && to.p == raw[j].p) continue;
            BoundaryCheck c{classify(raw[j], to), raw[j].w == Which::Phi, raw[j].p, to.p, to.zero};
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
          }
        }
  return out;
}

std::vector<BoundaryFailure> verify_boundary(int k1, int k2, int zmax, int qlo, int qhi) {
  std::vector<BoundaryFailure> bad;
  for (const auto& c : boundary_checks(k1, k2)) {
    Which w = c.phi ? Which::Phi : Which::Psi;
    Series2 a = series_B(w, c.from, zmax, qlo, qhi, 0, 0);
    bool ok = c.to_zero ? a.is_zero() : series_eq(a, series_B(w, c.to, zmax, qlo, qhi, 0, 0));
    if (!ok || c.item == 0) bad.push_back({c.item, c.from});
  }
  return bad;
}

bool verify_boundary_ratio(int m, int n, int i) {
  FactoredTerm num, den;
  for (const auto& f : d_table(m, n, 0)) num *= f;
  for (auto f : d_table(m, m - n, 5)) {
    f.exponent = -f.exponent;
    den *= f;
  }
  FactoredSum lhs = substitute(FactoredSum(num), z1() * qp(-i), z2() * qp(2 * i));
  lhs *= substitute(FactoredSum(den), kZ12 * qp(i), ZqMonomial{0, -1, -2 * i});
  lhs = normalize_poch_ratios(lhs);
  FactoredTerm r;
  r *= poch(qp(n), 1, 1);
  r *= poch(z2() * qp(n + 2 * i), 1, -1);
  return rational_identity(lhs, FactoredSum(r));
}

// ---------------------------------------------------------------- fermionic

FactoredSum fermionic_F_fs(int k1, int k2, int l1, int l2, int zmax) {
  std::vector<int> m(k1, 0), n(k2, 0);
  FactoredSum out;
  auto emit = [&]() {
    int e = 0, w1 = 0, w2 = 0;
    for (int i = 1; i <= k1; ++i) {
      w1 += i * m[i - 1];
      e -= std::min(l1, i) * m[i - 1];
      for (int j = 1; j <= k1; ++j) e += std::min(i, j) * m[i - 1] * m[j - 1];
      for (int j = 1; j <= k2; ++j) e -= std::min(i, j) * m[i - 1] * n[j - 1];
    }
    for (int i = 1; i <= k2; ++i) {
      w2 += i * n[i - 1];
      e -= std::min(l2, i) * n[i - 1];
      for (int j = 1; j <= k2; ++j) e += std::min(i, j) * n[i - 1] * n[j - 1];
    }
    FactoredTerm t;
    t.mono = {w1, w2, e};
    for (int c : m) t *= poch(qp(1), c, -1);
    for (int c : n) t *= poch(qp(1), c, -1);
    out.add(t);
  };
  std::function<void(int, int)> rec = [&](int idx, int budget) {
    if (idx == k1 + k2) {
      emit();
      return;
    }
    int weight = idx < k1 ? idx + 1 : idx - k1 + 1;
    int& slot = idx < k1 ? m[idx] : n[idx - k1];
    for (int c = 0; c * weight <= budget; ++c) {
      slot = c;
      rec(idx + 1, budget - c * weight);
    }
    slot = 0;
  };
  rec(0, zmax);
  return out;
}

Series2 fermionic_F(int k1, int k2, int l1, int l2, int zmax, int qlo, int qhi) {
  return expand(fermionic_F_fs(k1, k2, l1, l2, zmax), kPlus, zmax, qlo, qhi);
}

// ---------------------------------------------------------------- six-term formulas

namespace {

// Jbar_{d1,d2}(w1, w2) times w1^a w2^b
FactoredSum jbar_w(int d1, int d2, int a, int b) {
  FactoredSum j = substitute(toda::Jbar(d1, d2), z1() * qp(2 * d1 - d2), z2() * qp(2 * d2 - d1));
  return scaled(j, {a, b, a * (2 * d1 - d2) + b * (2 * d2 - d1)});
}

FactoredSum times_linear(const FactoredSum& x, const ZqMonomial& base) { return x * linear(base); }

}  // namespace

FactoredSum A_s(int s, int d1, int d2) {
  if (d1 < 0 || d2 < 0) return {};
  static const int fa[6][3] = {{0, 0, 1}, {1, 0, -1}, {2, 1, 1}, {2, 2, -1}, {1, 2, 1}, {0, 1, -1}};
  if (s < 0 || s > 5) throw std::invalid_argument("A_s: s out of range");
  FactoredSum j = jbar_w(d1, d2, fa[s][0], fa[s][1]);
  return scaled(j, {}, fa[s][2]);
}

FactoredSum B_s(int s, int e1, int e2) {
  if (s < 0 || s > 5) throw std::invalid_argument("B_s: s out of range");
  static const int shift[6][2] = {{0, 0}, {0, 0}, {1, 1}, {1, 1}, {0, 1}, {0, 1}};
  const int d1 = e1 + shift[s][0], d2 = e2 + shift[s][1];
  if (d1 < 0 || d2 < 0) return {};
  FactoredSum D;
  switch (s) {
    case 0: D = scaled(times_linear(jbar_w(d1, d2, 0, 1), {0, -1, d1 - d2}), {}, -1); break;
    case 1: D = times_linear(jbar_w(d1, d2, 2, 1), {-1, -1, -d1}); break;
    case 2: D = scaled(times_linear(jbar_w(d1, d2, 1, 0), qp(d2)), {}, -1); break;
    case 3: D = times_linear(jbar_w(d1, d2, 1, 2), {0, -1, d1 - d2}); break;
    case 4: D = scaled(times_linear(jbar_w(d1, d2, 2, 2), {-1, -1, -d1}), {}, -1); break;
    case 5: D = times_linear(jbar_w(d1, d2, 0, 0), qp(d2)); break;
  }
  // the table gives B at (z1, q z2)
  return substitute(D, z1(), z2() * qp(-1));
}

namespace {

std::array<ZqMonomial, 6> six_prefactors(int l1, int l2, int d1, int d2) {
  return {ZqMonomial{0, 0, -l1 * d1 - l2 * d2},
          ZqMonomial{l1, 0, l1 * (d1 - d2) - l2 * d2},
          ZqMonomial{l1 + l2, l2, l1 * (d1 - d2) + l2 * d1},
          ZqMonomial{l1 + l2, l1 + l2, l1 * d2 + l2 * d1},
          ZqMonomial{l1, l1 + l2, l2 * (d2 - d1) + l1 * d2},
          ZqMonomial{0, l2, -l1 * d1 - l2 * (d1 - d2)}};
}

FactoredSum six_term_sum(int k, int l1, int l2, int zmax, bool use_B) {
  int lmin = std::min({0, l1, l2, l1 + l2});
  // each summand has oriented degree >= (k+1)(d1+d2) + 2 lmin - 2
  int dmax = (zmax - 2 * lmin + 2) / (k + 1) + 1;
  FactoredSum out;
  const int dmin = use_B ? -1 : 0;
  for (int d1 = dmin; d1 <= dmax; ++d1)
    for (int d2 = dmin; d1 + d2 <= dmax; ++d2) {
      auto pre = six_prefactors(l1, l2, d1, d2);
      ZqMonomial lead{k * d1, k * d2, k * Q2(d1, d2)};
      for (int s = 0; s < 6; ++s) {
        FactoredSum x = scaled(use_B ? B_s(s, d1, d2) : A_s(s, d1, d2), lead * pre[s]);
        for (const auto& t : x.terms()) {
          int lo = min_oriented_degree(t, kPlus);
          if (d1 + d2 == dmax && lo <= zmax)
            throw ExpansionError("six-term sum: (d1,d2) range not exhausted");
          if (lo <= zmax) out.add(t);
        }
      }
    }
  return out;
}

}  // namespace

FactoredSum six_term_psi_fs(int k, int l1, int l2, int zmax) { return six_term_sum(k, l1, l2, zmax, false); }
FactoredSum six_term_phi_fs(int k, int l1, int l2, int zmax) { return six_term_sum(k, l1, l2, zmax, true); }

Series2 six_term_psi(int k, int l1, int l2, int zmax, int qlo, int qhi) {
  return expand(six_term_psi_fs(k, l1, l2, zmax), kPlus, zmax, qlo, qhi);
}
Series2 six_term_phi(int k, int l1, int l2, int zmax, int qlo, int qhi) {
  return expand(six_term_phi_fs(k, l1, l2, zmax), kPlus, zmax, qlo, qhi);
}

std::vector<int> verify_AB_relations(AbGroup g, int d1, int d2, int zmax, int qlo, int qhi) {
  auto A = [](int s, int a, int b) { return A_s(s, a, b); };
  auto B = [](int s, int a, int b) { return B_s(s, a, b); };
  auto L = [](const ZqMonomial& base, const FactoredSum& x) { return times_linear(x, base); };
  auto Sh = [](const FactoredSum& x, int c1, int c2) { return subst(x, c1, c2); };
  const ZqMonomial qd1 = qp(d1), qd2 = qp(d2);
  std::array<std::pair<FactoredSum, FactoredSum>, 6> rel;
  switch (g) {
    case AbGroup::AShiftZ2: {
      const ZqMonomial u{-1, -1, -d1}, v{0, -1, d1 - d2};
      rel = {{{L(qd2, A(0, d1, d2)), Sh(B(5, d1, d2 - 1), 0, 1)},
              {L(qd2, A(1, d1, d2)), Sh(B(2, d1 - 1, d2 - 1), 0, 1)},
              {L(u, A(2, d1, d2)), Sh(B(1, d1, d2), 0, 1)},
              {L(u, A(3, d1, d2)), Sh(B(4, d1, d2 - 1), 0, 1)},
              {L(v, A(4, d1, d2)), Sh(B(3, d1 - 1, d2 - 1), 0, 1)},
              {L(v, A(5, d1, d2)), Sh(B(0, d1, d2), 0, 1)}}};
      break;
    }
    case AbGroup::AShiftZ1: {
      const ZqMonomial u{-1, 0, d2 - d1}, v{-1, -1, -d2};
      rel = {{{L(qd1, A(0, d1, d2)), Sh(B(1, d1 - 1, d2), 1, 0)},
              {L(u, A(1, d1, d2)), Sh(B(0, d1, d2), 1, 0)},
              {L(u, A(2, d1, d2)), Sh(B(3, d1 - 1, d2 - 1), 1, 0)},
              {L(v, A(3, d1, d2)), Sh(B(2, d1 - 1, d2), 1, 0)},
              {L(v, A(4, d1, d2)), Sh(B(5, d1, d2), 1, 0)},
              {L(qd1, A(5, d1, d2)), Sh(B(4, d1 - 1, d2 - 1), 1, 0)}}};
      break;
    }
    case AbGroup::BToA: {
      const ZqMonomial u{-1, -1, -d1}, v{0, -1, d1 - d2};
      const ZqMonomial c1{-1, -1, -d1 + 1}, c2{0, -1, d1 - d2 + 1}, c3 = qp(d2 + 1);
      rel = {{{L(qd2, B(0, d1, d2)), scaled(A(3, d1 - 1, d2 - 1), c1) + Sh(A(5, d1, d2 - 1), -1, 1)},
              {L(qd2, B(1, d1, d2)), scaled(A(4, d1, d2 - 1), c2) + Sh(A(2, d1, d2 - 1), -1, 1)},
              {L(u, B(2, d1, d2)), scaled(A(5, d1 + 1, d2), c2) + Sh(A(1, d1 + 1, d2), -1, 1)},
              {L(u, B(3, d1, d2)), scaled(A(0, d1 + 1, d2 + 1), c3) + Sh(A(4, d1 + 1, d2), -1, 1)},
              {L(v, B(4, d1, d2)), scaled(A(1, d1, d2 + 1), c3) + Sh(A(3, d1, d2), -1, 1)},
              {L(v, B(5, d1, d2)), scaled(A(2, d1 - 1, d2), c1) + Sh(A(0, d1, d2), -1, 1)}}};
      break;
    }
  }
  std::vector<int> bad;
  for (int j = 0; j < 6; ++j) {
    if (!series_eq(expand(rel[j].first, kPlus, zmax, qlo, qhi), expand(rel[j].second, kPlus, zmax, qlo, qhi)))
      bad.push_back(j);
  }
  return bad;
}

const char* vk_name(VkBackend b) {
  switch (b) {
    case VkBackend::Fermionic: return "fermionic";
    case VkBackend::Bosonic: return "bosonic";
    case VkBackend::PsiGl: return "psi-six-term";
    case VkBackend::PsiB: return "psi-B";
  }
  return "?";
}

FactoredSum ch_Vk_fs(int k, int zmax, VkBackend b) {
  if (k < 0) throw std::invalid_argument("ch_Vk: negative level");
  switch (b) {
    case VkBackend::Fermionic: return fermionic_F_fs(k, k, 0, 0, zmax);
    case VkBackend::PsiGl: return six_term_psi_fs(k, 0, 0, zmax);
    case VkBackend::PsiB: return psi_B_fs({k, k, 0, 0, 0}, zmax);
    case VkBackend::Bosonic: break;
  }
  FactoredSum out;
  // J_{d1,d2} has oriented degree >= d1 + d2
  int dmax = zmax / (k + 1) + 1;
  for (int d1 = 0; d1 <= dmax; ++d1)
    for (int d2 = 0; d1 + d2 <= dmax; ++d2) {
      FactoredSum j = substitute(toda::J(d1, d2), z1() * qp(2 * d1 - d2), z2() * qp(2 * d2 - d1));
      j = scaled(j, {k * d1, k * d2, k * Q2(d1, d2)});
      for (const auto& t : j.terms()) {
        int lo = min_oriented_degree(t, kPlus);
        if (d1 + d2 == dmax && lo <= zmax) throw ExpansionError("ch_Vk: (d1,d2) range not exhausted");
        if (lo <= zmax) out.add(t);
      }
    }
  return out;
}

Series2 ch_Vk(int k, int zmax, int qlo, int qhi, VkBackend b) {
  return expand(ch_Vk_fs(k, zmax, b), kPlus, zmax, qlo, qhi);
}

bool verify_Vrec(int k, int zmax, int qlo, int qhi, VkBackend b) {
  if (k < 1) throw std::invalid_argument("verify_Vrec: need k >= 1");
  FactoredSum rhs;
  for (int n = 0; k * n <= zmax; ++n)
    for (int m = 0; k * (n + m) <= zmax; ++m) {
      FactoredTerm t;
      t.mono = {k * n, k * m, k * Q2(n, m)};
      t *= poch(qp(1), n, -1);
      t *= poch(qp(1), m, -1);
      FactoredSum inner = subst(ch_Vk_fs(k - 1, zmax - k * (n + m), b), 2 * n - m, 2 * m - n);
      rhs += FactoredSum(t) * inner;
    }
  return series_eq(ch_Vk(k, zmax, qlo, qhi, b), expand(rhs, kPlus, zmax, qlo, qhi));
}

}  // namespace qchar::sl3
