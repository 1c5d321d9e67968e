#include "qchar/qcore.hpp"

#include <algorithm>
#include <numeric>

namespace qchar {
namespace {

constexpr long kInf = std::numeric_limits<long>::max() / 4;

struct OverflowError {};

// (1 - z^a q^c) or 1/(1 - z^a q^c), oriented exponents a1, a2 >= 0
struct Op {
  int a1, a2, c;
  bool geometric;
};

// (z^a q^b)_inf ^ (+-1), a1, a2 >= 0, b > 0 when a = 0
struct InfOp {
  int a1, a2, b;
  bool inverted;
};

struct Prepared {
  Rational coeff;
  int u1, u2, e;
  std::vector<Op> ops;
  std::vector<InfOp> inf;
  bool zero = false;
};

Prepared prepare(const FactoredTerm& t, Orientation o) {
  Prepared p;
  p.coeff = t.coeff;
  p.u1 = o.dir1 * t.mono.m1;
  p.u2 = o.dir2 * t.mono.m2;
  p.e = t.mono.e;
  for (const auto& f : t.factors) {
    int A1 = o.dir1 * f.base.m1, A2 = o.dir2 * f.base.m2, B = f.base.e;
    bool pure = A1 == 0 && A2 == 0;
    bool pos = !pure && A1 >= 0 && A2 >= 0;
    bool neg = !pure && A1 <= 0 && A2 <= 0;
    if (!pure && !pos && !neg) throw ExpansionError("mixed-sign base in factor " + to_string(f));
    bool inv = f.exponent < 0;
    if (f.infinite()) {
      if (pure && B <= 0) throw ExpansionError("ill-formed infinite product " + to_string(f));
      if (neg) throw ExpansionError("infinite product with negatively oriented base " + to_string(f));
      p.inf.push_back({A1, A2, B, inv});
      continue;
    }
    for (int i = 0; i < f.length; ++i) {
      int c = B + i;
      if (pure) {
        if (c == 0) {
          if (inv) throw ExpansionError("division by zero in factor " + to_string(f));
          p.zero = true;
          return p;
        }
        if (!inv) {
          p.ops.push_back({0, 0, c, false});
        } else if (c > 0) {
          p.ops.push_back({0, 0, c, true});
        } else {
          p.coeff = -p.coeff;
          p.e += -c;
          p.ops.push_back({0, 0, -c, true});
        }
      } else if (pos) {
        p.ops.push_back({A1, A2, c, inv});
      } else if (!inv) {
        // 1 - x = -x (1 - 1/x)
        p.coeff = -p.coeff;
        p.u1 += A1;
        p.u2 += A2;
        p.e += c;
        p.ops.push_back({-A1, -A2, -c, false});
      } else {
        // 1/(1 - x) = -(1/x) / (1 - 1/x)
        p.coeff = -p.coeff;
        p.u1 -= A1;
        p.u2 -= A2;
        p.e -= c;
        p.ops.push_back({-A1, -A2, -c, true});
      }
    }
  }
  return p;
}

class Grid {
 public:
  explicit Grid(int dmax) : dmax_(dmax) {
    for (int s = 0; s <= dmax; ++s)
      for (int d1 = 0; d1 <= s; ++d1) cells_.push_back({d1, s - d1});
    index_.assign((dmax + 1) * (dmax + 1), -1);
    for (size_t i = 0; i < cells_.size(); ++i) index_[cells_[i].first * (dmax + 1) + cells_[i].second] = int(i);
  }
  int dmax() const { return dmax_; }
  size_t size() const { return cells_.size(); }
  const std::pair<int, int>& cell(size_t i) const { return cells_[i]; }
  int index(int d1, int d2) const {
    if (d1 < 0 || d2 < 0 || d1 + d2 > dmax_) return -1;
    return index_[d1 * (dmax_ + 1) + d2];
  }

 private:
  int dmax_;
  std::vector<std::pair<int, int>> cells_;  // ordered by total degree
  std::vector<int> index_;
};

using Trop = std::vector<long>;

// sparse support of an op as (d1, d2, qmin)
std::vector<std::array<long, 3>> op_support(const Op& op, int dmax) {
  std::vector<std::array<long, 3>> s;
  if (op.a1 == 0 && op.a2 == 0) {
    s.push_back({0, 0, op.geometric ? 0 : std::min(0, op.c)});
    return s;
  }
  s.push_back({0, 0, 0});
  int deg = op.a1 + op.a2;
  for (long al = 1; al * deg <= dmax; ++al) {
    s.push_back({al * op.a1, al * op.a2, al * op.c});
    if (!op.geometric) break;
  }
  return s;
}

std::vector<std::array<long, 3>> inf_support(const InfOp& op, int dmax) {
  std::vector<std::array<long, 3>> s;
  s.push_back({0, 0, 0});
  if (op.a1 == 0 && op.a2 == 0) return s;
  int deg = op.a1 + op.a2;
  for (long al = 1; al * deg <= dmax; ++al)
    s.push_back({al * op.a1, al * op.a2, al * op.b + (op.inverted ? 0 : al * (al - 1) / 2)});
  return s;
}

Trop trop_mul(const Grid& g, const Trop& v, const std::vector<std::array<long, 3>>& sup) {
  Trop out(g.size(), kInf);
  for (size_t i = 0; i < g.size(); ++i) {
    if (v[i] >= kInf) continue;
    auto [d1, d2] = g.cell(i);
    for (const auto& s : sup) {
      int j = g.index(d1 + int(s[0]), d2 + int(s[1]));
      if (j >= 0) out[j] = std::min(out[j], v[i] + s[2]);
    }
  }
  return out;
}

// h(r) = min over cells with total degree <= r
std::vector<long> ball_min(const Grid& g, const Trop& v) {
  std::vector<long> h(g.dmax() + 1, kInf);
  for (size_t i = 0; i < g.size(); ++i) {
    auto [d1, d2] = g.cell(i);
    h[d1 + d2] = std::min(h[d1 + d2], v[i]);
  }
  for (int r = 1; r <= g.dmax(); ++r) h[r] = std::min(h[r], h[r - 1]);
  return h;
}

inline void acc(long& x, long y) {
  if (__builtin_add_overflow(x, y, &x)) throw OverflowError{};
}
inline void dec(long& x, long y) {
  if (__builtin_sub_overflow(x, y, &x)) throw OverflowError{};
}
inline void acc(mpz_class& x, const mpz_class& y) { x += y; }
inline void dec(mpz_class& x, const mpz_class& y) { x -= y; }
inline bool nonzero(long x) { return x != 0; }
inline bool nonzero(const mpz_class& x) { return sgn(x) != 0; }
inline void addmul_into(mpz_class& target, const mpz_class& c, long v) {
  if (v >= 0)
    mpz_addmul_ui(target.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(v));
  else
    mpz_submul_ui(target.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-(v + 1)) + 1ul);
}
inline void addmul_into(mpz_class& target, const mpz_class& c, const mpz_class& v) { target += c * v; }

struct Plan {
  Grid grid;
  std::vector<Op> ops;
  std::vector<Trop> lo;              // lo[k]: support bound after k ops
  std::vector<std::vector<long>> h;  // h[k]: ball minima of ops k..K-1
  long qlo, qhi;                     // shifted output window
  long box_lo, box_hi;
};

std::optional<Plan> make_plan(const Prepared& p, int zmax, int qlo, int qhi) {
  int dmax = zmax - (p.u1 + p.u2);
  if (dmax < 0) return std::nullopt;
  Plan pl{Grid(dmax), {}, {}, {}, qlo - long(p.e), qhi - long(p.e), 0, 0};
  const Grid& g = pl.grid;

  Trop unit(g.size(), kInf);
  unit[0] = 0;
  Trop tot = unit;
  for (const auto& op : p.ops) tot = trop_mul(g, tot, op_support(op, dmax));
  for (const auto& op : p.inf) tot = trop_mul(g, tot, inf_support(op, dmax));
  auto htot = ball_min(g, tot);

  pl.ops = p.ops;
  for (const auto& op : p.inf) {
    int deg = op.a1 + op.a2;
    if (deg > dmax) continue;
    long hmin = htot[dmax - deg];
    if (hmin >= kInf) continue;
    // factor i only produces terms of q-degree >= b + i on top of anything else
    long i0 = std::max<long>(std::max<long>(0, 1 - op.b), pl.qhi - hmin - op.b + 1);
    for (long i = 0; i < i0; ++i) pl.ops.push_back({op.a1, op.a2, int(op.b + i), op.inverted});
  }

  size_t K = pl.ops.size();
  pl.lo.resize(K + 1);
  pl.lo[0] = unit;
  for (size_t k = 0; k < K; ++k) pl.lo[k + 1] = trop_mul(g, pl.lo[k], op_support(pl.ops[k], dmax));
  pl.h.resize(K + 1);
  Trop suffix = unit;
  pl.h[K] = ball_min(g, suffix);
  for (size_t k = K; k-- > 0;) {
    suffix = trop_mul(g, suffix, op_support(pl.ops[k], dmax));
    pl.h[k] = ball_min(g, suffix);
  }
  long lo = kInf;
  for (long v : pl.lo[K]) lo = std::min(lo, v);
  for (long v : pl.lo[0]) lo = std::min(lo, v);
  if (lo >= kInf || pl.h[0][dmax] >= kInf) return std::nullopt;
  pl.box_lo = lo;
  pl.box_hi = pl.qhi - pl.h[0][dmax];
  if (pl.box_hi < pl.box_lo || pl.box_lo > pl.qhi) return std::nullopt;
  return pl;
}

template <class T>
std::vector<T> run_plan(const Plan& pl) {
  const Grid& g = pl.grid;
  long width = pl.box_hi - pl.box_lo + 1;
  std::vector<T> buf(g.size() * width, T(0));
  auto at = [&](size_t cell, long e) -> T& { return buf[cell * width + (e - pl.box_lo)]; };
  auto in_box = [&](long e) { return e >= pl.box_lo && e <= pl.box_hi; };
  if (in_box(0)) at(0, 0) = T(1);
  int dmax = g.dmax();

  auto hi_of = [&](size_t k, size_t cell) {
    auto [d1, d2] = g.cell(cell);
    long h = pl.h[k][dmax - d1 - d2];
    return std::min(pl.box_hi, h >= kInf ? pl.box_lo - 1 : pl.qhi - h);
  };

  for (size_t k = 0; k < pl.ops.size(); ++k) {
    const Op& op = pl.ops[k];
    const Trop& lo = pl.lo[k + 1];
    bool pure = op.a1 == 0 && op.a2 == 0;
    auto stage = [&](size_t cell) {
      if (lo[cell] >= kInf) return;
      long e0 = std::max(lo[cell], pl.box_lo), e1 = hi_of(k, cell);
      if (e0 > e1) return;
      auto [d1, d2] = g.cell(cell);
      if (pure) {
        if (op.geometric) {
          for (long e = e0; e <= e1; ++e)
            if (in_box(e - op.c)) acc(at(cell, e), at(cell, e - op.c));
        } else if (op.c > 0) {
          for (long e = e1; e >= e0; --e)
            if (in_box(e - op.c)) dec(at(cell, e), at(cell, e - op.c));
        } else {
          for (long e = e0; e <= e1; ++e)
            if (in_box(e - op.c)) dec(at(cell, e), at(cell, e - op.c));
        }
        return;
      }
      int src = g.index(d1 - op.a1, d2 - op.a2);
      if (src < 0) return;
      for (long e = e0; e <= e1; ++e) {
        if (!in_box(e - op.c)) continue;
        const T& s = at(src, e - op.c);
        if (!nonzero(s)) continue;
        if (op.geometric)
          acc(at(cell, e), s);
        else
          dec(at(cell, e), s);
      }
    };
    if (op.geometric || pure) {
      for (size_t c = 0; c < g.size(); ++c) stage(c);
    } else {
      for (size_t c = g.size(); c-- > 0;) stage(c);
    }
  }
  return buf;
}

template <class T>
void collect(const Plan& pl, const Prepared& p, const std::vector<T>& buf, const mpz_class& scaled,
             int zmax, int qlo, int qhi, std::vector<mpz_class>& out) {
  const Grid& g = pl.grid;
  long width = pl.box_hi - pl.box_lo + 1;
  long qw = qhi - qlo + 1;
  for (size_t cell = 0; cell < g.size(); ++cell) {
    auto [d1, d2] = g.cell(cell);
    int u1 = p.u1 + d1, u2 = p.u2 + d2;
    if (u1 < 0 || u2 < 0) continue;
    long lo = std::max(pl.qlo, pl.box_lo), hi = std::min(pl.qhi, pl.box_hi);
    for (long e = lo; e <= hi; ++e) {
      const T& v = buf[cell * width + (e - pl.box_lo)];
      if (!nonzero(v)) continue;
      // dense output layout: triangle of (u1,u2) by qwindow
      size_t base = size_t(u1) * (zmax + 1) + u2;
      addmul_into(out[base * qw + (e + p.e - qlo)], scaled, v);
    }
  }
}

}  // namespace

Series2 expand(const FactoredSum& x, Orientation o, int zmax, int qlo, int qhi) {
  if (zmax < 0 || qlo > qhi) throw std::invalid_argument("expand: empty window");
  std::vector<Prepared> prepared;
  mpz_class den = 1;
  for (const auto& t : x.terms()) {
    if (t.vanishes()) continue;
    auto p = prepare(t, o);
    if (p.zero) continue;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.coeff.get_den_mpz_t());
    prepared.push_back(std::move(p));
  }
  long qw = qhi - qlo + 1;
  std::vector<mpz_class> out(size_t(zmax + 1) * (zmax + 1) * qw);
  for (const auto& p : prepared) {
    auto plan = make_plan(p, zmax, qlo, qhi);
    if (!plan) continue;
    mpz_class scaled = p.coeff.get_num() * (den / p.coeff.get_den());
    try {
      auto buf = run_plan<long>(*plan);
      collect(*plan, p, buf, scaled, zmax, qlo, qhi, out);
    } catch (const OverflowError&) {
      auto buf = run_plan<mpz_class>(*plan);
      collect(*plan, p, buf, scaled, zmax, qlo, qhi, out);
    }
  }
  Series2 s(o, zmax, qlo, qhi);
  for (int u1 = 0; u1 <= zmax; ++u1)
    for (int u2 = 0; u1 + u2 <= zmax; ++u2)
      for (long e = 0; e < qw; ++e) {
        const auto& v = out[(size_t(u1) * (zmax + 1) + u2) * qw + e];
        if (sgn(v) == 0) continue;
        Rational c(v, den);
        c.canonicalize();
        s.add_term(o.dir1 * u1, o.dir2 * u2, int(qlo + e), c);
      }
  return s;
}

}  // namespace qchar
