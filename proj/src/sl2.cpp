#include "qchar/sl2.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

namespace qchar::sl2 {

namespace {

constexpr Orientation kPlus{1, 1};

int weight(const std::vector<int>& a) { return std::accumulate(a.begin(), a.end(), 0); }

int degree(const std::vector<int>& a) {
  int d = 0;
  for (size_t j = 0; j < a.size(); ++j) d += static_cast<int>(j) * a[j];
  return d;
}

void trim(std::vector<int>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// visits every composition of total into parts indexed 1..len, weighted sum bounded
void for_each_occupation(int len, int zmax, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> m(len, 0);
  std::function<void(int, int)> rec = [&](int i, int budget) {
    if (i > len) {
      f(m);
      return;
    }
    for (int c = 0; c * i <= budget; ++c) {
      m[i - 1] = c;
      rec(i + 1, budget - c * i);
    }
    m[i - 1] = 0;
  };
  rec(1, zmax);
}

}  // namespace

void check(const Params& p) {
  if (p.k < 0 || p.l < 0 || p.l > p.k) throw std::invalid_argument("sl2: need 0 <= l <= k");
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Enumerate: return "enumerate";
    case Backend::Fermionic: return "fermionic";
    case Backend::Bosonic: return "bosonic";
  }
  return "?";
}

void for_each_admissible(const Params& p, int zmax, int dmax, const std::function<void(const std::vector<int>&)>& f) {
  check(p);
  std::vector<int> a;
  std::function<void(int, int, int)> rec = [&](int j, int zrem, int drem) {
    if (j > 0 && j > drem) {
      std::vector<int> out = a;
      trim(out);
      f(out);
      return;
    }
    int cap = j == 0 ? p.l : p.k - a.back();
    cap = std::min(cap, zrem);
    if (j > 0) cap = std::min(cap, drem / j);
    for (int c = 0; c <= cap; ++c) {
      a.push_back(c);
      rec(j + 1, zrem - c, drem - c * j);
      a.pop_back();
    }
  };
  rec(0, zmax, dmax);
}

Series1 enumerate(const Params& p, int zmax, int dmax, int shift) {
  if (shift < 0) throw std::invalid_argument("sl2::enumerate: negative shift");
  Series1 out(kPlus, zmax, 0, dmax);
  for_each_admissible(p, zmax, dmax, [&](const std::vector<int>& a) {
    int m = weight(a);
    out.add_term(m, 0, degree(a) + shift * m, 1);
  });
  return out;
}

Series1 enumerate(const Params& p, int dmax) { return enumerate(p, p.l + dmax, dmax); }

FactoredSum fermionic_summand(const std::vector<int>& m, int l) {
  int len = static_cast<int>(m.size());
  int e = 0, w = 0;
  for (int i = 1; i <= len; ++i) {
    w += i * m[i - 1];
    e -= std::min(i, l) * m[i - 1];
    for (int j = 1; j <= len; ++j) e += m[i - 1] * m[j - 1] * std::min(i, j);
  }
  FactoredTerm t;
  t.mono = {w, 0, e};
  for (int c : m) t *= poch(qp(1), c, -1);
  return FactoredSum(t);
}

FactoredSum fermionic_fs(const Params& p, int zmax) {
  check(p);
  if (p.k == 0) return FactoredSum::one();
  FactoredSum out;
  for_each_occupation(p.k, zmax, [&](const std::vector<int>& m) { out += fermionic_summand(m, p.l); });
  return out;
}

FactoredSum bosonic_fs(const Params& p, int zmax) {
  check(p);
  if (p.k == 0) return FactoredSum::one();
  const int k = p.k, l = p.l;
  FactoredSum out;
  for (int n = 0; n * k <= zmax; ++n) {
    FactoredTerm t;
    t.mono = {n * k, 0, n * n * k - n * l};
    t *= poch(z1() * qp(2 * n), kInfinity, -1);
    t *= poch(qp(1), n, -1);
    t *= poch(z1(-1) * qp(1 - 2 * n), n, -1);
    out.add(t);
  }
  for (int n = 0; n * k + l <= zmax; ++n) {
    FactoredTerm t;
    t.mono = {n * k + l, 0, n * n * k + n * l};
    t *= poch(z1() * qp(2 * n + 1), kInfinity, -1);
    t *= poch(qp(1), n, -1);
    t *= poch(z1(-1) * qp(-2 * n), n + 1, -1);
    out.add(t);
  }
  return out;
}

Series1 fermionic(const Params& p, int zmax, int qlo, int qhi) {
  return expand(fermionic_fs(p, zmax), kPlus, zmax, qlo, qhi);
}

Series1 bosonic(const Params& p, int zmax, int qlo, int qhi) {
  return expand(bosonic_fs(p, zmax), kPlus, zmax, qlo, qhi);
}

Series1 character(Backend b, const Params& p, int zmax, int qlo, int qhi, int shift) {
  if (b == Backend::Enumerate) return enumerate(p, zmax, qhi, shift).restricted(zmax, qlo, qhi);
  FactoredSum x = b == Backend::Fermionic ? fermionic_fs(p, zmax) : bosonic_fs(p, zmax);
  if (shift != 0) x = substitute(x, z1() * qp(shift), z2());
  return expand(x, kPlus, zmax, qlo, qhi);
}

bool verify_rec(Backend b, const Params& p, int zmax, int qlo, int qhi) {
  check(p);
  Series1 lhs = character(b, p, zmax, qlo, qhi);
  // chi_{-1} = 0
  Series1 rhs = p.l == 0 ? Series1(lhs.orientation(), zmax, qlo, qhi) : character(b, {p.k, p.l - 1}, zmax, qlo, qhi);
  if (zmax >= p.l) rhs += character(b, {p.k, p.k - p.l}, zmax - p.l, qlo, qhi, 1).monomial_shift(p.l, 0, 0);
  return series_eq(lhs, rhs);
}

std::vector<int> phi_map(const std::vector<int>& a, int k) {
  if (k < 0) throw std::invalid_argument("phi_map: negative level");
  for (size_t i = 0; i < a.size(); ++i) {
    int next = i + 1 < a.size() ? a[i + 1] : 0;
    if (a[i] < 0 || a[i] + next > k) throw std::invalid_argument("phi_map: sequence not admissible");
  }
  std::vector<int> b = a;
  trim(b);
  if (k == 0) return {};
  for (size_t i = 0; i < b.size(); ++i) {
    int next = i + 1 < b.size() ? b[i + 1] : 0;
    if (b[i] + next == k) {
      std::vector<int> rest(b.begin(), b.begin() + i);
      if (i + 2 < b.size()) rest.insert(rest.end(), b.begin() + i + 2, b.end());
      auto out = phi_map(rest, k);
      out.back() += 1;
      return out;
    }
  }
  auto out = phi_map(b, k - 1);
  out.push_back(0);
  return out;
}

Series1 fiber_sum(int k, int l, const std::vector<int>& m, int dmax) {
  if (static_cast<int>(m.size()) != k) throw std::invalid_argument("fiber_sum: m must have k entries");
  int w = 0;
  for (int i = 1; i <= k; ++i) w += i * m[i - 1];
  Series1 out(kPlus, w, 0, dmax);
  for_each_admissible({k, l}, w, dmax, [&](const std::vector<int>& a) {
    if (weight(a) == w && phi_map(a, k) == m) out.add_term(w, 0, degree(a), 1);
  });
  return out;
}

bool verify_fiber_sums(int k, int l, const std::vector<int>& m, int dmax) {
  Series1 fib = fiber_sum(k, l, m, dmax);
  Series1 ff = expand(fermionic_summand(m, l), kPlus, fib.zmax(), 0, dmax);
  return series_eq(fib, ff);
}

std::vector<int> extremal_point(int k, int l, int n, int eps) {
  std::vector<int> a;
  for (int i = 0; i < n; ++i) {
    a.push_back(l);
    a.push_back(k - l);
  }
  if (eps) a.push_back(l);
  return a;
}

std::pair<int, int> extremal_monomial(int k, int l, int n, int eps) {
  if (eps) return {n * k + l, n * n * k + n * l};
  return {n * k, n * n * k - n * l};
}

FactoredSum gnk_closed(int n, int k) {
  FactoredTerm t;
  t.mono = {n * k, 0, n * n * k};
  t *= poch(qp(1), n, -1);
  t *= poch(z1(-1) * qp(1 - 2 * n), n, -1);
  return FactoredSum(t);
}

bool verify_gnk_recursion(int n, int k) {
  FactoredSum rhs;
  for (int i = 0; i <= n; ++i) {
    FactoredTerm t;
    t.mono = {i * k, 0, i * i * k};
    t *= poch(qp(1), i, -1);
    FactoredSum term(t);
    term *= substitute(gnk_closed(n - i, k - 1), z1() * qp(2 * i), z2());
    rhs += term;
  }
  return rational_identity(gnk_closed(n, k), rhs);
}

bool verify_qbinomial(int n) {
  FactoredSum lhs;
  for (int i = 0; i <= n; ++i) {
    FactoredTerm t;
    t.coeff = i % 2 ? -1 : 1;
    t.mono = qp(i * (i + 1) / 2 - i * n);
    t *= poch(qp(1), n, 1);
    t *= poch(qp(1), i, -1);
    t *= poch(qp(1), n - i, -1);
    t *= poch(z1() * qp(n), i, 1);
    lhs.add(t);
  }
  return rational_identity(lhs, FactoredSum::monomial({n, 0, n * n}));
}

FactoredSum gnk_direct_fs(int n, int k, int zdepth) {
  // a unit at position j leaves z-degree at most nk - j, so positions beyond zdepth never reach the window
  FactoredSum out;
  std::vector<int> c;
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (left == 0 || j > zdepth) {
      if (left != 0) return;
      int zdeg = 0, e = 0;
      for (size_t i = 0; i < c.size(); ++i) {
        zdeg += (k - static_cast<int>(i)) * c[i];
        for (size_t r = 0; r < c.size(); ++r)
          e += c[i] * c[r] * std::min(k - static_cast<int>(i), k - static_cast<int>(r));
      }
      assert(zdeg <= n * k);
      if (n * k - zdeg > zdepth) return;
      FactoredTerm t;
      t.mono = {zdeg - n * k, 0, e};
      for (int x : c) t *= poch(qp(1), x, -1);
      out.add(t);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      c.push_back(x);
      rec(j + 1, left - x);
      c.pop_back();
    }
  };
  rec(0, n);
  return out;
}

Series1 gnk_direct(int n, int k, int zdepth, int qlo, int qhi) {
  return expand(gnk_direct_fs(n, k, zdepth), {-1, 1}, zdepth, qlo, qhi);
}

bool verify_splitting_sums(int n, int eps, int l, int zmax, int qlo, int qhi) {
  if (eps != 0 && eps != 1) throw std::invalid_argument("verify_splitting_sums: eps must be 0 or 1");
  const int s = n + eps;
  // sum (i): occupations m_1, m_2, ... with z-degree sum j m_j
  FactoredSum first;
  for_each_occupation(zmax, zmax, [&](const std::vector<int>& m) {
    int w = 0, e = 0;
    for (size_t i = 0; i < m.size(); ++i) {
      w += static_cast<int>(i + 1) * m[i];
      for (size_t j = 0; j < m.size(); ++j) e += m[i] * m[j] * static_cast<int>(std::min(i, j) + 1);
    }
    FactoredTerm t;
    t.mono = {w, 0, e + (2 * s - 1) * w};
    for (int c : m) t *= poch(qp(1), c, -1);
    first.add(t);
  });
  FactoredTerm closed_i;
  closed_i *= poch(z1() * qp(2 * s), kInfinity, -1);
  if (!series_eq(expand(first, kPlus, zmax, qlo, qhi), expand(FactoredSum(closed_i), kPlus, zmax, qlo, qhi)))
    return false;
  if (eps == 0) return true;

  // sum (ii): the part at positions l - i, i >= 0, is a z^{-1}-series; compare it after dividing by z^l
  FactoredSum down_sum, up_sum;
  for (int i = 0; i <= zmax; ++i) {
    FactoredTerm t;
    t.mono = {-i, 0, (l - i) * (2 * n + 1) - (l - i) - 2 * n * l};
    t *= poch(qp(1), 1, -1);
    down_sum.add(t);
  }
  for (int i = 1; i <= zmax; ++i) {
    FactoredTerm t;
    t.mono = {i, 0, (l + i) * (2 * n + 1) - l - 2 * n * l};
    t *= poch(qp(1), 1, -1);
    up_sum.add(t);
  }
  FactoredTerm down_closed;
  down_closed *= poch(qp(1), 1, -1);
  down_closed *= poch(z1(-1) * qp(-2 * n), 1, -1);
  FactoredTerm up_closed;
  up_closed.mono = {1, 0, 2 * n + 1};
  up_closed *= poch(qp(1), 1, -1);
  up_closed *= poch(z1() * qp(2 * n + 1), 1, -1);
  if (!series_eq(expand(down_sum, {-1, 1}, zmax, qlo, qhi), expand(FactoredSum(down_closed), {-1, 1}, zmax, qlo, qhi)))
    return false;
  if (!series_eq(expand(up_sum, kPlus, zmax, qlo, qhi), expand(FactoredSum(up_closed), kPlus, zmax, qlo, qhi)))
    return false;
  FactoredTerm total;
  total.mono = {l, 0, 2 * n * l};
  total *= poch(z1(-1) * qp(-2 * n), 1, -1);
  total *= poch(z1() * qp(2 * n + 1), 1, -1);
  FactoredSum parts = fs_scale(FactoredSum(down_closed), {l, 0, 2 * n * l}) + fs_scale(FactoredSum(up_closed), {l, 0, 2 * n * l});
  return rational_identity(parts, FactoredSum(total));
}

}  // namespace qchar::sl2
