#include "qchar/qcore.hpp"

#include <algorithm>

namespace qchar {

Rational QWindowSeries::at(int e) const {
  auto it = coeffs.find(e);
  return it == coeffs.end() ? Rational(0) : it->second;
}

void QWindowSeries::add(int e, const Rational& c) {
  if (e < qlo || e > qhi || c == 0) return;
  auto [it, inserted] = coeffs.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

bool Series2::in_cone(int m1, int m2) const {
  int u1 = o_.dir1 * m1, u2 = o_.dir2 * m2;
  return u1 >= 0 && u2 >= 0 && u1 + u2 <= zmax_;
}

bool Series2::in_window(int m1, int m2, int e) const {
  return in_cone(m1, m2) && e >= qlo_ && e <= qhi_;
}

Rational Series2::coeff(int m1, int m2, int e) const {
  auto it = coeffs_.find({m1, m2});
  return it == coeffs_.end() ? Rational(0) : it->second.at(e);
}

void Series2::add_term(int m1, int m2, int e, const Rational& c) {
  if (c == 0 || !in_window(m1, m2, e)) return;
  auto [it, inserted] = coeffs_.try_emplace({m1, m2});
  if (inserted) {
    it->second.qlo = qlo_;
    it->second.qhi = qhi_;
  }
  it->second.add(e, c);
  if (it->second.is_zero()) coeffs_.erase(it);
}

size_t Series2::term_count() const {
  size_t n = 0;
  for (const auto& [k, s] : coeffs_) n += s.coeffs.size();
  return n;
}

Series2 Series2::restricted(int zmax, int qlo, int qhi) const {
  Series2 out(o_, std::min(zmax, zmax_), std::max(qlo, qlo_), std::min(qhi, qhi_));
  for (const auto& [k, s] : coeffs_)
    for (const auto& [e, c] : s.coeffs) out.add_term(k.first, k.second, e, c);
  return out;
}

Series2 Series2::q_shift(int c1, int c2) const {
  // each cell is known on [qlo + s, qhi + s]; keep the common part
  int lo_shift = 0, hi_shift = 0;
  for (int u1 = 0; u1 <= zmax_; ++u1)
    for (int u2 = 0; u1 + u2 <= zmax_; ++u2) {
      int s = c1 * o_.dir1 * u1 + c2 * o_.dir2 * u2;
      lo_shift = std::max(lo_shift, s);
      hi_shift = std::min(hi_shift, s);
    }
  Series2 out(o_, zmax_, qlo_ + lo_shift, qhi_ + hi_shift);
  for (const auto& [k, s] : coeffs_)
    for (const auto& [e, c] : s.coeffs) out.add_term(k.first, k.second, e + c1 * k.first + c2 * k.second, c);
  return out;
}

Series2 Series2::monomial_shift(int m1, int m2, int e) const {
  int t = o_.dir1 * m1 + o_.dir2 * m2;
  Series2 out(o_, zmax_ + t, qlo_ + e, qhi_ + e);
  if (out.zmax_ < 0) {
    out.zmax_ = 0;
    return out;
  }
  for (const auto& [k, s] : coeffs_)
    for (const auto& [q, c] : s.coeffs) out.add_term(k.first + m1, k.second + m2, q + e, c);
  return out;
}

namespace {

void check_compatible(const Series2& a, const Series2& b) {
  if (!(a.orientation() == b.orientation())) throw std::invalid_argument("series orientation mismatch");
}

Series2 combine(const Series2& a, const Series2& b, int sign) {
  check_compatible(a, b);
  Series2 out(a.orientation(), std::min(a.zmax(), b.zmax()), std::max(a.qlo(), b.qlo()),
              std::min(a.qhi(), b.qhi()));
  for (const auto& [k, s] : a.coeffs())
    for (const auto& [e, c] : s.coeffs) out.add_term(k.first, k.second, e, c);
  for (const auto& [k, s] : b.coeffs())
    for (const auto& [e, c] : s.coeffs) out.add_term(k.first, k.second, e, sign > 0 ? c : Rational(-c));
  return out;
}

}  // namespace

Series2& Series2::operator+=(const Series2& o) { return *this = combine(*this, o, 1); }
Series2& Series2::operator-=(const Series2& o) { return *this = combine(*this, o, -1); }

Series2 Series2::operator-() const {
  Series2 out(o_, zmax_, qlo_, qhi_);
  for (const auto& [k, s] : coeffs_)
    for (const auto& [e, c] : s.coeffs) out.add_term(k.first, k.second, e, -c);
  return out;
}

bool Series2::all_nonnegative_integers() const {
  for (const auto& [k, s] : coeffs_)
    for (const auto& [e, c] : s.coeffs)
      if (c < 0 || c.get_den() != 1) return false;
  return true;
}

Series2 series_add(const Series2& a, const Series2& b) { return combine(a, b, 1); }
Series2 series_sub(const Series2& a, const Series2& b) { return combine(a, b, -1); }

Series2 series_mul(const Series2& a, const Series2& b) {
  check_compatible(a, b);
  int qlo = a.qlo() + b.qlo();
  int qhi = std::min(a.qhi() + b.qlo(), b.qhi() + a.qlo());
  Series2 out(a.orientation(), std::min(a.zmax(), b.zmax()), qlo, qhi);
  for (const auto& [ka, sa] : a.coeffs())
    for (const auto& [kb, sb] : b.coeffs()) {
      int m1 = ka.first + kb.first, m2 = ka.second + kb.second;
      if (!out.in_cone(m1, m2)) continue;
      for (const auto& [ea, ca] : sa.coeffs)
        for (const auto& [eb, cb] : sb.coeffs)
          if (ea + eb <= qhi) out.add_term(m1, m2, ea + eb, ca * cb);
    }
  return out;
}

std::optional<SeriesDiff> first_difference(const Series2& a, const Series2& b) {
  check_compatible(a, b);
  Series2 ra = a.restricted(b.zmax(), b.qlo(), b.qhi());
  Series2 rb = b.restricted(a.zmax(), a.qlo(), a.qhi());
  std::map<std::tuple<int, int, int>, std::pair<Rational, Rational>> diff;
  for (const auto& [k, s] : ra.coeffs())
    for (const auto& [e, c] : s.coeffs) diff[{k.first, k.second, e}].first = c;
  for (const auto& [k, s] : rb.coeffs())
    for (const auto& [e, c] : s.coeffs) diff[{k.first, k.second, e}].second = c;
  for (const auto& [key, v] : diff)
    if (v.first != v.second) return SeriesDiff{std::get<0>(key), std::get<1>(key), std::get<2>(key), v.first, v.second};
  return std::nullopt;
}

bool series_eq(const Series2& a, const Series2& b) { return !first_difference(a, b).has_value(); }

}  // namespace qchar
