#include "qchar/qcore.hpp"

#include <algorithm>
#include <sstream>

namespace qchar {

LaurentPoly3 LaurentPoly3::constant(const Rational& c) { return monomial({0, 0, 0}, c); }

LaurentPoly3 LaurentPoly3::monomial(const Key& k, const Rational& c) {
  LaurentPoly3 p;
  if (c != 0) p.entries_.push_back({k, c});
  return p;
}

Rational LaurentPoly3::coeff(const Key& k) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                             [](const Entry& e, const Key& key) { return e.first < key; });
  return (it != entries_.end() && it->first == k) ? it->second : Rational(0);
}

void LaurentPoly3::merge(const std::vector<Entry>& o, const Rational& scale) {
  std::vector<Entry> out;
  out.reserve(entries_.size() + o.size());
  auto a = entries_.begin(), ae = entries_.end();
  auto b = o.begin(), be = o.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == ae || b->first < a->first) {
      out.push_back({b->first, b->second * scale});
      ++b;
    } else {
      Rational c = a->second + b->second * scale;
      if (c != 0) out.push_back({a->first, std::move(c)});
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

LaurentPoly3& LaurentPoly3::operator+=(const LaurentPoly3& o) {
  merge(o.entries_, 1);
  return *this;
}

LaurentPoly3& LaurentPoly3::operator-=(const LaurentPoly3& o) {
  merge(o.entries_, -1);
  return *this;
}

LaurentPoly3& LaurentPoly3::operator*=(const Rational& c) {
  if (c == 0) {
    entries_.clear();
  } else {
    for (auto& e : entries_) e.second *= c;
  }
  return *this;
}

LaurentPoly3 LaurentPoly3::shifted(const Key& k) const {
  LaurentPoly3 p = *this;
  for (auto& e : p.entries_)
    for (int i = 0; i < 3; ++i) e.first[i] += k[i];
  return p;
}

void LaurentPoly3::mul_binomial(const Key& k, const Rational& c) {
  LaurentPoly3 s = shifted(k);
  merge(s.entries_, -c);
}

LaurentPoly3 operator*(const LaurentPoly3& a, const LaurentPoly3& b) {
  LaurentPoly3 out;
  for (const auto& [k, c] : b.entries_) out.merge(a.shifted(k).entries_, c);
  return out;
}

std::string to_string(const LaurentPoly3& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : p.entries()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << "*[" << k[0] << "," << k[1] << "," << k[2] << "]";
  }
  return os.str();
}

LaurentPoly3 to_laurent3(const FactoredSum& x) {
  LaurentPoly3 total;
  for (const auto& t : x.terms()) {
    LaurentPoly3 p = LaurentPoly3::monomial({t.mono.m1, t.mono.m2, t.mono.e}, t.coeff);
    for (const auto& f : t.factors) {
      if (f.infinite() || f.exponent < 0)
        throw std::invalid_argument("to_laurent3: factor " + to_string(f) + " is not a finite polynomial");
      for (int i = 0; i < f.length; ++i) p.mul_binomial({f.base.m1, f.base.m2, f.base.e + i});
    }
    total += p;
  }
  return total;
}

void LinearFactorTerm::mul_linear(LaurentPoly3::Key base, int mult) {
  if (mult == 0) return;
  if (base == LaurentPoly3::Key{0, 0, 0}) {
    if (mult < 0) throw ExpansionError("division by zero: factor (1 - 1)");
    coeff = 0;
    return;
  }
  bool negative = false;
  for (int i = 0; i < 3; ++i)
    if (base[i] != 0) {
      negative = base[i] < 0;
      break;
    }
  if (negative) {
    // 1 - M = -M (1 - 1/M)
    if (mult % 2 != 0) coeff = -coeff;
    for (int i = 0; i < 3; ++i) {
      mono[i] += mult * base[i];
      base[i] = -base[i];
    }
  }
  int& m = factors[base];
  m += mult;
  if (m == 0) factors.erase(base);
}

LaurentPoly3 combined_numerator(const std::vector<LinearFactorTerm>& terms) {
  std::map<LaurentPoly3::Key, int> den;
  std::vector<const LinearFactorTerm*> live;
  for (const auto& t : terms) {
    if (t.coeff == 0) continue;
    live.push_back(&t);
    for (const auto& [b, m] : t.factors)
      if (m < 0) den[b] = std::max(den[b], -m);
  }
  if (live.empty()) return {};
  // exponent of each linear factor in each term's numerator over the common denominator
  std::map<LaurentPoly3::Key, int> common;
  std::vector<std::map<LaurentPoly3::Key, int>> exps(live.size());
  std::map<LaurentPoly3::Key, int> all;
  for (const auto& t : live)
    for (const auto& [b, m] : t->factors) all[b] = 0;
  for (size_t i = 0; i < live.size(); ++i)
    for (const auto& [b, unused] : all) {
      auto it = live[i]->factors.find(b);
      int m = it == live[i]->factors.end() ? 0 : it->second;
      auto d = den.find(b);
      exps[i][b] = m + (d == den.end() ? 0 : d->second);
    }
  for (const auto& [b, unused] : all) {
    int g = std::numeric_limits<int>::max();
    for (const auto& e : exps) g = std::min(g, e.at(b));
    common[b] = g;
  }
  LaurentPoly3 total;
  for (size_t i = 0; i < live.size(); ++i) {
    LaurentPoly3 p = LaurentPoly3::monomial(live[i]->mono, live[i]->coeff);
    for (const auto& [b, e] : exps[i])
      for (int r = 0; r < e - common[b]; ++r) p.mul_binomial(b);
    total += p;
  }
  return total;
}

std::vector<LinearFactorTerm> linear_terms(const FactoredSum& x) {
  std::vector<LinearFactorTerm> out;
  for (const auto& t : x.terms()) {
    LinearFactorTerm lt;
    lt.coeff = t.coeff;
    lt.mono = {t.mono.m1, t.mono.m2, t.mono.e};
    for (const auto& f : t.factors) {
      if (f.infinite()) throw std::invalid_argument("linear_terms: infinite factor " + to_string(f));
      for (int i = 0; i < f.length; ++i) lt.mul_linear({f.base.m1, f.base.m2, f.base.e + i}, f.exponent);
    }
    if (lt.coeff != 0) out.push_back(std::move(lt));
  }
  return out;
}

bool rational_identity(const FactoredSum& lhs, const FactoredSum& rhs) {
  return combined_numerator(linear_terms(lhs - rhs)).is_zero();
}

}  // namespace qchar
