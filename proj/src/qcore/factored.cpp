#include "qchar/qcore.hpp"

#include <algorithm>
#include <sstream>

namespace qchar {

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  Rational r(s, 10);
  r.canonicalize();
  return r;
}

std::string to_string(const ZqMonomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  auto part = [&](const char* name, int k) {
    if (k == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (k != 1) out += "^" + std::to_string(k);
  };
  part("z1", m.m1);
  part("z2", m.m2);
  part("q", m.e);
  return out;
}

std::string to_string(const PochFactor& f) {
  std::string s = "(" + to_string(f.base) + ")_" + (f.infinite() ? std::string("inf") : std::to_string(f.length));
  if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
  return s;
}

PochFactor poch(ZqMonomial base, int length, int exponent) {
  if (exponent != 1 && exponent != -1) throw std::invalid_argument("poch: exponent must be +1 or -1");
  if (length == kInfinity) {
    if (base.pure_q() && base.e <= 0)
      throw ExpansionError("ill-formed infinite product " + to_string(PochFactor{base, length, exponent}));
    return {base, length, exponent};
  }
  if (length < 0) return {base * qp(length), -length, -exponent};
  return {base, length, exponent};
}

bool FactoredTerm::vanishes() const {
  if (coeff == 0) return true;
  for (const auto& f : factors) {
    if (f.exponent > 0 && !f.infinite() && f.base.pure_q() && f.base.e <= 0 && -f.base.e < f.length)
      return true;
  }
  return false;
}

FactoredTerm& FactoredTerm::operator*=(const FactoredTerm& o) {
  coeff *= o.coeff;
  mono = mono * o.mono;
  factors.insert(factors.end(), o.factors.begin(), o.factors.end());
  return *this;
}

FactoredTerm& FactoredTerm::operator*=(const PochFactor& f) {
  if (f.length != 0) factors.push_back(f);
  return *this;
}

FactoredTerm& FactoredTerm::operator*=(const ZqMonomial& m) {
  mono = mono * m;
  return *this;
}

FactoredTerm& FactoredTerm::operator*=(const Rational& c) {
  coeff *= c;
  return *this;
}

FactoredSum::FactoredSum(const FactoredTerm& t) { add(t); }

FactoredSum FactoredSum::one() { return FactoredSum(FactoredTerm{}); }

FactoredSum FactoredSum::monomial(const ZqMonomial& m, const Rational& c) {
  FactoredTerm t;
  t.coeff = c;
  t.mono = m;
  return FactoredSum(t);
}

void FactoredSum::add(FactoredTerm t) {
  t.coeff.canonicalize();
  if (t.vanishes()) return;
  terms_.push_back(std::move(t));
}

FactoredSum& FactoredSum::operator+=(const FactoredSum& o) {
  for (const auto& t : o.terms_) add(t);
  return *this;
}

FactoredSum& FactoredSum::operator-=(const FactoredSum& o) {
  for (auto t : o.terms_) {
    t.coeff = -t.coeff;
    add(std::move(t));
  }
  return *this;
}

FactoredSum& FactoredSum::operator*=(const FactoredSum& o) {
  std::vector<FactoredTerm> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      FactoredTerm t = a;
      t *= b;
      if (!t.vanishes()) out.push_back(std::move(t));
    }
  terms_ = std::move(out);
  return *this;
}

FactoredSum& FactoredSum::operator*=(const FactoredTerm& o) {
  for (auto& t : terms_) t *= o;
  std::erase_if(terms_, [](const FactoredTerm& t) { return t.vanishes(); });
  return *this;
}

namespace {

void cancel_factors(FactoredTerm& t) {
  std::sort(t.factors.begin(), t.factors.end());
  std::vector<PochFactor> kept;
  std::vector<bool> used(t.factors.size(), false);
  for (size_t i = 0; i < t.factors.size(); ++i) {
    if (used[i]) continue;
    const auto& f = t.factors[i];
    if (f.length == 0) continue;
    bool cancelled = false;
    for (size_t j = i + 1; j < t.factors.size(); ++j) {
      const auto& g = t.factors[j];
      if (!used[j] && g.base == f.base && g.length == f.length && g.exponent == -f.exponent) {
        used[j] = true;
        cancelled = true;
        break;
      }
    }
    if (!cancelled) kept.push_back(f);
  }
  t.factors = std::move(kept);
}

bool same_shape(const FactoredTerm& a, const FactoredTerm& b) {
  return a.mono == b.mono && a.factors == b.factors;
}

bool shape_less(const FactoredTerm& a, const FactoredTerm& b) {
  if (a.mono != b.mono) return a.mono < b.mono;
  return a.factors < b.factors;
}

}  // namespace

FactoredSum& FactoredSum::canonicalize() {
  for (auto& t : terms_) cancel_factors(t);
  std::sort(terms_.begin(), terms_.end(), shape_less);
  std::vector<FactoredTerm> out;
  for (auto& t : terms_) {
    if (!out.empty() && same_shape(out.back(), t)) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
  return *this;
}

FactoredSum fs_add(const FactoredSum& a, const FactoredSum& b) { return a + b; }
FactoredSum fs_mul(const FactoredSum& a, const FactoredSum& b) { return a * b; }

FactoredSum fs_scale(const FactoredSum& a, const ZqMonomial& m, const Rational& c) {
  FactoredTerm t;
  t.coeff = c;
  t.mono = m;
  FactoredSum out = a;
  out *= t;
  return out;
}

FactoredSum substitute(const FactoredSum& x, const ZqMonomial& image1, const ZqMonomial& image2) {
  auto img = [&](const ZqMonomial& m) { return image1.pow(m.m1) * image2.pow(m.m2) * qp(m.e); };
  FactoredSum out;
  for (const auto& t : x.terms()) {
    FactoredTerm s;
    s.coeff = t.coeff;
    s.mono = img(t.mono);
    for (const auto& f : t.factors) {
      PochFactor g{img(f.base), f.length, f.exponent};
      if (g.infinite() && g.base.pure_q() && g.base.e <= 0)
        throw ExpansionError("invalid substitution: " + to_string(f) + " becomes " + to_string(g));
      s.factors.push_back(g);
    }
    out.add(std::move(s));
  }
  return out;
}

FactoredSum normalize_poch_ratios(const FactoredSum& x) {
  FactoredSum out;
  for (auto t : x.terms()) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < t.factors.size() && !changed; ++i) {
        const auto f = t.factors[i];
        if (!f.infinite() || f.exponent != 1) continue;
        for (size_t j = 0; j < t.factors.size(); ++j) {
          const auto g = t.factors[j];
          if (!g.infinite() || g.exponent != -1) continue;
          if (g.base.m1 != f.base.m1 || g.base.m2 != f.base.m2) continue;
          int m = g.base.e - f.base.e;
          std::vector<PochFactor> rest;
          for (size_t r = 0; r < t.factors.size(); ++r)
            if (r != i && r != j) rest.push_back(t.factors[r]);
          if (m > 0) rest.push_back(poch(f.base, m, 1));
          if (m < 0) rest.push_back(poch(g.base, -m, -1));
          t.factors = std::move(rest);
          changed = true;
          break;
        }
      }
    }
    out.add(std::move(t));
  }
  return out;
}

int min_oriented_degree(const FactoredTerm& t, Orientation o) {
  int d = o.dir1 * t.mono.m1 + o.dir2 * t.mono.m2;
  for (const auto& f : t.factors) {
    int A1 = o.dir1 * f.base.m1, A2 = o.dir2 * f.base.m2;
    if ((A1 > 0 && A2 < 0) || (A1 < 0 && A2 > 0)) throw ExpansionError("mixed-sign base in factor " + to_string(f));
    if (f.infinite() || A1 + A2 >= 0) continue;
    d += (f.exponent < 0 ? -1 : 1) * (A1 + A2) * f.length;
  }
  return d;
}

std::string to_string(const FactoredTerm& t) {
  std::ostringstream os;
  os << to_string(t.coeff) << " * " << to_string(t.mono);
  for (const auto& f : t.factors) os << " * " << to_string(f);
  return os.str();
}

std::string to_string(const FactoredSum& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& t : s.terms()) {
    if (!out.empty()) out += "\n+ ";
    out += to_string(t);
  }
  return out;
}

}  // namespace qchar
