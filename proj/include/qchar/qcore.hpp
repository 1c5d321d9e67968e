#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qchar {

using Rational = mpq_class;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

struct ExpansionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// z1^m1 z2^m2 q^e
struct ZqMonomial {
  int m1 = 0;
  int m2 = 0;
  int e = 0;

  bool pure_q() const { return m1 == 0 && m2 == 0; }
  bool is_one() const { return m1 == 0 && m2 == 0 && e == 0; }
  ZqMonomial inverse() const { return {-m1, -m2, -e}; }
  ZqMonomial pow(int k) const { return {k * m1, k * m2, k * e}; }

  friend ZqMonomial operator*(ZqMonomial a, ZqMonomial b) {
    return {a.m1 + b.m1, a.m2 + b.m2, a.e + b.e};
  }
  friend auto operator<=>(const ZqMonomial&, const ZqMonomial&) = default;
};

inline ZqMonomial z1(int k = 1) { return {k, 0, 0}; }
inline ZqMonomial z2(int k = 1) { return {0, k, 0}; }
inline ZqMonomial qp(int k = 1) { return {0, 0, k}; }

std::string to_string(const ZqMonomial& m);

inline constexpr int kInfinity = std::numeric_limits<int>::max();

// (base)_length ^ exponent, exponent in {+1,-1}
struct PochFactor {
  ZqMonomial base;
  int length = 0;
  int exponent = 1;

  bool infinite() const { return length == kInfinity; }
  friend auto operator<=>(const PochFactor&, const PochFactor&) = default;
};

std::string to_string(const PochFactor& f);

// Negative finite lengths are rewritten with (a)_{-n} = 1/(a q^{-n})_n.
PochFactor poch(ZqMonomial base, int length, int exponent = 1);

struct FactoredTerm {
  Rational coeff{1};
  ZqMonomial mono;
  std::vector<PochFactor> factors;

  // true if a finite numerator factor contains 1 - q^0
  bool vanishes() const;
  FactoredTerm& operator*=(const FactoredTerm& o);
  FactoredTerm& operator*=(const PochFactor& f);
  FactoredTerm& operator*=(const ZqMonomial& m);
  FactoredTerm& operator*=(const Rational& c);
};

class FactoredSum {
 public:
  FactoredSum() = default;
  FactoredSum(const FactoredTerm& t);
  static FactoredSum one();
  static FactoredSum monomial(const ZqMonomial& m, const Rational& c = 1);

  const std::vector<FactoredTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add(FactoredTerm t);
  FactoredSum& operator+=(const FactoredSum& o);
  FactoredSum& operator-=(const FactoredSum& o);
  FactoredSum& operator*=(const FactoredSum& o);
  FactoredSum& operator*=(const FactoredTerm& o);

  // sorts terms and factors, merges equal terms, drops zero terms
  FactoredSum& canonicalize();

  friend FactoredSum operator+(FactoredSum a, const FactoredSum& b) { return a += b; }
  friend FactoredSum operator-(FactoredSum a, const FactoredSum& b) { return a -= b; }
  friend FactoredSum operator*(FactoredSum a, const FactoredSum& b) { return a *= b; }

 private:
  std::vector<FactoredTerm> terms_;
};

FactoredSum fs_add(const FactoredSum& a, const FactoredSum& b);
FactoredSum fs_mul(const FactoredSum& a, const FactoredSum& b);
FactoredSum fs_scale(const FactoredSum& a, const ZqMonomial& m, const Rational& c = 1);

// z1 -> image1, z2 -> image2 everywhere
FactoredSum substitute(const FactoredSum& x, const ZqMonomial& image1, const ZqMonomial& image2);

// (x)_inf / (x q^m)_inf -> (x)_m  or  1/(x q^m)_{-m}
FactoredSum normalize_poch_ratios(const FactoredSum& x);

std::string to_string(const FactoredTerm& t);
std::string to_string(const FactoredSum& s);

struct Orientation {
  int dir1 = 1;
  int dir2 = 1;
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

struct QWindowSeries {
  int qlo = 0;
  int qhi = 0;
  std::map<int, Rational> coeffs;

  Rational at(int e) const;
  void add(int e, const Rational& c);
  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const QWindowSeries&, const QWindowSeries&) = default;
};

struct SeriesDiff {
  int m1, m2, e;
  Rational lhs, rhs;
};

class Series2 {
 public:
  Series2() = default;
  Series2(Orientation o, int zmax, int qlo, int qhi) : o_(o), zmax_(zmax), qlo_(qlo), qhi_(qhi) {}

  Orientation orientation() const { return o_; }
  int zmax() const { return zmax_; }
  int qlo() const { return qlo_; }
  int qhi() const { return qhi_; }

  // true if (m1,m2,e) lies in the region this series certifies
  bool in_window(int m1, int m2, int e) const;
  bool in_cone(int m1, int m2) const;

  Rational coeff(int m1, int m2, int e) const;
  // silently ignores terms outside the window
  void add_term(int m1, int m2, int e, const Rational& c);

  const std::map<std::pair<int, int>, QWindowSeries>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  size_t term_count() const;

  Series2 restricted(int zmax, int qlo, int qhi) const;
  // f(q^c1 z1, q^c2 z2); the window shrinks so the result stays exact
  Series2 q_shift(int c1, int c2) const;
  Series2 monomial_shift(int m1, int m2, int e) const;

  Series2& operator+=(const Series2& o);
  Series2& operator-=(const Series2& o);
  Series2 operator-() const;
  friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
  friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }

  bool all_nonnegative_integers() const;

 private:
  Orientation o_;
  int zmax_ = 0;
  int qlo_ = 0;
  int qhi_ = 0;
  std::map<std::pair<int, int>, QWindowSeries> coeffs_;
};

Series2 series_add(const Series2& a, const Series2& b);
Series2 series_sub(const Series2& a, const Series2& b);
// exact on the returned window provided neither input has terms below its qlo
Series2 series_mul(const Series2& a, const Series2& b);
bool series_eq(const Series2& a, const Series2& b);
// lexicographically first coefficient on the common region where a and b differ
std::optional<SeriesDiff> first_difference(const Series2& a, const Series2& b);

Series2 expand(const FactoredSum& x, Orientation o, int zmax, int qlo, int qhi);
// lowest total oriented z-degree that the expansion of t can reach
int min_oriented_degree(const FactoredTerm& t, Orientation o);

// sparse Laurent polynomial in three variables (z1, z2, q) or (v, x, y)
class LaurentPoly3 {
 public:
  using Key = std::array<int, 3>;
  using Entry = std::pair<Key, Rational>;

  LaurentPoly3() = default;
  static LaurentPoly3 constant(const Rational& c);
  static LaurentPoly3 monomial(const Key& k, const Rational& c = 1);

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  Rational coeff(const Key& k) const;

  LaurentPoly3& operator+=(const LaurentPoly3& o);
  LaurentPoly3& operator-=(const LaurentPoly3& o);
  LaurentPoly3& operator*=(const Rational& c);
  LaurentPoly3 shifted(const Key& k) const;
  // multiply by (1 - c x^k)
  void mul_binomial(const Key& k, const Rational& c = 1);

  friend LaurentPoly3 operator+(LaurentPoly3 a, const LaurentPoly3& b) { return a += b; }
  friend LaurentPoly3 operator-(LaurentPoly3 a, const LaurentPoly3& b) { return a -= b; }
  friend LaurentPoly3 operator*(const LaurentPoly3& a, const LaurentPoly3& b);
  friend bool operator==(const LaurentPoly3&, const LaurentPoly3&) = default;

 private:
  void merge(const std::vector<Entry>& o, const Rational& scale);
  std::vector<Entry> entries_;  // sorted by key
};

std::string to_string(const LaurentPoly3& p);

LaurentPoly3 to_laurent3(const FactoredSum& x);

// A product c * x^mono * prod (1 - x^base_i)^{mult_i} in a three-variable monomial space.
struct LinearFactorTerm {
  Rational coeff{1};
  LaurentPoly3::Key mono{0, 0, 0};
  std::map<LaurentPoly3::Key, int> factors;

  void mul_linear(LaurentPoly3::Key base, int mult);
};

// Numerator of sum_t over a common denominator; zero iff the sum vanishes identically.
LaurentPoly3 combined_numerator(const std::vector<LinearFactorTerm>& terms);

// Finite FactoredSum unrolled into linear factors; monomials mapped by (z1,z2,q) -> key.
std::vector<LinearFactorTerm> linear_terms(const FactoredSum& x);

// lhs == rhs as rational functions; all factors must be finite
bool rational_identity(const FactoredSum& lhs, const FactoredSum& rhs);

// worker count: QCHAR_THREADS if set, else hardware concurrency
int thread_cap();
// f(0..n-1) on up to thread_cap() threads; rethrows the first exception
void parallel_for(size_t n, const std::function<void(size_t)>& f);

}  // namespace qchar
