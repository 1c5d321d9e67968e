#pragma once

#include "qchar/qcore.hpp"

namespace qchar::toda {

// zero for negative indices
FactoredSum I_dd(int d1, int d2);
// I / ((z1)_inf (z2)_inf (z1 z2)_inf)
FactoredSum Jbar(int d1, int d2);
// I / ((q z1)_inf (q z2)_inf (q z1 z2)_inf)
FactoredSum J(int d1, int d2);

bool verify_toda(int d1, int d2);

// weakly decreasing sequences below d1, d2; a series in z1^{-1}, z2^{-1}
FactoredSum I_fermionic_fs(int d1, int d2, int zmax);
Series2 I_fermionic(int d1, int d2, int zmax, int qlo, int qhi);
bool verify_Irec(int d1, int d2);

FactoredSum I_ddn(int d1, int d2, int n);
bool verify_I_sum(int d1, int d2);

// ---- Gelfand-Tsetlin data over (v, x, y), x = v^{l1-l2}, y = v^{l2-l3}

struct GTIndex {
  int d1 = 0, d2 = 0, n = 0;
  friend auto operator<=>(const GTIndex&, const GTIndex&) = default;
};
bool valid(const GTIndex& i);

// a12 (l1-l2) + a23 (l2-l3) + c
struct LinForm {
  int a12 = 0, a23 = 0, c = 0;
  friend bool operator==(const LinForm&, const LinForm&) = default;
};
LinForm operator+(LinForm a, int c);
LinForm operator-(LinForm a);

using VRational = LinearFactorTerm;

// t *= [a]^mult
void mul_bracket(VRational& t, LinForm a, int mult = 1);
// t *= ([a]_len)^mult
void mul_bracket_poch(VRational& t, LinForm a, int len, int mult = 1);
VRational bracket(LinForm a);
// v -> 1/v, x -> 1/x, y -> 1/y
VRational bar(const VRational& t);
// z1 -> x^2 v^2, z2 -> y^2 v^2, q -> v^2
std::vector<VRational> to_vxy(const FactoredSum& x);

struct GTCoeffs {
  VRational a, b1, b2, c;
  LinForm r, s;
};
GTCoeffs gt_coeffs(const GTIndex& i);

// I_{d1,d2,n} = v^s c / ((1-v^2)(1-v^{-2}))^{d1+d2}
bool verify_terms(int d1, int d2, int n);
bool verify_c_bar_invariance(int d1, int d2, int n);

}  // namespace qchar::toda
