#pragma once

#include <functional>
#include <vector>

#include "qchar/qcore.hpp"

namespace qchar::sl2 {

struct Params {
  int k = 0;
  int l = 0;
};

void check(const Params& p);

// Series in a single variable z, stored as a Series2 with zero z2-exponent.
using Series1 = Series2;

enum class Backend { Enumerate, Fermionic, Bosonic };
const char* backend_name(Backend b);

// Visits every a with a_j + a_{j+1} <= k, a_0 <= l, sum a_j <= zmax and sum j a_j <= dmax.
void for_each_admissible(const Params& p, int zmax, int dmax, const std::function<void(const std::vector<int>&)>& f);

// chi(q^shift z) truncated to z-degree <= zmax and q-degree <= dmax, by enumeration.
Series1 enumerate(const Params& p, int zmax, int dmax, int shift = 0);
Series1 enumerate(const Params& p, int dmax);

FactoredSum fermionic_fs(const Params& p, int zmax);
FactoredSum bosonic_fs(const Params& p, int zmax);
Series1 fermionic(const Params& p, int zmax, int qlo, int qhi);
Series1 bosonic(const Params& p, int zmax, int qlo, int qhi);

Series1 character(Backend b, const Params& p, int zmax, int qlo, int qhi, int shift = 0);

// chi_l(z) = chi_{l-1}(z) + z^l chi_{k-l}(qz) on the window, chi_{-1} = 0
bool verify_rec(Backend b, const Params& p, int zmax, int qlo, int qhi);

std::vector<int> phi_map(const std::vector<int>& a, int k);

// fermionic summand for the occupation vector m = (m_1..m_k)
FactoredSum fermionic_summand(const std::vector<int>& m, int l);

// sum of z^{weight} q^{degree} over the fiber of phi_map over m inside P^k_l, degree <= dmax
Series1 fiber_sum(int k, int l, const std::vector<int>& m, int dmax);
bool verify_fiber_sums(int k, int l, const std::vector<int>& m, int dmax);

// extremal points w_{2n+eps} and their expected monomial z^{weight} q^{degree}
std::vector<int> extremal_point(int k, int l, int n, int eps);
std::pair<int, int> extremal_monomial(int k, int l, int n, int eps);

FactoredSum gnk_closed(int n, int k);
bool verify_gnk_recursion(int n, int k);
bool verify_qbinomial(int n);
// z^{-nk} g_{n,k}(z) from the defining sequence sum, as a z^{-1}-series down to z^{-zdepth}
FactoredSum gnk_direct_fs(int n, int k, int zdepth);
Series1 gnk_direct(int n, int k, int zdepth, int qlo, int qhi);

bool verify_splitting_sums(int n, int eps, int l, int zmax, int qlo, int qhi);

}  // namespace qchar::sl2
