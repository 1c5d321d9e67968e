#pragma once

#include <functional>
#include <vector>

#include "qchar/qcore.hpp"

namespace qchar::sl3 {

struct ModuleParams {
  int k1 = 0, k2 = 0, l1 = 0, l2 = 0, l3 = 0;
  friend auto operator<=>(const ModuleParams&, const ModuleParams&) = default;
};

std::string to_string(const ModuleParams& p);

bool in_P_U(const ModuleParams& p);
bool in_P_V(const ModuleParams& p);
bool in_R_U(const ModuleParams& p);
bool in_R_V(const ModuleParams& p);
bool in_Rbar_U(const ModuleParams& p);
bool in_Rtilde_U(const ModuleParams& p);

// ---- small principal subspaces X^k_{l1,l2}: a_0 <= l1, a_0 + a_1 <= l1 + l2, triples <= k

void for_each_X(int k, int l1, int l2, int zmax, int dmax, const std::function<void(const std::vector<int>&)>& f);
// a_{2t} -> z1 q^t, a_{2t+1} -> z1 z2 q^t
ZqMonomial x_monomial(const std::vector<int>& a);
Series2 enumerate_X(int k, int l1, int l2, int zmax, int qhi);

// ---- bosonic chi_B

ZqMonomial p_table(int k, int l1, int l2, int m, int n, int s);
int a_table(int k, int l1, int l2, int m, int n, int s);
// the product d(m,n,s) as non-inverted factors
std::vector<PochFactor> d_table(int m, int n, int s);
FactoredTerm chi_B_term(int k, int l1, int l2, int m, int n, int s);

// (chi_B)^k_{A,B} built from tables at (l1, l2) = (A, B - A), evaluated at (image1, image2),
// keeping only terms that reach oriented z-degree <= zmax
FactoredSum chi_B_fs(int k, int A, int B, int zmax, ZqMonomial image1 = z1(), ZqMonomial image2 = z2(),
                     Orientation o = {1, 1});
Series2 chi_B(int k, int A, int B, int zmax, int qlo, int qhi);

enum class ChiBackend { Enumerate, Bosonic };
// chi^k_{l1,l2} in the X convention above
Series2 chi_X(ChiBackend b, int k, int l1, int l2, int zmax, int qlo, int qhi);
// value at (image1, image2); images must have nonnegative q-shift and degree >= 1 on z1 and z1 z2
Series2 chi_X_at(ChiBackend b, int k, int l1, int l2, int zmax, int qlo, int qhi, ZqMonomial image1,
                 ZqMonomial image2);
// chi_{l1,l2} = chi_{l1-1,l2+1} + z1^{l1} chi_{l2,k-l1-l2}(z1 z2, q z2^{-1})
bool verify_sr(ChiBackend b, int k, int l1, int l2, int zmax, int qlo, int qhi);

// ---- phi_B, psi_B

struct SumOptions {
  int imax_buffer = 2;
};

FactoredSum phi_B_fs(const ModuleParams& p, int zmax, const SumOptions& opt = {});
FactoredSum psi_B_fs(const ModuleParams& p, int zmax, const SumOptions& opt = {});
// value at (q^c1 z1, q^c2 z2); cached
Series2 phi_B(const ModuleParams& p, int zmax, int qlo, int qhi, int c1 = 0, int c2 = 0);
Series2 psi_B(const ModuleParams& p, int zmax, int qlo, int qhi, int c1 = 0, int c2 = 0);

enum class SesKind { a, b, c, d };
const char* ses_name(SesKind k);

// (Ba)-(Bd): formula-level identities, any integers
bool verify_B_relation(SesKind kind, const ModuleParams& p, int zmax, int qlo, int qhi);
// (TRa)-(TRd) with clamped indices; requires params in the kind's region
bool ses_region(SesKind kind, const ModuleParams& p);
// Character: phi_B on the tilde region, the fermionic formula elsewhere at l3 = min(l1,l2), psi_B on R_V.
// BFormulas: phi_B/psi_B everywhere (the (TRc) side fails where phi_B is not the character).
enum class SesOracle { Character, BFormulas };
bool verify_SES(SesKind kind, const ModuleParams& p, int zmax, int qlo, int qhi,
                SesOracle oracle = SesOracle::Character);

// characters with the negative-index and clamping conventions
Series2 phi_clamped(ModuleParams p, int zmax, int qlo, int qhi, int c1 = 0, int c2 = 0);
Series2 psi_clamped(ModuleParams p, int zmax, int qlo, int qhi, int c1 = 0, int c2 = 0);

// equalities needed to pass from (Ba)-(Bd) to the clamped (TRa)-(TRd) on the regions, tagged by item 1)-6)
// (0 if none fits)
struct BoundaryCheck {
  int item;
  bool phi;
  ModuleParams from, to;
  bool to_zero;
  friend bool operator==(const BoundaryCheck&, const BoundaryCheck&) = default;
};
std::vector<BoundaryCheck> boundary_checks(int k1, int k2);

struct BoundaryFailure {
  int item;
  ModuleParams params;
};
std::vector<BoundaryFailure> verify_boundary(int k1, int k2, int zmax, int qlo, int qhi);
// d(m,n,0,q^{-i}z1,q^{2i}z2) / d(m,m-n,5,q^i z1 z2,q^{-2i}z2^{-1}) = (1-q^n)/(1-z2 q^{n+2i})
bool verify_boundary_ratio(int m, int n, int i);

// ---- fermionic formula

FactoredSum fermionic_F_fs(int k1, int k2, int l1, int l2, int zmax);
Series2 fermionic_F(int k1, int k2, int l1, int l2, int zmax, int qlo, int qhi);

// ---- k1 = k2 six-term formulas

FactoredSum A_s(int s, int d1, int d2);
FactoredSum B_s(int s, int d1, int d2);
FactoredSum six_term_psi_fs(int k, int l1, int l2, int zmax);
FactoredSum six_term_phi_fs(int k, int l1, int l2, int zmax);
Series2 six_term_psi(int k, int l1, int l2, int zmax, int qlo, int qhi);
Series2 six_term_phi(int k, int l1, int l2, int zmax, int qlo, int qhi);

enum class AbGroup { AShiftZ2, AShiftZ1, BToA };
// indices of failing relations (0..5)
std::vector<int> verify_AB_relations(AbGroup g, int d1, int d2, int zmax, int qlo, int qhi);

enum class VkBackend { Fermionic, Bosonic, PsiGl, PsiB };
const char* vk_name(VkBackend b);
FactoredSum ch_Vk_fs(int k, int zmax, VkBackend b);
Series2 ch_Vk(int k, int zmax, int qlo, int qhi, VkBackend b);
bool verify_Vrec(int k, int zmax, int qlo, int qhi, VkBackend b = VkBackend::Bosonic);

}  // namespace qchar::sl3
