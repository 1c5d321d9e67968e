#include "qchar/suites.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "qchar/sl2.hpp"
#include "qchar/sl3.hpp"
#include "qchar/toda.hpp"
#include "qchar/whittaker.hpp"

namespace qchar::suites {

namespace {

using Task = std::function<std::vector<Check>()>;

struct Window {
  int zmax, qlo, qhi;
};

Window window(const RunConfig& c, Window def) {
  return {c.zmax.value_or(def.zmax), c.qlo.value_or(def.qlo), c.qhi.value_or(def.qhi)};
}

bool sel(const std::optional<int>& o, int v) { return !o || *o == v; }

json window_json(const Window& w) { return {{"zmax", w.zmax}, {"qwindow", {w.qlo, w.qhi}}}; }

std::string rat(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

Check series_check(std::string name, json params, const Series2& a, const Series2& b) {
  Check c{std::move(name), std::move(params), true, nullptr};
  if (auto d = first_difference(a, b)) {
    c.pass = false;
    c.counterexample = {{"m1", d->m1}, {"m2", d->m2}, {"q", d->e}, {"lhs", rat(d->lhs)}, {"rhs", rat(d->rhs)}};
  }
  return c;
}

Check bool_check(std::string name, json params, bool ok) {
  Check c{std::move(name), std::move(params), ok, nullptr};
  if (!ok) c.counterexample = {{"identity", "fails"}};
  return c;
}

Task one(std::function<Check()> f) {
  return [f] { return std::vector<Check>{f()}; };
}

json mp_json(const sl3::ModuleParams& p) {
  return {{"k1", p.k1}, {"k2", p.k2}, {"l1", p.l1}, {"l2", p.l2}, {"l3", p.l3}};
}

void check_levels(const RunConfig& c) {
  if (c.k1 && c.k2 && *c.k1 > *c.k2) throw UsageError("k1 <= k2 violated");
  if ((c.k1 && *c.k1 < 1) || (c.k2 && *c.k2 < 1)) throw UsageError("levels must be >= 1");
}

std::vector<sl3::ModuleParams> sweep(const RunConfig& c, int kmax) {
  check_levels(c);
  std::vector<sl3::ModuleParams> out;
  for (int k1 = 1; k1 <= kmax; ++k1)
    for (int k2 = k1; k2 <= kmax; ++k2) {
      if (!sel(c.k1, k1) || !sel(c.k2, k2)) continue;
      for (int l1 = 0; l1 <= k1; ++l1)
        for (int l2 = 0; l2 <= k2; ++l2)
          for (int l3 = 0; l3 <= k1 + k2; ++l3) out.push_back({k1, k2, l1, l2, l3});
    }
  return out;
}

// ---- sl2

std::vector<Task> g_sl2_triple(const RunConfig& c) {
  using namespace sl2;
  Window w = window(c, {8, 0, 12});
  std::vector<Task> out;
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= k; ++l) {
      if (!sel(c.k, k) || !sel(c.l1, l)) continue;
      out.push_back([=] {
        json p = {{"k", k}, {"l", l}, {"window", window_json(w)}};
        Series1 e = character(Backend::Enumerate, {k, l}, w.zmax, w.qlo, w.qhi);
        Series1 f = character(Backend::Fermionic, {k, l}, w.zmax, w.qlo, w.qhi);
        Series1 b = character(Backend::Bosonic, {k, l}, w.zmax, w.qlo, w.qhi);
        return std::vector<Check>{series_check("enumerate=fermionic", p, e, f),
                                  series_check("enumerate=bosonic", p, e, b),
                                  bool_check("integral", p,
                                             e.all_nonnegative_integers() && f.all_nonnegative_integers() &&
                                                 b.all_nonnegative_integers())};
      });
    }
  return out;
}

std::vector<Task> g_sl2_rec(const RunConfig& c) {
  using namespace sl2;
  Window w = window(c, {8, 0, 12});
  std::vector<Task> out;
  for (auto b : {Backend::Enumerate, Backend::Fermionic, Backend::Bosonic})
    for (int k = 0; k <= 3; ++k)
      for (int l = 0; l <= k; ++l) {
        if (!sel(c.k, k) || !sel(c.l1, l)) continue;
        out.push_back(one([=] {
          return bool_check("recursion", {{"backend", backend_name(b)}, {"k", k}, {"l", l}},
                            verify_rec(b, {k, l}, w.zmax, w.qlo, w.qhi));
        }));
      }
  return out;
}

std::vector<Task> g_sl2_phi(const RunConfig& c) {
  using namespace sl2;
  std::vector<Task> out;
  for (int k = 1; k <= 3; ++k)
    for (int l = 0; l <= k; ++l) {
      if (!sel(c.k, k) || !sel(c.l1, l)) continue;
      std::vector<int> m(k, 0);
      std::function<void(int, int)> rec = [&](int i, int budget) {
        if (i > k) {
          out.push_back(one([=] {
            return bool_check("fiber-sum", {{"k", k}, {"l", l}, {"m", m}}, verify_fiber_sums(k, l, m, 12));
          }));
          return;
        }
        for (int x = 0; x * i <= budget; ++x) {
          m[i - 1] = x;
          rec(i + 1, budget - x * i);
        }
        m[i - 1] = 0;
      };
      rec(1, 4);
      for (int n = 0; n <= 3; ++n)
        for (int eps = 0; eps <= 1; ++eps)
          out.push_back(one([=] {
            auto a = extremal_point(k, l, n, eps);
            int weight = 0, degree = 0;
            for (size_t j = 0; j < a.size(); ++j) {
              weight += a[j];
              degree += static_cast<int>(j) * a[j];
            }
            std::pair<int, int> table =
                eps == 0 ? std::pair{n * k, n * n * k - n * l} : std::pair{n * k + l, n * n * k + n * l};
            auto got = extremal_monomial(k, l, n, eps);
            return bool_check("extremal-monomial", {{"k", k}, {"l", l}, {"n", n}, {"eps", eps}},
                              got == table && got == std::pair{weight, degree});
          }));
    }
  return out;
}

std::vector<Task> g_sl2_fnk(const RunConfig& c) {
  using namespace sl2;
  std::vector<Task> out;
  for (int n = 0; n <= 4; ++n)
    for (int k = 1; k <= 4; ++k)
      if (sel(c.k, k) && sel(c.n, n))
        out.push_back(one([=] { return bool_check("fnk-recursion", {{"n", n}, {"k", k}}, verify_gnk_recursion(n, k)); }));
  for (int n = 0; n <= 6; ++n)
    if (sel(c.n, n)) out.push_back(one([=] { return bool_check("q-binomial", {{"n", n}}, verify_qbinomial(n)); }));
  for (int n = 0; n <= 3; ++n)
    for (int k = 1; k <= 3; ++k)
      if (sel(c.k, k) && sel(c.n, n))
        out.push_back(one([=] {
          Series1 direct = gnk_direct(n, k, 6, -20, 15);
          Series1 closed = expand(fs_scale(gnk_closed(n, k), {-n * k, 0, 0}), {-1, 1}, 6, -20, 15);
          return series_check("fnk-direct", {{"n", n}, {"k", k}}, direct, closed);
        }));
  return out;
}

// ---- sl3

std::vector<Task> g_chsp(const RunConfig& c) {
  using namespace sl3;
  Window w = window(c, {6, 0, 10});
  std::vector<Task> out;
  for (int k = 0; k <= 3; ++k)
    for (int l1 = 0; l1 <= k; ++l1)
      for (int l2 = 0; l1 + l2 <= k; ++l2) {
        if (!sel(c.k, k) || !sel(c.l1, l1) || !sel(c.l2, l2)) continue;
        out.push_back([=] {
          json p = {{"k", k}, {"l1", l1}, {"l2", l2}, {"window", window_json(w)}};
          Series2 b = chi_X(ChiBackend::Bosonic, k, l1, l2, w.zmax, w.qlo, w.qhi);
          std::vector<Check> r{series_check("enumerate=chiB", p, enumerate_X(k, l1, l2, w.zmax, w.qhi), b)};
          Series2 s = chi_X(ChiBackend::Bosonic, k, l1, l2, 3, -5, 5);
          bool norm = s.coeff(0, 0, 0) == 1;
          for (int e = -5; e <= 5; ++e)
            if (e) norm = norm && s.coeff(0, 0, e) == 0;
          r.push_back(bool_check("normalization", p, norm));
          if (l1 >= 1)
            for (auto bk : {ChiBackend::Enumerate, ChiBackend::Bosonic})
              r.push_back(bool_check(bk == ChiBackend::Bosonic ? "recursion-bosonic" : "recursion-enumerate", p,
                                     verify_sr(bk, k, l1, l2, w.zmax, w.qlo, w.qhi)));
          return r;
        });
      }
  for (int k = 1; k <= 3; ++k)
    for (int l2 = 0; l2 <= k + 1; ++l2)
      if (sel(c.k, k))
        out.push_back(one([=] {
          bool zero = chi_X(ChiBackend::Enumerate, k, -1, l2, 5, 0, 8).is_zero() &&
                      chi_X(ChiBackend::Bosonic, k, -1, l2, 5, 0, 8).is_zero();
          return bool_check("initial", {{"k", k}, {"l1", -1}, {"l2", l2}}, zero);
        }));
  return out;
}

std::vector<Task> g_ses_b(const RunConfig& c) {
  using namespace sl3;
  check_levels(c);
  Window w = window(c, {4, -6, 8});
  std::mt19937 rng(static_cast<uint32_t>(c.seed));
  std::uniform_int_distribution<int> K(1, 3), L(-1, 4);
  std::vector<Task> out;
  for (auto kind : {SesKind::a, SesKind::b, SesKind::c, SesKind::d})
    for (int i = 0; i < 50; ++i) {
      int k1 = K(rng), k2 = K(rng);
      if (k1 > k2) std::swap(k1, k2);
      ModuleParams p{c.k1.value_or(k1), c.k2.value_or(k2), L(rng), L(rng), L(rng)};
      out.push_back(one([=] {
        return bool_check(std::string("B-") + ses_name(kind), mp_json(p), verify_B_relation(kind, p, w.zmax, w.qlo, w.qhi));
      }));
    }
  return out;
}

std::vector<Task> g_ses_tr(const RunConfig& c) {
  using namespace sl3;
  Window w = window(c, {4, -6, 8});
  std::vector<Task> out;
  for (const auto& p : sweep(c, 3))
    for (auto kind : {SesKind::a, SesKind::b, SesKind::c, SesKind::d})
      if (ses_region(kind, p))
        out.push_back(one([=] {
          return bool_check(std::string("TR-") + ses_name(kind), mp_json(p), verify_SES(kind, p, w.zmax, w.qlo, w.qhi));
        }));
  return out;
}

std::vector<Task> g_boundary(const RunConfig& c) {
  using namespace sl3;
  check_levels(c);
  Window w = window(c, {4, -6, 8});
  std::vector<Task> out;
  for (int k1 = 1; k1 <= 3; ++k1)
    for (int k2 = k1; k2 <= 3; ++k2) {
      if (!sel(c.k1, k1) || !sel(c.k2, k2)) continue;
      out.push_back([=] {
        json p = {{"k1", k1}, {"k2", k2}};
        std::set<int> items;
        for (const auto& b : boundary_checks(k1, k2)) items.insert(b.item);
        std::vector<Check> r{bool_check("items-cover-1-6", p, items == std::set<int>{1, 2, 3, 4, 5, 6})};
        auto bad = verify_boundary(k1, k2, w.zmax, w.qlo, w.qhi);
        Check ch{"boundary-items", p, bad.empty(), nullptr};
        if (!bad.empty()) ch.counterexample = {{"item", bad.front().item}, {"params", mp_json(bad.front().params)}};
        r.push_back(ch);
        return r;
      });
    }
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= m; ++n)
      for (int i = 0; i <= 2; ++i)
        out.push_back(one([=] {
          return bool_check("denominator-ratio", {{"m", m}, {"n", n}, {"i", i}}, verify_boundary_ratio(m, n, i));
        }));
  return out;
}

std::vector<Task> g_fermform(const RunConfig& c) {
  using namespace sl3;
  Window w = window(c, {4, 0, 8});
  std::vector<Task> out;
  for (const auto& p : sweep(c, 3))
    if (p.l3 == std::min(p.l1, p.l2) && in_Rtilde_U(p))
      out.push_back(one([=] {
        return series_check("fermionic=phiB", mp_json(p), fermionic_F(p.k1, p.k2, p.l1, p.l2, w.zmax, w.qlo, w.qhi),
                            phi_B(p, w.zmax, w.qlo, w.qhi));
      }));
  Window v = window(c, {5, 0, 12});
  for (int k = 1; k <= 3; ++k)
    if (sel(c.k, k))
      out.push_back(one([=] {
        return series_check("fermionic-vacuum=fV", {{"k", k}}, fermionic_F(k, k, 0, 0, v.zmax, v.qlo, v.qhi),
                            ch_Vk(k, v.zmax, v.qlo, v.qhi, VkBackend::Fermionic));
      }));
  return out;
}

std::vector<Task> g_gl(const RunConfig& c) {
  using namespace sl3;
  Window w = window(c, {4, -6, 8});
  std::vector<Task> out;
  for (int k = 1; k <= 2; ++k)
    for (int l1 = 0; l1 <= k; ++l1)
      for (int l2 = 0; l2 <= k; ++l2) {
        if (!sel(c.k, k)) continue;
        json p = {{"k", k}, {"l1", l1}, {"l2", l2}};
        if (l1 + l2 <= k)
          out.push_back(one([=] {
            return series_check("six-term-psi", p, six_term_psi(k, l1, l2, w.zmax, w.qlo, w.qhi),
                                psi_B({k, k, l1, l2, l1 + l2}, w.zmax, w.qlo, w.qhi));
          }));
        if (l1 + l2 >= k)
          out.push_back(one([=] {
            return series_check("six-term-phi", p, six_term_phi(k, l1, l2, w.zmax, w.qlo, w.qhi),
                                phi_B({k, k, l1, l2, l1 + l2 - k}, w.zmax, w.qlo, w.qhi));
          }));
      }
  Window a = window(c, {4, -8, 8});
  const char* gname[3] = {"A-shift-z2", "A-shift-z1", "B-to-A"};
  for (int g = 0; g < 3; ++g)
    for (int d1 = 0; d1 <= 2; ++d1)
      for (int d2 = 0; d2 <= 2; ++d2)
        out.push_back(one([=] {
          auto bad = verify_AB_relations(static_cast<AbGroup>(g), d1, d2, a.zmax, a.qlo, a.qhi);
          Check ch{std::string("relations-") + gname[g], {{"d1", d1}, {"d2", d2}}, bad.empty(), nullptr};
          if (!bad.empty()) ch.counterexample = {{"failing_relations", bad}};
          return ch;
        }));
  Window v = window(c, {5, 0, 12});
  for (int k = 1; k <= 3; ++k) {
    if (!sel(c.k, k)) continue;
    for (auto b : {VkBackend::PsiGl, VkBackend::Bosonic, VkBackend::PsiB})
      out.push_back(one([=] {
        return series_check(std::string("vacuum-") + vk_name(b) + "=fV", {{"k", k}},
                            ch_Vk(k, v.zmax, v.qlo, v.qhi, b), ch_Vk(k, v.zmax, v.qlo, v.qhi, VkBackend::Fermionic));
      }));
    if (k >= 2)
      for (auto b : {VkBackend::Fermionic, VkBackend::Bosonic})
        out.push_back(one([=] {
          return bool_check(std::string("level-recursion-") + vk_name(b), {{"k", k}},
                            verify_Vrec(k, v.zmax, v.qlo, v.qhi, b));
        }));
  }
  return out;
}

// ---- toda

template <class F>
std::vector<Task> dd_grid(const RunConfig& c, int dmax, F f) {
  std::vector<Task> out;
  for (int d1 = 0; d1 <= dmax; ++d1)
    for (int d2 = 0; d2 <= dmax; ++d2)
      if (sel(c.d1, d1) && sel(c.d2, d2)) out.push_back(f(d1, d2));
  return out;
}

std::vector<Task> g_toda(const RunConfig& c) {
  std::vector<Task> out;
  for (auto& t : dd_grid(c, 6, [](int d1, int d2) -> Task {
         if (d1 + d2 == 0) return [] { return std::vector<Check>{}; };
         return one([=] { return bool_check("toda", {{"d1", d1}, {"d2", d2}}, toda::verify_toda(d1, d2)); });
       }))
    out.push_back(t);
  return out;
}

std::vector<Task> g_irec(const RunConfig& c) {
  return dd_grid(c, 4, [](int d1, int d2) {
    return one([=] { return bool_check("irec", {{"d1", d1}, {"d2", d2}}, toda::verify_Irec(d1, d2)); });
  });
}

std::vector<Task> g_ifermionic(const RunConfig& c) {
  Window w = window(c, {6, 0, 12});
  return dd_grid(c, 4, [=](int d1, int d2) {
    return one([=] {
      return series_check("I-fermionic", {{"d1", d1}, {"d2", d2}, {"window", window_json(w)}},
                          toda::I_fermionic(d1, d2, w.zmax, w.qlo, w.qhi),
                          expand(toda::I_dd(d1, d2), {-1, -1}, w.zmax, w.qlo, w.qhi));
    });
  });
}

std::vector<Task> g_isum(const RunConfig& c) {
  return dd_grid(c, 5, [](int d1, int d2) {
    return one([=] { return bool_check("I-sum", {{"d1", d1}, {"d2", d2}}, toda::verify_I_sum(d1, d2)); });
  });
}

std::vector<Task> g_terms(const RunConfig& c) {
  return dd_grid(c, 4, [c](int d1, int d2) -> Task {
    return [=] {
      std::vector<Check> r;
      for (int n = 0; n <= std::min(d1, d2); ++n) {
        if (!sel(c.n, n)) continue;
        json p = {{"d1", d1}, {"d2", d2}, {"n", n}};
        r.push_back(bool_check("terms", p, toda::verify_terms(d1, d2, n)));
        r.push_back(bool_check("c-bar-invariance", p, toda::verify_c_bar_invariance(d1, d2, n)));
      }
      return r;
    };
  });
}

json sample_json(const toda::Sample& s) { return {{"v", s.v}, {"l12", s.l12}, {"l23", s.l23}}; }

std::vector<Check> numeric_checks(const std::vector<toda::NumericResult>& rs) {
  std::vector<Check> out;
  for (const auto& r : rs) {
    json p = {{"check", r.check}, {"D", r.D}, {"sample", sample_json(r.sample)}, {"max_residual", r.max_residual},
              {"pass", r.pass}};
    Check c{r.check, p, r.pass, nullptr};
    if (!r.pass) c.counterexample = {{"max_residual", r.max_residual}};
    out.push_back(c);
  }
  return out;
}

std::vector<Task> numeric_group(const RunConfig& c, bool whittaker) {
  if (c.D < 0 || c.samples < 1 || c.precision < 20) throw UsageError("need D >= 0, samples >= 1, precision >= 20");
  return {[=] {
    std::vector<toda::Rejection> rej;
    auto samples = toda::draw_samples(c.samples, c.seed, c.D, c.precision, &rej);
    json rj = json::array();
    for (const auto& r : rej) rj.push_back({{"sample", sample_json(r.sample)}, {"reason", r.reason}});
    std::vector<Check> out{Check{"screening", {{"accepted", samples.size()}, {"rejected", rj}}, true, nullptr}};
    auto res = whittaker ? toda::verify_whittaker(c.D, samples, c.precision)
                         : toda::verify_gt_representation(c.D, samples, c.precision);
    for (auto& ch : numeric_checks(res)) out.push_back(ch);
    return out;
  }};
}

using Group = std::function<std::vector<Task>(const RunConfig&)>;

const std::map<std::string, Group>& groups() {
  static const std::map<std::string, Group> g = {
      {"sl2-triple", g_sl2_triple},
      {"sl2-rec", g_sl2_rec},
      {"sl2-phi", g_sl2_phi},
      {"sl2-fnk", g_sl2_fnk},
      {"chsp", g_chsp},
      {"ses-b", g_ses_b},
      {"ses-tr", g_ses_tr},
      {"boundary", g_boundary},
      {"fermform", g_fermform},
      {"gl", g_gl},
      {"toda", g_toda},
      {"irec", g_irec},
      {"ifermionic", g_ifermionic},
      {"isum", g_isum},
      {"terms", g_terms},
      {"gt-numeric", [](const RunConfig& c) { return numeric_group(c, false); }},
      {"whittaker", [](const RunConfig& c) { return numeric_group(c, true); }},
  };
  return g;
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& suite_table() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> t = {
      {"sl2-all", {"sl2-triple", "sl2-rec", "sl2-phi", "sl2-fnk"}},
      {"chsp", {"chsp"}},
      {"ses", {"ses-b", "ses-tr"}},
      {"boundary", {"boundary"}},
      {"gl", {"fermform", "gl"}},
      {"toda", {"toda"}},
      {"irec", {"irec", "ifermionic"}},
      {"isum", {"isum"}},
      {"terms", {"terms"}},
      {"gt-numeric", {"gt-numeric"}},
      {"whittaker", {"whittaker"}},
  };
  return t;
}

Report run_groups(const std::string& name, const std::vector<std::string>& gs, const RunConfig& c) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Task> tasks;
  for (const auto& g : gs)
    for (auto& t : groups().at(g)(c)) tasks.push_back(std::move(t));
  std::vector<std::vector<Check>> parts(tasks.size());
  parallel_for(tasks.size(), [&](size_t i) { parts[i] = tasks[i](); });
  Report r;
  r.suite = name;
  for (auto& p : parts)
    for (auto& ch : p) r.checks.push_back(std::move(ch));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

json config_echo(const RunConfig& c) {
  json j;
  auto opt = [&](const char* k, const std::optional<int>& v) { j[k] = v ? json(*v) : json(nullptr); };
  opt("zmax", c.zmax);
  opt("qlo", c.qlo);
  opt("qhi", c.qhi);
  j["imax_buffer"] = c.imax_buffer;
  j["precision"] = c.precision;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["D"] = c.D;
  opt("k", c.k);
  opt("k1", c.k1);
  opt("k2", c.k2);
  opt("l1", c.l1);
  opt("l2", c.l2);
  opt("l3", c.l3);
  opt("d1", c.d1);
  opt("d2", c.d2);
  opt("n", c.n);
  return j;
}

size_t Report::failed() const {
  size_t n = 0;
  for (const auto& c : checks) n += !c.pass;
  return n;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, g] : suite_table()) v.push_back(n);
    v.push_back("all");
    return v;
  }();
  return names;
}

Report run_suite(const std::string& name, const RunConfig& cfg) {
  std::vector<std::string> gs;
  for (const auto& [n, g] : suite_table())
    if (name == "all" || name == n) gs.insert(gs.end(), g.begin(), g.end());
  if (gs.empty()) throw UsageError("unknown suite: " + name);
  return run_groups(name, gs, cfg);
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1, "sl2 triple agreement", {"sl2-triple"}, 60},
      {2, "sl2 recursion", {"sl2-rec"}, 0},
      {3, "sl2 fiber sums and extremal monomials", {"sl2-phi"}, 0},
      {4, "sl2 g_{n,k} recursion, q-binomial, direct sum", {"sl2-fnk"}, 0},
      {5, "sl3 chsp, recursion, initial and normalization", {"chsp"}, 300},
      {6, "sl3 (Ba)-(Bd) random and (TRa)-(TRd) on regions", {"ses-b", "ses-tr"}, 0},
      {7, "sl3 boundary items and denominator ratio", {"boundary"}, 0},
      {8, "sl3 fermionic formula and vacuum", {"fermform"}, 0},
      {9, "sl3 six-term formulas, A/B relation sets, vacuum backends, level recursion", {"gl"}, 0},
      {10, "Toda recursion, Irec, fermionic I, I as a sum over n", {"toda", "irec", "ifermionic", "isum"}, 0},
      {11, "terms identity and c bar-invariance", {"terms"}, 0},
      {12, "numeric quantum-group suite", {"gt-numeric", "whittaker"}, 300},
  };
  return c;
}

Report run_criterion(int id) {
  for (const auto& c : criteria())
    if (c.id == id) {
      Report r = run_groups("criterion-" + std::to_string(id), c.groups, RunConfig{});
      if (c.time_limit_s > 0)
        r.checks.push_back(bool_check("runtime", {{"limit_s", c.time_limit_s}}, r.seconds < c.time_limit_s));
      return r;
    }
  throw UsageError("unknown criterion " + std::to_string(id));
}

json to_json(const Report& r, const RunConfig& c) {
  json checks = json::array();
  for (const auto& ch : r.checks) {
    json j = {{"name", ch.name}, {"params", ch.params}, {"pass", ch.pass}};
    if (!ch.pass) j["counterexample"] = ch.counterexample;
    checks.push_back(j);
  }
  return {{"suite", r.suite},
          {"config", config_echo(c)},
          {"summary", {{"total", r.checks.size()}, {"failed", r.failed()}, {"pass", r.pass()}}},
          {"checks", checks}};
}

std::string to_table(const Report& r) {
  std::ostringstream os;
  for (const auto& ch : r.checks) {
    os << (ch.pass ? "PASS " : "FAIL ") << ch.name << " " << ch.params.dump();
    if (!ch.pass) os << " counterexample=" << ch.counterexample.dump();
    os << "\n";
  }
  os << r.suite << ": " << r.checks.size() - r.failed() << "/" << r.checks.size() << " passed\n";
  return os.str();
}

json series_json(const Series2& s) {
  json terms = json::array();
  for (const auto& [m, w] : s.coeffs())
    for (const auto& [e, c] : w.coeffs)
      if (c != 0) terms.push_back({{"m1", m.first}, {"m2", m.second}, {"q", e}, {"c", rat(c)}});
  return {{"orientation", {s.orientation().dir1, s.orientation().dir2}},
          {"zmax", s.zmax()},
          {"qwindow", {s.qlo(), s.qhi()}},
          {"terms", terms}};
}

std::string series_table(const Series2& s) {
  std::ostringstream os;
  os << "# orientation " << s.orientation().dir1 << " " << s.orientation().dir2 << " zmax " << s.zmax() << " q ["
     << s.qlo() << "," << s.qhi() << "]\n";
  for (const auto& [m, w] : s.coeffs())
    for (const auto& [e, c] : w.coeffs)
      if (c != 0) os << m.first << " " << m.second << " " << e << " " << rat(c) << "\n";
  return os.str();
}

}  // namespace qchar::suites
