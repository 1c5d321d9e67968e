#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qchar/sl2.hpp"
#include "qchar/sl3.hpp"
#include "qchar/suites.hpp"
#include "qchar/toda.hpp"

using namespace qchar;
using suites::RunConfig;
using suites::UsageError;

namespace {

int need(const std::optional<int>& o, const char* flag) {
  if (!o) throw UsageError(std::string("missing --") + flag);
  return *o;
}

sl3::ModuleParams module_params(const RunConfig& c) {
  return {need(c.k1, "k1"), need(c.k2, "k2"), need(c.l1, "l1"), need(c.l2, "l2"), need(c.l3, "l3")};
}

Series2 compute(const std::string& target, const RunConfig& c) {
  int zmax = c.zmax.value_or(6), qlo = c.qlo.value_or(0), qhi = c.qhi.value_or(10);
  if (target == "sl2") {
    int k = need(c.k, "k"), l = need(c.l1, "l1");
    if (k < 0 || l < 0 || l > k) throw UsageError("sl2 needs 0 <= l1 <= k");
    return sl2::character(sl2::Backend::Fermionic, {k, l}, zmax, qlo, qhi);
  }
  if (target == "sl3-chi") {
    int k = need(c.k, "k"), l1 = need(c.l1, "l1"), l2 = need(c.l2, "l2");
    if (k < 0 || l1 < 0 || l2 < 0 || l1 + l2 > k) throw UsageError("sl3-chi needs l1, l2 >= 0 and l1 + l2 <= k");
    return sl3::chi_X(sl3::ChiBackend::Bosonic, k, l1, l2, zmax, qlo, qhi);
  }
  if (target == "sl3-phi") {
    auto p = module_params(c);
    if (!sl3::in_P_U(p)) throw UsageError("parameters outside P_U: " + sl3::to_string(p));
    if (sl3::in_Rtilde_U(p)) return sl3::phi_B(p, zmax, qlo, qhi);
    if (p.l3 == std::min(p.l1, p.l2)) return sl3::fermionic_F(p.k1, p.k2, p.l1, p.l2, zmax, qlo, qhi);
    throw UsageError("parameters outside R~_U and l3 != min(l1,l2): " + sl3::to_string(p));
  }
  if (target == "sl3-psi") {
    auto p = module_params(c);
    if (!sl3::in_P_V(p)) throw UsageError("parameters outside P_V: " + sl3::to_string(p));
    return sl3::psi_B(p, zmax, qlo, qhi);
  }
  if (target == "vk") {
    int k = need(c.k, "k");
    if (k < 1) throw UsageError("vk needs k >= 1");
    return sl3::ch_Vk(k, zmax, qlo, qhi, sl3::VkBackend::Fermionic);
  }
  if (target == "I" || target == "Iddn") {
    int d1 = need(c.d1, "d1"), d2 = need(c.d2, "d2");
    if (d1 < 0 || d2 < 0) throw UsageError("d1, d2 must be >= 0");
    if (target == "I") return expand(toda::I_dd(d1, d2), {-1, -1}, zmax, qlo, qhi);
    int n = need(c.n, "n");
    if (n < 0 || n > std::min(d1, d2)) throw UsageError("Iddn needs 0 <= n <= min(d1,d2)");
    return expand(toda::I_ddn(d1, d2, n), {-1, -1}, zmax, qlo, qhi);
  }
  throw UsageError("unknown target " + target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-series characters of principal subspaces and their identities"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json", out;

  auto add_common = [&](CLI::App* s) {
    auto opt = [&](const char* name, std::optional<int>& v) {
      s->add_option_function<int>(std::string("--") + name, [&v](const int& x) { v = x; });
    };
    opt("k", cfg.k);
    opt("k1", cfg.k1);
    opt("k2", cfg.k2);
    opt("l1", cfg.l1);
    opt("l2", cfg.l2);
    opt("l3", cfg.l3);
    opt("d1", cfg.d1);
    opt("d2", cfg.d2);
    opt("n", cfg.n);
    opt("zmax", cfg.zmax);
    opt("qlo", cfg.qlo);
    opt("qhi", cfg.qhi);
    s->add_option("--precision", cfg.precision);
    s->add_option("--samples", cfg.samples);
    s->add_option("--seed", cfg.seed);
    s->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));
    s->add_option("--out", out);
  };

  std::string target, suite;
  auto* ch = app.add_subcommand("char", "compute a character series");
  ch->add_option("target", target)->required()->check(
      CLI::IsMember({"sl2", "sl3-chi", "sl3-phi", "sl3-psi", "vk", "I", "Iddn"}));
  add_common(ch);
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite)->required()->check(CLI::IsMember(suites::suite_names()));
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cfg.zmax && *cfg.zmax < 0) throw UsageError("zmax must be >= 0");
    if (cfg.qlo && cfg.qhi && *cfg.qlo > *cfg.qhi) throw UsageError("qlo <= qhi violated");
    std::string text;
    int rc = 0;
    if (*ch) {
      Series2 s = compute(target, cfg);
      text = format == "json" ? suites::series_json(s).dump(2) + "\n" : suites::series_table(s);
    } else {
      auto t0 = std::chrono::steady_clock::now();
      auto r = suites::run_suite(suite, cfg);
      text = format == "json" ? suites::to_json(r, cfg).dump(2) + "\n" : suites::to_table(r);
      rc = r.pass() ? 0 : 1;
      std::cerr << "wall-clock " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
                << " s\n";
    }
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) throw UsageError("cannot open " + out);
      f << text;
    }
    return rc;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
