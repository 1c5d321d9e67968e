#include "qchar/whittaker.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <Eigen/Sparse>
#include <cmath>
#include <map>
#include <random>

#include "qchar/toda.hpp"

namespace qchar::toda {

namespace {

namespace mp = boost::multiprecision;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Mat = Eigen::SparseMatrix<Real>;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

Real to_real(const Rational& c) { return Real(c.get_num().get_str()) / Real(c.get_den().get_str()); }

struct Point {
  Real v, l12, l23;
  explicit Point(const Sample& s) : v(s.v), l12(s.l12), l23(s.l23) {}
  // v^{a + b l12 + c l23}
  Real pow_v(const Real& a, const Real& b, const Real& c) const { return mp::pow(v, a + b * l12 + c * l23); }
  Real eval(const VRational& t) const {
    if (t.coeff == 0) return Real(0);
    Real out = to_real(t.coeff) * pow_v(t.mono[0], t.mono[1], t.mono[2]);
    for (const auto& [b, m] : t.factors) out *= mp::pow(Real(1) - pow_v(b[0], b[1], b[2]), m);
    return out;
  }
};

class GTModule {
 public:
  GTModule(const Point& p, int top) : p_(p) {
    for (int d1 = 0; d1 <= top; ++d1)
      for (int d2 = 0; d2 <= top; ++d2)
        for (int n = 0; n <= std::min(d1, d2); ++n) {
          index_[{d1, d2, n}] = static_cast<int>(basis_.size());
          basis_.push_back({d1, d2, n});
        }
  }

  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<GTIndex>& basis() const { return basis_; }
  int index(const GTIndex& i) const {
    auto it = index_.find(i);
    return it == index_.end() ? -1 : it->second;
  }

  Real sqrt_coeff(const VRational& t) const {
    Real x = p_.eval(t);
    if (t.coeff == 0) return Real(0);
    if (x <= 0) throw std::domain_error("nonpositive radicand");
    return mp::sqrt(x);
  }

  Mat E1() const {
    return build([&](const GTIndex& i, auto add) {
      if (i.d1 == 0) return;
      GTCoeffs g = gt_coeffs(i);
      add({i.d1 - 1, i.d2, i.n - 1}, g.b1);
      add({i.d1 - 1, i.d2, i.n}, g.b2);
    });
  }
  Mat F1() const {
    return build([&](const GTIndex& i, auto add) {
      GTIndex t1{i.d1 + 1, i.d2, i.n + 1}, t2{i.d1 + 1, i.d2, i.n};
      if (valid(t1)) add(t1, gt_coeffs(t1).b1);
      add(t2, gt_coeffs(t2).b2);
    });
  }
  Mat E2() const {
    return build([&](const GTIndex& i, auto add) {
      if (i.d2 == 0) return;
      add({i.d1, i.d2 - 1, i.n}, gt_coeffs(i).a);
    });
  }
  Mat F2() const {
    return build([&](const GTIndex& i, auto add) {
      GTIndex t{i.d1, i.d2 + 1, i.n};
      add(t, gt_coeffs(t).a);
    });
  }
  // K1^{e1} K2^{e2}
  Mat K(const Real& e1, const Real& e2) const {
    Mat m(size(), size());
    std::vector<Eigen::Triplet<Real>> tr;
    for (int j = 0; j < size(); ++j) {
      const auto& i = basis_[j];
      tr.emplace_back(j, j, mp::pow(p_.v, e1 * (p_.l12 - 2 * i.d1 + i.d2) + e2 * (p_.l23 - 2 * i.d2 + i.d1)));
    }
    m.setFromTriplets(tr.begin(), tr.end());
    return m;
  }
  Mat identity() const { return K(0, 0); }

 private:
  template <class F>
  Mat build(F f) const {
    std::vector<Eigen::Triplet<Real>> tr;
    for (int j = 0; j < size(); ++j)
      f(basis_[j], [&](const GTIndex& t, const VRational& rad) {
        int r = index(t);
        if (r < 0 || !valid(t)) return;
        Real c = sqrt_coeff(rad);
        if (c != 0) tr.emplace_back(r, j, c);
      });
    Mat m(size(), size());
    m.setFromTriplets(tr.begin(), tr.end());
    return m;
  }

  const Point& p_;
  std::vector<GTIndex> basis_;
  std::map<GTIndex, int> index_;
};

struct Term {
  Real coeff;
  Mat op;
};

// max over columns in the D-ball of |sum_i c_i op_i e_j| / max_i |c_i op_i e_j|
Real relation_residual(const GTModule& m, int D, const std::vector<Term>& terms) {
  Real worst = 0;
  for (int j = 0; j < m.size(); ++j) {
    const auto& b = m.basis()[j];
    if (b.d1 > D || b.d2 > D) continue;
    Vec sum = Vec::Zero(m.size());
    Real scale = 0;
    for (const auto& t : terms) {
      Vec col = t.coeff * Vec(t.op.col(j));
      for (int i = 0; i < col.size(); ++i) scale = std::max(scale, Real(mp::abs(col[i])));
      sum += col;
    }
    if (scale == 0) continue;
    Real num = 0;
    for (int i = 0; i < sum.size(); ++i) num = std::max(num, Real(mp::abs(sum[i])));
    worst = std::max(worst, Real(num / scale));
  }
  return worst;
}

Real vector_residual(const Vec& a, const Vec& b) {
  Real num = 0, scale = 0;
  for (int i = 0; i < a.size(); ++i) {
    num = std::max(num, Real(mp::abs(a[i] - b[i])));
    scale = std::max({scale, Real(mp::abs(a[i])), Real(mp::abs(b[i]))});
  }
  return scale == 0 ? Real(0) : Real(num / scale);
}

struct PrecisionScope {
  unsigned saved;
  explicit PrecisionScope(int digits) : saved(Real::default_precision()) { Real::default_precision(digits); }
  ~PrecisionScope() { Real::default_precision(saved); }
};

NumericResult make_result(const std::string& check, int D, const Sample& s, const Real& res, int precision) {
  NumericResult r;
  r.check = check;
  r.D = D;
  r.sample = s;
  r.max_residual = res.convert_to<double>();
  r.pass = r.max_residual < numeric_tolerance(precision);
  return r;
}

std::vector<NumericResult> gt_checks(int D, const Sample& s, int precision) {
  Point p(s);
  GTModule m(p, D + 2);
  const Real v = p.v, vi = 1 / p.v, one = 1;
  Mat E[2] = {m.E1(), m.E2()}, F[2] = {m.F1(), m.F2()};
  Mat K[2] = {m.K(1, 0), m.K(0, 1)}, Ki[2] = {m.K(-1, 0), m.K(0, -1)};
  Mat I = m.identity();
  std::vector<NumericResult> out;
  auto check = [&](const std::string& name, const std::vector<Term>& terms) {
    out.push_back(make_result(name, D, s, relation_residual(m, D, terms), precision));
  };
  const char* idx[2] = {"1", "2"};
  for (int i = 0; i < 2; ++i) {
    std::string a = idx[i];
    check("K" + a + "Kinv" + a, {{one, Mat(K[i] * Ki[i])}, {-one, I}});
    for (int j = 0; j < 2; ++j) {
      std::string b = idx[j];
      Real ce = i == j ? v * v : vi, cf = i == j ? vi * vi : v;
      check("K" + a + "E" + b, {{one, Mat(K[i] * E[j])}, {-ce, Mat(E[j] * K[i])}});
      check("K" + a + "F" + b, {{one, Mat(K[i] * F[j])}, {-cf, Mat(F[j] * K[i])}});
      if (i == j)
        check("E" + a + "F" + a, {{one, Mat(E[i] * F[i])},
                                  {-one, Mat(F[i] * E[i])},
                                  {-1 / (v - vi), K[i]},
                                  {1 / (v - vi), Ki[i]}});
      else {
        check("E" + a + "F" + b, {{one, Mat(E[i] * F[j])}, {-one, Mat(F[j] * E[i])}});
        Real sv = v + vi;
        check("serreE" + a + b,
              {{one, Mat(E[i] * E[i] * E[j])}, {-sv, Mat(E[i] * E[j] * E[i])}, {one, Mat(E[j] * E[i] * E[i])}});
        check("serreF" + a + b,
              {{one, Mat(F[i] * F[i] * F[j])}, {-sv, Mat(F[i] * F[j] * F[i])}, {one, Mat(F[j] * F[i] * F[i])}});
      }
    }
  }
  check("K1K2", {{one, Mat(K[0] * K[1])}, {-one, Mat(K[1] * K[0])}});

  const Real t = Real(1) / 3;
  Mat F13 = Mat(F[1] * F[0]) - v * Mat(F[0] * F[1]);
  Mat E13 = Mat(E[0] * E[1]) - v * Mat(E[1] * E[0]);
  Real w = (v - vi) * (v - vi);
  Real l2 = (p.l23 - p.l12) / 3, l1 = l2 + p.l12, l3 = l2 - p.l23, q = v * v;
  Real scalar = mp::pow(q, -l1 - 1) + mp::pow(q, -l2) + mp::pow(q, -l3 + 1);
  check("casimir", {{vi * vi, m.K(-4 * t, -2 * t)},
                    {one, m.K(2 * t, -2 * t)},
                    {v * v, m.K(2 * t, 4 * t)},
                    {w * vi, Mat(F[0] * E[0] * m.K(-t, -2 * t))},
                    {w * v, Mat(F[1] * E[1] * m.K(2 * t, t))},
                    {w * vi, Mat(F13 * E13 * m.K(-t, t))},
                    {-scalar, I}});

  Mat e1 = E[0] * Ki[0], e2 = E[1];
  check("modserre12", {{one, Mat(e1 * e1 * e2)}, {-(1 + v * v), Mat(e1 * e2 * e1)}, {v * v, Mat(e2 * e1 * e1)}});
  check("modserre21",
        {{one, Mat(e2 * e2 * e1)}, {-(1 + vi * vi), Mat(e2 * e1 * e2)}, {vi * vi, Mat(e1 * e2 * e2)}});
  return out;
}

std::vector<NumericResult> whittaker_checks(int D, const Sample& s, int precision, WhittakerExponent e) {
  Point p(s);
  GTModule m(p, D + 2);
  const Real v = p.v, one = 1;
  const int sign = e == WhittakerExponent::Corrected ? -1 : 1;
  auto lin = [&](const LinForm& f) { return Real(f.c) + f.a12 * p.l12 + f.a23 * p.l23; };

  // components of omega and omega-bar at weight (d1, d2)
  auto build = [&](int d1, int d2, bool dual) {
    Vec w = Vec::Zero(m.size());
    if (d1 < 0 || d2 < 0) return w;
    for (int n = 0; n <= std::min(d1, d2); ++n) {
      GTCoeffs g = gt_coeffs({d1, d2, n});
      Real rho = sign * lin(g.r);
      Real expo = dual ? -rho + lin(g.s) : rho;
      Real den = dual ? one - 1 / (v * v) : one - v * v;
      w[m.index({d1, d2, n})] = mp::pow(v, expo) * m.sqrt_coeff(g.c) / mp::pow(den, d1 + d2);
    }
    return w;
  };

  // the dual module has the same E, F matrices (brackets are symmetric in v) and inverse K
  Mat E1 = m.E1(), E2 = m.E2(), K1i = m.K(-1, 0), K2i = m.K(0, -1);
  Mat e1 = E1 * K1i, ebar2 = E2 * K2i;
  Real r[5] = {0, 0, 0, 0, 0};
  for (int d1 = 0; d1 <= D; ++d1)
    for (int d2 = 0; d2 <= D; ++d2) {
      Vec w = build(d1, d2, false), wb = build(d1, d2, true);
      Real a = one / (one - v * v), b = v / (one - 1 / (v * v));
      r[0] = std::max(r[0], vector_residual(e1 * w, a * build(d1 - 1, d2, false)));
      r[1] = std::max(r[1], vector_residual(E2 * w, a * build(d1, d2 - 1, false)));
      r[2] = std::max(r[2], vector_residual(E1 * wb, b * build(d1 - 1, d2, true)));
      r[3] = std::max(r[3], vector_residual(ebar2 * wb, b * build(d1, d2 - 1, true)));
      Real pair = w.dot(wb), exact = 0;
      for (const auto& t : to_vxy(I_dd(d1, d2))) exact += p.eval(t);
      r[4] = std::max(r[4], Real(mp::abs(pair - exact) / mp::abs(exact)));
    }
  const char* names[5] = {"whittaker-E1", "whittaker-E2", "dual-E1", "dual-E2K2", "pairing"};
  std::vector<NumericResult> out;
  for (int i = 0; i < 5; ++i) out.push_back(make_result(names[i], D, s, r[i], precision));
  return out;
}

template <class F>
std::vector<NumericResult> per_sample(const std::vector<Sample>& samples, int precision, F f) {
  PrecisionScope scope(precision);
  std::vector<std::vector<NumericResult>> parts(samples.size());
  parallel_for(samples.size(), [&](size_t i) { parts[i] = f(samples[i]); });
  std::vector<NumericResult> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

double numeric_tolerance(int precision) { return std::pow(10.0, -(precision - 15)); }

std::string screen_sample(const Sample& s, int D, int precision) {
  PrecisionScope scope(precision);
  Point p(s);
  for (int d1 = 0; d1 <= D + 2; ++d1)
    for (int d2 = 0; d2 <= D + 2; ++d2)
      for (int n = 0; n <= std::min(d1, d2); ++n) {
        GTCoeffs g = gt_coeffs({d1, d2, n});
        const std::pair<const char*, const VRational*> rads[4] = {{"a", &g.a}, {"b1", &g.b1}, {"b2", &g.b2}, {"c", &g.c}};
        for (const auto& [name, t] : rads)
          if (t->coeff != 0 && p.eval(*t) <= 0)
            return std::string(name) + "(" + std::to_string(d1) + "," + std::to_string(d2) + "," +
                   std::to_string(n) + ") <= 0";
      }
  return {};
}

std::vector<Sample> draw_samples(int count, uint64_t seed, int D, int precision, std::vector<Rejection>* rejected) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> vd(0.3, 0.7);
  std::uniform_int_distribution<int> ld(20, 39);
  std::vector<Sample> out;
  for (int tries = 0; static_cast<int>(out.size()) < count; ++tries) {
    if (tries > 1000 * (count + 1)) throw std::runtime_error("no admissible sample points");
    Sample s{vd(rng), ld(rng) + 0.5, ld(rng) + 0.5};
    std::string why = screen_sample(s, D, precision);
    if (why.empty())
      out.push_back(s);
    else if (rejected)
      rejected->push_back({s, why});
  }
  return out;
}

std::vector<NumericResult> verify_gt_representation(int D, const std::vector<Sample>& samples, int precision) {
  return per_sample(samples, precision, [&](const Sample& s) { return gt_checks(D, s, precision); });
}

std::vector<NumericResult> verify_whittaker(int D, const std::vector<Sample>& samples, int precision,
                                            WhittakerExponent e) {
  return per_sample(samples, precision, [&](const Sample& s) { return whittaker_checks(D, s, precision, e); });
}

}  // namespace qchar::toda
