#include "ywq/series.hpp"

#include <cmath>

namespace ywq {

VarSetPtr make_vars(std::vector<std::string> names) {
  std::vector<int> w(names.size(), 1);
  return make_vars(std::move(names), std::move(w));
}

VarSetPtr make_vars(std::vector<std::string> names, std::vector<int> weights, int laurent) {
  if (names.size() != weights.size())
    throw std::invalid_argument("make_vars: names/weights size mismatch");
  for (size_t i = 0; i < weights.size(); ++i) {
    bool is_laurent = static_cast<int>(i) == laurent;
    if (weights[i] < 0 || (weights[i] == 0 && !is_laurent))
      throw std::invalid_argument("make_vars: weights must be positive (0 only for Laurent)");
  }
  auto vs = std::make_shared<VarSet>();
  vs->names = std::move(names);
  vs->weights = std::move(weights);
  vs->laurent = laurent;
  return vs;
}

VarSetPtr q_vars(int n) {
  std::vector<std::string> names;
  names.reserve(n + 1);
  for (int i = 0; i <= n; ++i) names.push_back("q" + std::to_string(i));
  return make_vars(std::move(names));
}

VarSetPtr single_q() {
  static VarSetPtr vs = make_vars({"q"});
  return vs;
}

VarSetPtr qz_vars() {
  static VarSetPtr vs = make_vars({"q", "z"}, {1, 0}, 1);
  return vs;
}

template <>
ZSeries ZSeries::inverse() const {
  ExpVec zero_e(vars().count(), 0);
  Int c0 = coeff_of(zero_e);
  if (c0 != 1 && c0 != -1)
    throw std::invalid_argument("inverse: constant term is not a unit");
  ZSeries t(vars_ptr(), trunc());  // t = 1 - S/c0, terms of degree >= 1
  for (const auto& [e, c] : terms()) {
    if (e == zero_e) continue;
    if (degree_of(e) < 1) throw std::invalid_argument("inverse: non-constant term of degree 0");
    t.add_term(e, -c * c0);
  }
  ZSeries acc = ZSeries::one(vars_ptr(), trunc(), 1);
  ZSeries pw = acc;
  for (int k = 1; k <= trunc(); ++k) {
    pw = pw * t;
    if (pw.empty()) break;
    for (const auto& [e, c] : pw.terms()) acc.add_term(e, c);
  }
  return c0 == 1 ? acc : -acc;
}

template <>
ZSeries ZSeries::pow(long long k) const {
  if (k < 0) return inverse().pow(-k);
  ZSeries acc = ZSeries::one(vars_ptr(), trunc(), 1);
  ZSeries base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

ZSeries eta_factor(const VarSetPtr& vars, const ExpVec& monomial, long long power, int trunc) {
  ZSeries probe(vars, trunc);
  probe.check_exponents(monomial);
  int d = probe.degree_of(monomial);
  if (d <= 0) throw std::invalid_argument("eta_factor: monomial must have positive degree");
  ZSeries acc = ZSeries::one(vars, trunc, 1);
  if (power == 0) return acc;
  for (int m = 1; static_cast<long long>(m) * d <= trunc; ++m) {
    ZSeries factor = ZSeries::one(vars, trunc, 1);
    ExpVec e(monomial.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = monomial[i] * m;
    factor.add_term(std::move(e), -1);
    acc = acc * factor;
  }
  return power > 0 ? acc.pow(power) : acc.pow(-power).inverse();
}

namespace {

// Leading principal minors via fraction-free Gaussian elimination (Bareiss);
// all positive iff the matrix is positive definite.
bool is_positive_definite(std::vector<std::vector<Int>> a) {
  int n = static_cast<int>(a.size());
  Int prev = 1;
  for (int k = 0; k < n; ++k) {
    if (a[k][k] <= 0) return false;
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return true;
}

struct ThetaEnv {
  const std::vector<std::vector<Int>>& c;
  const std::vector<int>& var_of;
  const ExpVec& q_mon;
  int trunc;
  int nv;
  const VarSet& vars;
  ZSeries* out;
  std::vector<Int> m;
  std::vector<long long> box;  // per-coordinate |m_i| bound
};

void theta_rec(ThetaEnv& env, int i) {
  int n = static_cast<int>(env.c.size());
  if (i == n) {
    long long q2 = 0;  // m^T C m
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) q2 += env.m[a] * env.c[a][b] * env.m[b];
    if (q2 % 2 != 0) throw std::logic_error("theta_series: odd m^T C m");
    long long k = q2 / 2;
    ExpVec e(env.nv, 0);
    for (size_t j = 0; j < e.size(); ++j) e[j] = static_cast<int>(env.q_mon[j] * k);
    for (int a = 0; a < n; ++a) e[env.var_of[a]] += static_cast<int>(env.m[a]);
    long long deg = 0;
    for (int j = 0; j < env.nv; ++j) deg += static_cast<long long>(env.vars.weights[j]) * e[j];
    if (deg > env.trunc) return;
    for (int j = 0; j < env.nv; ++j)
      if (e[j] < 0 && j != env.vars.laurent)
        throw std::logic_error("theta_series: negative exponent in emitted term");
    env.out->add_term(std::move(e), 1);
    return;
  }
  for (long long v = -env.box[i]; v <= env.box[i]; ++v) {
    env.m[i] = v;
    theta_rec(env, i + 1);
  }
}

ZSeries theta_series_impl(const VarSetPtr& vars, const std::vector<std::vector<Int>>& cartan,
                          const std::vector<int>& var_of_coordinate, const ExpVec& q_monomial,
                          int trunc, int extra) {
  int n = static_cast<int>(cartan.size());
  for (const auto& row : cartan)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("theta: C not square");
  for (int i = 0; i < n; ++i) {
    if (cartan[i][i] % 2 != 0)
      throw std::invalid_argument("theta: Cartan-like matrix must have even diagonal");
    for (int j = 0; j < n; ++j)
      if (cartan[i][j] != cartan[j][i]) throw std::invalid_argument("theta: C not symmetric");
  }
  if (!is_positive_definite(cartan))
    throw std::invalid_argument("theta: C not positive definite");
  if (static_cast<int>(var_of_coordinate.size()) != n)
    throw std::invalid_argument("theta: variable assignment size mismatch");

  ZSeries out(vars, trunc);
  out.check_exponents(q_monomial);
  int dq = out.degree_of(q_monomial);
  if (dq <= 0) throw std::invalid_argument("theta: q monomial must have positive degree");

  // Conservative enumeration bound. A term with quadratic part k =
  // (1/2) m^T C m has weighted degree >= k*dq - sum_i w_i |m_i|, and
  // m_i^2 <= 2k (C^{-1})_{ii} by positive definiteness. We find the smallest
  // K such that every k > K forces the degree above the truncation, using a
  // floating upper estimate of (C^{-1})_{ii} padded by a fixed margin; the
  // box is then |m_i| <= sqrt(2K (C^{-1})_{ii}) + margin. Over-enumeration is
  // harmless (each candidate is checked exactly); the widened variant in the
  // tests guards against under-enumeration.
  std::vector<double> cinv_diag(n);
  {
    // invert in doubles; matrices here are tiny and well conditioned
    std::vector<std::vector<double>> a(n, std::vector<double>(2 * n, 0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] = static_cast<double>(cartan[i][j]);
      a[i][n + i] = 1.0;
    }
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      std::swap(a[piv], a[col]);
      double d = a[col][col];
      for (int j = 0; j < 2 * n; ++j) a[col][j] /= d;
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        double f = a[r][col];
        if (f == 0.0) continue;
        for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
      }
    }
    for (int i = 0; i < n; ++i) cinv_diag[i] = a[i][n + i] * 1.02 + 0.05;
  }
  double wsum = 0;
  for (int i = 0; i < n; ++i) wsum += vars->weights[var_of_coordinate[i]];
  long long K = 0;
  while (true) {
    double linear_max = 0;
    for (int i = 0; i < n; ++i)
      linear_max += vars->weights[var_of_coordinate[i]] *
                    (std::sqrt(2.0 * (K + 1) * cinv_diag[i]) + 1.0);
    if (static_cast<double>(K + 1) * dq - linear_max > trunc) break;
    ++K;
    if (K > 4LL * trunc * trunc + 64) break;  // hard stop; exact filter still applies
  }
  K += extra;

  ThetaEnv env{cartan, var_of_coordinate, q_monomial, trunc, vars->count(), *vars, &out,
               std::vector<Int>(n, 0), std::vector<long long>(n, 0)};
  for (int i = 0; i < n; ++i)
    env.box[i] = static_cast<long long>(std::sqrt(2.0 * K * cinv_diag[i])) + 1 + (extra > 0);
  theta_rec(env, 0);
  return out;
}

}  // namespace

ZSeries theta_series(const VarSetPtr& vars, const std::vector<std::vector<Int>>& cartan,
                     const std::vector<int>& var_of_coordinate, const ExpVec& q_monomial,
                     int trunc) {
  return theta_series_impl(vars, cartan, var_of_coordinate, q_monomial, trunc, 0);
}

ZSeries theta_series_widened(const VarSetPtr& vars, const std::vector<std::vector<Int>>& cartan,
                             const std::vector<int>& var_of_coordinate, const ExpVec& q_monomial,
                             int trunc, int extra) {
  return theta_series_impl(vars, cartan, var_of_coordinate, q_monomial, trunc, extra);
}

CSeries substitute_root_of_unity(const ZSeries& s, int order, const std::vector<SubstEntry>& plan,
                                 int q_trunc) {
  if (order < 1) throw std::invalid_argument("substitute: cyclotomic order must be >= 1");
  if (static_cast<int>(plan.size()) != s.vars().count())
    throw std::invalid_argument("substitute: plan size mismatch");
  bool some_positive = false;
  for (const auto& p : plan) {
    if (p.q_exponent < 0) throw std::invalid_argument("substitute: q exponents must be >= 0");
    if (p.q_exponent > 0) some_positive = true;
  }
  if (!some_positive) throw std::invalid_argument("substitute: at least one q exponent positive");

  CSeries out(single_q(), q_trunc);
  for (const auto& [e, c] : s.terms()) {
    long long zeta_e = 0, q_e = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      zeta_e += plan[i].root_exponent * e[i];
      q_e += plan[i].q_exponent * e[i];
    }
    if (q_e < 0 || q_e > q_trunc) continue;
    out.add_term(ExpVec{static_cast<int>(q_e)}, CycInt::zeta_pow(order, zeta_e) * c);
  }
  return out;
}

bool is_integer_series(const CSeries& s, ZSeries* out) {
  for (const auto& [e, c] : s.terms())
    if (!c.is_integer()) return false;
  if (out) {
    ZSeries r(s.vars_ptr(), s.trunc());
    for (const auto& [e, c] : s.terms()) r.add_term(e, c.integer_value());
    *out = std::move(r);
  }
  return true;
}

ZSeries z0_pair(const ZSeries& a, const ZSeries& b) {
  a.require_compatible(b);
  int zi = a.vars().laurent;
  if (zi < 0) throw std::invalid_argument("z0_pair: no Laurent variable");
  int nv = a.vars().count();

  std::vector<std::string> names;
  std::vector<int> weights;
  for (int i = 0; i < nv; ++i) {
    if (i == zi) continue;
    names.push_back(a.vars().names[i]);
    weights.push_back(a.vars().weights[i]);
  }
  ZSeries out(make_vars(std::move(names), std::move(weights)), std::min(a.trunc(), b.trunc()));

  // index b by z-exponent
  std::map<int, std::vector<std::pair<const ExpVec*, Int>>> by_z;
  for (const auto& [e, c] : b.terms()) by_z[e[zi]].push_back({&e, c});

  for (const auto& [ea, ca] : a.terms()) {
    auto it = by_z.find(-ea[zi]);
    if (it == by_z.end()) continue;
    int da = a.degree_of(ea);
    for (const auto& [ebp, cb] : it->second) {
      if (da + b.degree_of(*ebp) > out.trunc()) continue;
      ExpVec e;
      e.reserve(nv - 1);
      for (int i = 0; i < nv; ++i) {
        if (i == zi) continue;
        e.push_back(ea[i] + (*ebp)[i]);
      }
      out.add_term(std::move(e), ca * cb);
    }
  }
  return out;
}

CSeries to_cyclotomic(const ZSeries& s, int order) {
  CSeries out(s.vars_ptr(), s.trunc());
  for (const auto& [e, c] : s.terms()) out.add_term(e, CycInt(order, c));
  return out;
}

}  // namespace ywq
