#include "ywq/root_systems.hpp"

#include <cmath>
#include <functional>

#include "ywq/fountains.hpp"

namespace ywq {

namespace {

std::vector<std::vector<Int>> cartan_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<Int>> c(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  for (auto [a, b] : edges) {
    c[a - 1][b - 1] -= 1;
    c[b - 1][a - 1] -= 1;
  }
  return c;
}

std::vector<std::vector<int>> affine_adjacency_from_edges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n + 1, std::vector<int>(n + 1, 0));
  for (auto [a, b] : edges) {
    ++adj[a][b];
    ++adj[b][a];
  }
  return adj;
}

void validate(const RootSystem& rs) {
  int n = rs.n;
  if (static_cast<int>(rs.marks.size()) != n + 1) throw std::logic_error("marks size");
  if (rs.marks[0] != 1) throw std::logic_error("affine mark d_0 must be 1");
  Int sum = 0;
  for (Int d : rs.marks) sum += d;
  if (sum != rs.coxeter) throw std::logic_error("marks must sum to the Coxeter number");
  // The affine Cartan matrix annihilates the marks: 2 d_i = sum_j adj_ij d_j.
  for (int i = 0; i <= n; ++i) {
    Int acc = 0;
    for (int j = 0; j <= n; ++j) acc += rs.affine_adjacency[i][j] * rs.marks[j];
    if (acc != 2 * rs.marks[i]) throw std::logic_error("marks are not an affine null vector");
  }
  // Finite Cartan matrix consistency with the affine adjacency.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Int expect = i == j ? 2 : -rs.affine_adjacency[i][j];
      if (rs.cartan[i - 1][j - 1] != expect) throw std::logic_error("Cartan/adjacency mismatch");
    }
}

}  // namespace

std::string RootSystem::name() const {
  switch (kind) {
    case KindClass::A:
      return "A" + std::to_string(n);
    case KindClass::D:
      return "D" + std::to_string(n);
    case KindClass::E:
      return "E" + std::to_string(n);
  }
  return "?";
}

RootSystem root_system(KindClass kind, int n) {
  RootSystem rs;
  rs.kind = kind;
  rs.n = n;
  std::vector<std::pair<int, int>> finite_edges, affine_edges;
  switch (kind) {
    case KindClass::A: {
      if (n < 1) throw std::invalid_argument("type A needs n >= 1");
      for (int i = 1; i < n; ++i) finite_edges.push_back({i, i + 1});
      affine_edges = finite_edges;
      if (n == 1) {
        affine_edges.push_back({0, 1});
        affine_edges.push_back({0, 1});  // double bond of the affine A_1 diagram
      } else {
        affine_edges.push_back({0, 1});
        affine_edges.push_back({0, n});
      }
      rs.marks.assign(n + 1, 1);
      rs.coxeter = n + 1;
      break;
    }
    case KindClass::D: {
      if (n < 4) throw std::invalid_argument("type D needs n >= 4");
      // chain 1-2-...-(n-2), fork to n-1 and n; affine node 0 attached to 2.
      for (int i = 1; i < n - 2; ++i) finite_edges.push_back({i, i + 1});
      finite_edges.push_back({n - 2, n - 1});
      finite_edges.push_back({n - 2, n});
      affine_edges = finite_edges;
      affine_edges.push_back({0, 2});
      rs.marks.assign(n + 1, 2);
      rs.marks[0] = rs.marks[1] = rs.marks[n - 1] = rs.marks[n] = 1;
      rs.coxeter = 2 * n - 2;
      break;
    }
    case KindClass::E: {
      // Bourbaki node order: chain 1-3-4-5-6(-7-8), node 2 attached to 4.
      if (n == 6) {
        finite_edges = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}};
        affine_edges = finite_edges;
        affine_edges.push_back({0, 2});
        rs.marks = {1, 1, 2, 2, 3, 2, 1};
        rs.coxeter = 12;
      } else if (n == 7) {
        finite_edges = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {2, 4}};
        affine_edges = finite_edges;
        affine_edges.push_back({0, 1});
        rs.marks = {1, 2, 2, 3, 4, 3, 2, 1};
        rs.coxeter = 18;
      } else if (n == 8) {
        finite_edges = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
        affine_edges = finite_edges;
        affine_edges.push_back({0, 8});
        rs.marks = {1, 2, 3, 4, 6, 5, 4, 3, 2};
        rs.coxeter = 30;
      } else {
        throw std::invalid_argument("type E needs n in {6,7,8}");
      }
      break;
    }
  }
  rs.cartan = cartan_from_edges(n, finite_edges);
  rs.affine_adjacency = affine_adjacency_from_edges(n, affine_edges);
  validate(rs);
  return rs;
}

std::optional<RootSystem> parse_root_system(const std::string& text) {
  if (text.size() < 2) return std::nullopt;
  char k = text[0];
  int n;
  try {
    n = std::stoi(text.substr(1));
  } catch (...) {
    return std::nullopt;
  }
  try {
    if (k == 'A' || k == 'a') return root_system(KindClass::A, n);
    if (k == 'D' || k == 'd') return root_system(KindClass::D, n);
    if (k == 'E' || k == 'e') return root_system(KindClass::E, n);
  } catch (...) {
    return std::nullopt;
  }
  return std::nullopt;
}

ZSeries orbifold_closed_form(const RootSystem& rs, int trunc) {
  VarSetPtr vars = q_vars(rs.n);
  ExpVec bar = rs.bar_monomial();
  std::vector<int> var_of(rs.n);
  for (int i = 0; i < rs.n; ++i) var_of[i] = i + 1;
  ZSeries theta = theta_series(vars, rs.cartan, var_of, bar, trunc);
  ZSeries eta = eta_factor(vars, bar, -(rs.n + 1), trunc);
  return theta * eta;
}

ZSeries coarse_substitution(const RootSystem& rs, int q_trunc) {
  // The substitution q_i = zeta (i != 0), q_0 = zeta^{-(h-1)} q = zeta^2 q
  // collapses the theta factor to a single-variable cyclotomic series; the
  // eta factor maps to eta(q)^{-(n+1)} because the bar monomial maps to q.
  const int n = rs.n;
  const int order = rs.coxeter + 1;
  CSeries theta_sub(single_q(), q_trunc);
  // enumerate m with (1/2) m^T C m <= q_trunc via per-level interval pruning
  // on the quadratic form (LDL in doubles, padded; candidates checked
  // exactly before use).
  std::vector<std::vector<double>> L(n, std::vector<double>(n, 0.0));
  std::vector<double> D(n, 0.0);
  {
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = static_cast<double>(rs.cartan[i][j]);
    for (int j = 0; j < n; ++j) {
      double d = a[j][j];
      for (int k = 0; k < j; ++k) d -= L[j][k] * L[j][k] * D[k];
      D[j] = d;
      L[j][j] = 1.0;
      for (int i = j + 1; i < n; ++i) {
        double v = a[i][j];
        for (int k = 0; k < j; ++k) v -= L[i][k] * L[j][k] * D[k];
        L[i][j] = v / d;
      }
    }
  }
  const double budget = 2.0 * q_trunc + 1e-6;
  std::vector<Int> m(n, 0);
  std::vector<double> shift(n, 0.0);  // sum_{j>i} L[j][i]... maintained on descent
  // Enumerate from the last coordinate down so each level has an interval.
  std::function<void(int, double)> rec = [&](int level, double used) {
    if (level < 0) {
      long long q2 = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q2 += m[i] * rs.cartan[i][j] * m[j];
      if (q2 % 2 != 0) throw std::logic_error("coarse_substitution: odd norm");
      long long k = q2 / 2;
      if (k > q_trunc) return;
      long long zsum = 0;
      for (int i = 0; i < n; ++i) zsum += m[i];
      theta_sub.add_term(ExpVec{static_cast<int>(k)},
                         CycInt::zeta_pow(order, zsum));
      return;
    }
    // center of the interval for m[level] given the chosen tail
    double center = 0.0;
    for (int j = level + 1; j < n; ++j) center -= L[j][level] * m[j];
    double radius = std::sqrt(std::max(0.0, (budget - used) / D[level])) + 1e-9;
    long long lo = static_cast<long long>(std::floor(center - radius)) - 1;
    long long hi = static_cast<long long>(std::ceil(center + radius)) + 1;
    for (long long v = lo; v <= hi; ++v) {
      m[level] = v;
      double t = v - center;
      double add = D[level] * t * t;
      if (add > budget - used + 1e-6) continue;
      rec(level - 1, used + add);
    }
    m[level] = 0;
  };
  rec(n - 1, 0.0);

  ZSeries eta = eta_factor(single_q(), ExpVec{1}, -(n + 1), q_trunc);
  CSeries total = theta_sub * to_cyclotomic(eta, order);
  ZSeries out;
  if (!is_integer_series(total, &out))
    throw NonIntegralError("coarse series of " + rs.name() + " has a non-integer coefficient",
                           rs.kind == KindClass::E);
  return out;
}

ZSeries global_series(int chi_s0, const std::vector<LocalSingularity>& locals, int q_trunc) {
  ZSeries acc = eta_factor(single_q(), ExpVec{1}, -chi_s0, q_trunc);
  for (const auto& loc : locals) {
    ZSeries factor = loc.kind ? coarse_substitution(*loc.kind, q_trunc)
                              : coarse_series_p1_formula(loc.cyclic_p, q_trunc);
    acc = acc * factor;
  }
  return acc;
}

}  // namespace ywq
