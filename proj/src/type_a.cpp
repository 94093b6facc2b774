#include "ywq/type_a.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace ywq {

namespace {

long long floordiv(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Partition from a bead set given as strictly decreasing positions; the set
// must be complete down to a fully packed tail. lambda_i = pos_i + i - 1.
Partition partition_from_positions(const std::vector<long long>& desc) {
  Partition out;
  for (size_t i = 0; i < desc.size(); ++i) {
    long long part = desc[i] + static_cast<long long>(i);
    if (part <= 0) break;  // weakly decreasing from here on
    out.push_back(static_cast<int>(part));
  }
  return out;
}

}  // namespace

bool is_valid_partition(const Partition& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i > 0 && p[i] > p[i - 1]) return false;
  }
  return true;
}

int partition_weight(const Partition& p) {
  int w = 0;
  for (int x : p) w += x;
  return w;
}

namespace {

void partitions_rec(int remaining, int max_part, Partition& cur,
                    const std::function<void(const Partition&)>& fn) {
  if (remaining == 0) {
    fn(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

void for_each_partition(int max_size, const std::function<void(const Partition&)>& fn) {
  Partition cur;
  for (int size = 0; size <= max_size; ++size) partitions_rec(size, size, cur, fn);
}

std::vector<Int> multiweight_a(const LabelledPartition& lp) {
  int mod = lp.rank + 1;
  std::vector<Int> wt(mod, 0);
  for (size_t i = 0; i < lp.parts.size(); ++i) {
    int col = static_cast<int>(i);
    for (int row = 0; row < lp.parts[i]; ++row) {
      int label = ((col - row + lp.shift) % mod + mod) % mod;
      ++wt[label];
    }
  }
  return wt;
}

std::vector<std::pair<int, int>> addable_blocks(const Partition& p) {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < p.size(); ++i) {
    bool ok = (i == 0) || p[i - 1] > p[i];
    if (ok) out.push_back({static_cast<int>(i), p[i]});
  }
  out.push_back({static_cast<int>(p.size()), 0});
  return out;
}

bool is_zero_generated_a(const Partition& p, int rank) {
  int mod = rank + 1;
  for (auto [i, j] : addable_blocks(p))
    if (((i - j) % mod + mod) % mod != 0) return false;
  return true;
}

AbacusA abacus_from_partition(const Partition& p, int rank) {
  if (!is_valid_partition(p)) throw std::invalid_argument("abacus: invalid partition");
  AbacusA ab;
  ab.rank = rank;
  int len = static_cast<int>(p.size());
  std::set<int> beads;
  for (int i = 1; i <= len; ++i) beads.insert(p[i - 1] - i + 1);
  for (int b : beads)
    if (b > 0) ab.positive_occupied.push_back(b);
  // Positions <= -len are occupied by the tail (1 - i for i > len); the only
  // possibly vacant nonpositive positions lie in (-len, 0].
  for (int pos = -len + 1; pos <= 0; ++pos)
    if (!beads.count(pos)) ab.nonpositive_vacant.push_back(pos);
  if (ab.positive_occupied.size() != ab.nonpositive_vacant.size())
    throw std::logic_error("abacus: unbalanced encoding");
  return ab;
}

Partition partition_from_abacus(const AbacusA& ab) {
  if (ab.positive_occupied.size() != ab.nonpositive_vacant.size())
    throw std::invalid_argument("abacus: configuration is not balanced");
  std::set<int> pos_occ(ab.positive_occupied.begin(), ab.positive_occupied.end());
  std::set<int> vac(ab.nonpositive_vacant.begin(), ab.nonpositive_vacant.end());
  for (int v : vac)
    if (v > 0) throw std::invalid_argument("abacus: vacant positions must be nonpositive");
  for (int b : pos_occ)
    if (b <= 0) throw std::invalid_argument("abacus: occupied positions must be positive");
  int top = pos_occ.empty() ? 0 : *pos_occ.rbegin();
  int low = vac.empty() ? 0 : *vac.begin() - 1;
  std::vector<long long> desc;
  for (int pos = top; pos >= low; --pos) {
    bool occupied = pos > 0 ? pos_occ.count(pos) > 0 : vac.count(pos) == 0;
    if (occupied) desc.push_back(pos);
  }
  return partition_from_positions(desc);
}

namespace {

// Occupied k-indices on each runner within a window that covers all
// deviations from the vacuum. Runner r holds positions r+1 + k*mod.
struct RunnerWindow {
  long long klo;                 // everything below is vacuum (occupied)
  std::vector<long long> occ;   // occupied k in [klo, khi], ascending
};

std::vector<RunnerWindow> runner_windows(const Partition& p, int rank) {
  int mod = rank + 1;
  int len = static_cast<int>(p.size());
  std::set<long long> beads;
  for (int i = 1; i <= len; ++i) beads.insert(p[i - 1] - i + 1);
  long long maxpos = std::max(1, len ? p[0] : 1);
  long long mindev = -len;  // positions <= -len are all occupied
  std::vector<RunnerWindow> rs(mod);
  for (int r = 0; r < mod; ++r) {
    RunnerWindow& rw = rs[r];
    rw.klo = floordiv(mindev - (r + 1), mod) - 1;
    long long khi = floordiv(maxpos - (r + 1), mod) + 1;
    for (long long k = rw.klo; k <= khi; ++k) {
      long long pos = r + 1 + k * mod;
      bool occupied = pos <= mindev ? true : beads.count(pos) > 0;
      if (occupied) rw.occ.push_back(k);
    }
  }
  return rs;
}

}  // namespace

CoreQuotientA core_quotient_a(const Partition& p, int rank) {
  int mod = rank + 1;
  std::vector<RunnerWindow> rs = runner_windows(p, rank);
  CoreQuotientA out;
  out.a_vector.resize(mod);
  out.quotients.resize(mod);
  long long sum = 0;
  for (int r = 0; r < mod; ++r) {
    const RunnerWindow& rw = rs[r];
    long long occ_nonneg = 0, vac_neg = 0;
    std::set<long long> occ(rw.occ.begin(), rw.occ.end());
    long long khi = rw.occ.empty() ? rw.klo : rw.occ.back();
    for (long long k = 0; k <= khi; ++k) occ_nonneg += occ.count(k);
    for (long long k = rw.klo; k <= -1; ++k) vac_neg += occ.count(k) ? 0 : 1;
    long long charge = occ_nonneg - vac_neg;
    out.a_vector[r] = charge;
    sum += charge;
    // quotient parts: j-th bead from the top sits at k_j; packed it would sit
    // at charge - j, so the part is k_j - charge + j (1-based j).
    for (size_t j = 0; j < rw.occ.size(); ++j) {
      long long k = rw.occ[rw.occ.size() - 1 - j];
      long long part = k - charge + static_cast<long long>(j) + 1;
      if (part <= 0) break;
      out.quotients[r].push_back(static_cast<int>(part));
    }
  }
  if (sum != 0) throw std::logic_error("core_quotient: charges do not sum to zero");
  CoreQuotientA core_only;
  core_only.a_vector = out.a_vector;
  core_only.quotients.assign(mod, {});
  out.core = partition_from_core_quotient(core_only, rank);
  return out;
}

Partition partition_from_core_quotient(const CoreQuotientA& cq, int rank) {
  int mod = rank + 1;
  if (static_cast<int>(cq.a_vector.size()) != mod || static_cast<int>(cq.quotients.size()) != mod)
    throw std::invalid_argument("core_quotient: wrong component count");
  long long sum = 0;
  for (Int a : cq.a_vector) sum += a;
  if (sum != 0) throw std::invalid_argument("core_quotient: charges must sum to zero");

  long long depth = 4;
  for (int r = 0; r < mod; ++r) {
    depth += std::llabs(cq.a_vector[r]) + static_cast<long long>(cq.quotients[r].size());
    for (int part : cq.quotients[r]) depth += part;
  }
  std::set<long long> beads;
  for (int r = 0; r < mod; ++r) {
    long long charge = cq.a_vector[r];
    const Partition& q = cq.quotients[r];
    for (long long j = 1; j <= depth; ++j) {
      long long part = j <= static_cast<long long>(q.size()) ? q[j - 1] : 0;
      long long k = charge - j + part;
      beads.insert(r + 1 + k * mod);
    }
  }
  std::vector<long long> desc(beads.rbegin(), beads.rend());
  return partition_from_positions(desc);
}

Partition core_by_random_removals(const Partition& p, int rank, unsigned seed) {
  int mod = rank + 1;
  std::mt19937 rng(seed);
  int len = static_cast<int>(p.size());
  long long bottom = -(static_cast<long long>(len) + partition_weight(p) + 2 * mod + 2);
  std::set<long long> beads;
  for (int i = 1; i <= len; ++i) beads.insert(p[i - 1] - i + 1);
  for (long long pos = bottom; pos <= -len; ++pos) beads.insert(pos);
  while (true) {
    std::vector<long long> movable;
    for (long long b : beads)
      if (b - mod >= bottom && !beads.count(b - mod)) movable.push_back(b);
    if (movable.empty()) break;
    std::uniform_int_distribution<size_t> pick(0, movable.size() - 1);
    long long b = movable[pick(rng)];
    beads.erase(b);
    beads.insert(b - mod);
  }
  std::vector<long long> desc(beads.rbegin(), beads.rend());
  return partition_from_positions(desc);
}

Partition p_map_a(const Partition& p, int rank) {
  int mod = rank + 1;
  int len = static_cast<int>(p.size());
  std::set<long long> beads;
  for (int i = 1; i <= len; ++i) beads.insert(p[i - 1] - i + 1);
  long long maxpos = std::max(1, len ? p[0] : 1);
  long long minfull = -len;  // positions <= -len occupied by the vacuum tail
  long long top_row = floordiv(maxpos - 1, mod) + 1;     // row m spans ((m-1)mod, m*mod]
  long long bottom_row = floordiv(minfull - 1, mod) - 1;  // fully packed below
  std::set<long long> out;
  for (long long m = bottom_row; m <= top_row; ++m) {
    int count = 0;
    for (long long pos = (m - 1) * mod + 1; pos <= m * mod; ++pos) {
      bool occupied = pos <= minfull ? true : beads.count(pos) > 0;
      count += occupied;
    }
    for (int j = 0; j < count; ++j) out.insert(m * mod - j);
  }
  // Everything below bottom_row is packed and stays; include one more packed
  // row so the profile walk terminates inside the window.
  for (long long pos = (bottom_row - 2) * mod + 1; pos <= (bottom_row - 1) * mod; ++pos)
    out.insert(pos);
  std::vector<long long> desc(out.rbegin(), out.rend());
  return partition_from_positions(desc);
}

ZSeries orbifold_series_a_enumerate(int rank, int trunc) {
  VarSetPtr vars = q_vars(rank);
  ZSeries out(vars, trunc);
  for_each_partition(trunc, [&](const Partition& p) {
    LabelledPartition lp{p, rank, 0};
    std::vector<Int> wt = multiweight_a(lp);
    out.add_term(ExpVec(wt.begin(), wt.end()), 1);
  });
  return out;
}

namespace {

std::vector<std::vector<Int>> cartan_a(int n) {
  std::vector<std::vector<Int>> c(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) {
    c[i][i] = 2;
    if (i + 1 < n) c[i][i + 1] = c[i + 1][i] = -1;
  }
  return c;
}

// max of sum m_i over the lattice points with (1/2) m^T C m <= bound,
// C = Cartan A_n. Used to pick a safe truncation before substitution.
long long max_linear_on_ball(int n, int bound) {
  long long box = static_cast<long long>(std::sqrt(2.0 * bound * (n + 1))) + 2;
  std::vector<Int> m(n, 0);
  long long best = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      long long q = 0;
      for (int a = 0; a < n; ++a) {
        q += 2 * m[a] * m[a];
        if (a + 1 < n) q -= 2 * m[a] * m[a + 1];
      }
      if (q <= 2LL * bound) {
        long long s = 0;
        for (int a = 0; a < n; ++a) s += m[a];
        best = std::max(best, s);
      }
      return;
    }
    for (long long v = -box; v <= box; ++v) {
      m[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace

ZSeries orbifold_series_a_closed(int rank, int trunc) {
  VarSetPtr vars = q_vars(rank);
  ExpVec bar(rank + 1, 1);
  std::vector<int> var_of(rank);
  for (int i = 0; i < rank; ++i) var_of[i] = i + 1;
  ZSeries theta = theta_series(vars, cartan_a(rank), var_of, bar, trunc);
  ZSeries eta = eta_factor(vars, bar, -(rank + 1), trunc);
  return theta * eta;
}

ZSeries coarse_series_a_enumerate(int rank, int q_trunc) {
  int mod = rank + 1;
  auto run = [&](int cap) {
    ZSeries out(single_q(), q_trunc);
    for_each_partition(cap, [&](const Partition& p) {
      if (!is_zero_generated_a(p, rank)) return;
      LabelledPartition lp{p, rank, 0};
      Int wt0 = multiweight_a(lp)[0];
      if (wt0 <= q_trunc) out.add_term(ExpVec{static_cast<int>(wt0)}, 1);
    });
    return out;
  };
  int cap = mod * q_trunc + mod + 2;
  ZSeries first = run(cap);
  ZSeries second = run(cap + mod);
  if (!(first == second)) throw std::logic_error("coarse_series_a: enumeration cap unstable");
  return first;
}

ZSeries coarse_series_a_substitute(int rank, int q_trunc) {
  // The image q-degree of a term equals its q_0 exponent k; such a term has
  // total degree (rank+1)k + sum m_i over its theta part, so truncating the
  // closed form at (rank+1)*q_trunc + max sum(m_i) keeps every contributor.
  long long slack = max_linear_on_ball(rank, q_trunc) + rank + 1;
  int total = static_cast<int>((rank + 1) * static_cast<long long>(q_trunc) + slack);
  ZSeries orb = orbifold_series_a_closed(rank, total);
  std::vector<SubstEntry> plan(rank + 1);
  plan[0] = {-rank, 1};  // q_0 -> xi^{-rank} q
  for (int i = 1; i <= rank; ++i) plan[i] = {1, 0};
  CSeries subst = substitute_root_of_unity(orb, rank + 2, plan, q_trunc);
  ZSeries out;
  if (!is_integer_series(subst, &out))
    throw std::logic_error("coarse_series_a: substitution produced a non-integer coefficient");
  return out;
}

ZSeries frobenius_series_a(int rank, int trunc) {
  int n = rank;
  std::vector<std::string> names;
  std::vector<int> weights;
  for (int i = 0; i <= n; ++i) {
    names.push_back("q" + std::to_string(i));
    weights.push_back(1);
  }
  names.push_back("z");
  weights.push_back(0);
  VarSetPtr vars = make_vars(names, weights, n + 1);

  ZSeries p1 = ZSeries::one(vars, trunc, 1);
  ZSeries p2 = ZSeries::one(vars, trunc, 1);
  for (int k = 0;; ++k) {
    bool any = false;
    for (int i = 0; i <= n; ++i) {
      int deg1 = (i + 1) + (n + 1) * k;
      if (deg1 <= trunc) {
        any = true;
        ZSeries f = ZSeries::one(vars, trunc, 1);
        ExpVec e(n + 2, 0);
        for (int j = 0; j <= n; ++j) e[j] = k + (j <= i ? 1 : 0);
        e[n + 1] = 1;
        f.add_term(std::move(e), 1);
        p1 = p1 * f;
      }
      int deg2 = (n - i) + (n + 1) * k;
      if (deg2 <= trunc) {
        any = true;
        ZSeries f = ZSeries::one(vars, trunc, 1);
        ExpVec e(n + 2, 0);
        for (int j = 0; j <= n; ++j) e[j] = k + (j > i ? 1 : 0);
        e[n + 1] = -1;
        f.add_term(std::move(e), 1);
        p2 = p2 * f;
      }
    }
    if (!any) break;
  }
  return z0_pair(p1, p2);
}

ColoredFPartition frobenius_rows(const LabelledPartition& lp) {
  int mod = lp.rank + 1;
  const Partition& p = lp.parts;
  int d = 0;
  while (d < static_cast<int>(p.size()) && p[d] > d) ++d;
  ColoredFPartition out;
  out.f.assign(d, std::vector<Int>(mod, 0));
  out.g.assign(d, std::vector<Int>(mod, 0));
  for (int t = 0; t < d; ++t) {
    for (size_t i = t; i < p.size(); ++i) {
      if (p[i] <= t) break;
      int label = ((static_cast<int>(i) - t + lp.shift) % mod + mod) % mod;
      ++out.f[t][label];
    }
    for (int y = t + 1; y < p[t]; ++y) {
      int label = ((t - y + lp.shift) % mod + mod) % mod;
      ++out.g[t][label];
    }
  }
  return out;
}

ZSeries higher_rank_series_closed(int rank, const std::vector<int>& shifts, int trunc) {
  VarSetPtr vars = q_vars(rank);
  ExpVec bar(rank + 1, 1);
  ZSeries acc = ZSeries::one(vars, trunc, 1);
  for (int a : shifts) {
    std::vector<int> var_of(rank);
    for (int i = 0; i < rank; ++i)
      var_of[i] = ((i + 1 + a) % (rank + 1) + rank + 1) % (rank + 1);
    ZSeries theta = theta_series(vars, cartan_a(rank), var_of, bar, trunc);
    ZSeries eta = eta_factor(vars, bar, -(rank + 1), trunc);
    acc = acc * (theta * eta);
  }
  return acc;
}

ZSeries higher_rank_series_enumerate(int rank, const std::vector<int>& shifts, int trunc) {
  VarSetPtr vars = q_vars(rank);
  ZSeries acc = ZSeries::one(vars, trunc, 1);
  for (int a : shifts) {
    ZSeries factor(vars, trunc);
    for_each_partition(trunc, [&](const Partition& p) {
      LabelledPartition lp{p, rank, a};
      std::vector<Int> wt = multiweight_a(lp);
      factor.add_term(ExpVec(wt.begin(), wt.end()), 1);
    });
    acc = acc * factor;
  }
  return acc;
}

std::vector<Partition> p_fiber_a(const Partition& lambda0, int rank) {
  if (!is_zero_generated_a(lambda0, rank))
    throw std::invalid_argument("p_fiber_a: base partition must be 0-generated");
  int mod = rank + 1;
  int len = static_cast<int>(lambda0.size());
  std::vector<int> lb(len, 0);
  for (int c = 0; c < len; ++c)
    for (int j = 0; j < lambda0[c]; ++j)
      if (((c - j) % mod + mod) % mod == 0) lb[c] = j + 1;
  std::vector<Partition> out;
  Partition cur(len, 0);
  std::function<void(int, int)> rec = [&](int c, int prev) {
    if (c == len) {
      Partition trimmed;
      for (int h : cur)
        if (h > 0) trimmed.push_back(h);
      out.push_back(trimmed);
      return;
    }
    int hi = std::min(lambda0[c], prev);
    for (int h = hi; h >= lb[c]; --h) {
      cur[c] = h;
      rec(c + 1, h);
    }
    cur[c] = 0;
  };
  rec(0, len ? lambda0[0] : 0);
  return out;
}

bool fiber_identity_holds_a(const Partition& lambda0, int rank) {
  int order = rank + 2;
  LabelledPartition base{lambda0, rank, 0};
  Int wt0 = multiweight_a(base)[0];
  CycInt sum = CycInt::zero(order);
  for (const Partition& mu : p_fiber_a(lambda0, rank)) {
    LabelledPartition lp{mu, rank, 0};
    std::vector<Int> wt = multiweight_a(lp);
    if (wt[0] != wt0) return false;  // fiber members share the 0-block set
    long long zeta_e = -static_cast<long long>(rank) * wt[0];
    for (int i = 1; i <= rank; ++i) zeta_e += wt[i];
    sum += CycInt::zeta_pow(order, zeta_e);
  }
  return sum == CycInt::one(order);
}

}  // namespace ywq
