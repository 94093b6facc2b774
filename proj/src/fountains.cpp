#include "ywq/fountains.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "ywq/type_a.hpp"

namespace ywq {

namespace {

// Enumerates every p-fountain with bottom row of k coins and at most
// `budget` coins above it. fn(coins_above, row1_full) fires once per
// fountain. Rows are bit masks; a coin at position i of the next row needs
// coins at i..i+p of the current row.
void fountains_over(int p, int k, int budget, const std::function<void(int, bool)>& fn) {
  if (k == 0) {
    fn(0, false);
    return;
  }
  std::function<void(long long, int, int, bool, bool)> walk = [&](long long row, int width,
                                                                  int used, bool row1_full,
                                                                  bool first_upper) {
    int next_width = width - p;
    if (next_width <= 0) {
      fn(used, row1_full);
      return;
    }
    std::vector<int> allowed;
    for (int i = 0; i < next_width; ++i) {
      bool ok = true;
      for (int j = i; j <= i + p; ++j)
        if (!((row >> j) & 1)) {
          ok = false;
          break;
        }
      if (ok) allowed.push_back(i);
    }
    int na = static_cast<int>(allowed.size());
    // choose a subset of `allowed`, sizes bounded by the budget
    std::function<void(int, long long, int)> choose = [&](int idx, long long next_row, int cnt) {
      if (idx == na) {
        if (cnt == 0) {
          fn(used, first_upper ? false : row1_full);
          return;
        }
        bool full = cnt == next_width;
        walk(next_row, next_width, used + cnt, first_upper ? full : row1_full, false);
        return;
      }
      choose(idx + 1, next_row, cnt);
      if (used + cnt + 1 <= budget)
        choose(idx + 1, next_row | (1LL << allowed[idx]), cnt + 1);
    };
    choose(0, 0, 0);
  };
  long long bottom = (1LL << k) - 1;
  walk(bottom, k, 0, true, true);
}

}  // namespace

FountainCounts enumerate_fountains(int p, int n, int k) {
  if (p < 1) throw std::invalid_argument("fountains: p must be >= 1");
  FountainCounts out;
  if (k < 0 || n < k) return out;
  if (k == 0) {
    if (n == 0) out.total = 1;  // the empty fountain, never primitive
    return out;
  }
  if (k > 60) throw std::invalid_argument("fountains: bottom row too wide");
  fountains_over(p, k, n - k, [&](int above, bool row1_full) {
    if (above != n - k) return;
    ++out.total;
    if (k >= p && row1_full) ++out.primitive;
  });
  return out;
}

Int FountainTable::fval(int n, int k) const {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > n_max) throw std::out_of_range("fountain table: n beyond table");
  return f[n][k];
}

Int FountainTable::gval(int n, int k) const {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > n_max) throw std::out_of_range("fountain table: n beyond table");
  return g[n][k];
}

FountainTable fountain_table(int p, int n_max) {
  FountainTable t;
  t.p = p;
  t.n_max = n_max;
  t.f.assign(n_max + 1, {});
  t.g.assign(n_max + 1, {});
  for (int n = 0; n <= n_max; ++n) {
    t.f[n].assign(n + 1, 0);
    t.g[n].assign(n + 1, 0);
  }
  if (n_max >= 0) t.f[0][0] = 1;
  for (int k = 1; k <= n_max; ++k) {
    fountains_over(p, k, n_max - k, [&](int above, bool row1_full) {
      int n = k + above;
      ++t.f[n][k];
      if (k >= p && row1_full) ++t.g[n][k];
    });
  }
  return t;
}

namespace {

// (qz)^p F(q, qz): term q^n z^k -> q^{n+k+p} z^{k+p}.
ZSeries shift_g(const FountainTable& t, int q_trunc) {
  ZSeries out(qz_vars(), q_trunc);
  for (int n = 0; n <= t.n_max; ++n)
    for (int k = 0; k <= n; ++k) {
      Int c = t.f[n][k];
      if (c == 0) continue;
      int qe = n + k + t.p;
      if (qe > q_trunc) continue;
      out.add_term(ExpVec{qe, k + t.p}, c);
    }
  return out;
}

// Continued-fraction levels d = 2, 3, ...:
//   W(d) = (q^d z)^{p-1} / (1 - q^d z W(d+1)) + (1 + q^d z + ... + (q^d z)^{p-2})
// with G = W(2). Levels beyond the truncation are identically 1.
ZSeries cf_level(int p, int q_trunc, int d, int max_depth) {
  VarSetPtr vars = qz_vars();
  if (d > max_depth) return ZSeries::one(vars, q_trunc, 1);
  ZSeries inner = cf_level(p, q_trunc, d + 1, max_depth);
  ZSeries qdz(vars, q_trunc);
  if (d <= q_trunc) qdz.add_term(ExpVec{d, 1}, 1);
  ZSeries head = ZSeries::one(vars, q_trunc, 1);
  for (int i = 0; i < p - 1; ++i) head = head * qdz;
  ZSeries den = ZSeries::one(vars, q_trunc, 1) - qdz * inner;
  ZSeries tail(vars, q_trunc);
  ZSeries powqdz = ZSeries::one(vars, q_trunc, 1);
  for (int i = 0; i <= p - 2; ++i) {
    tail = tail + powqdz;
    powqdz = powqdz * qdz;
  }
  return head * den.inverse() + tail;
}

}  // namespace

FountainSeries fountain_series(int p, int q_trunc) {
  FountainTable t = fountain_table(p, q_trunc);
  FountainSeries out;
  out.F = ZSeries(qz_vars(), q_trunc);
  for (int n = 0; n <= t.n_max; ++n)
    for (int k = 0; k <= n; ++k)
      if (t.f[n][k] != 0) out.F.add_term(ExpVec{n, k}, t.f[n][k]);
  out.G = shift_g(t, q_trunc);
  int depth = q_trunc + 2;
  ZSeries prev = cf_level(p, q_trunc, 2, depth);
  while (true) {
    ZSeries next = cf_level(p, q_trunc, 2, depth + 1);
    if (next == prev) break;
    prev = next;
    ++depth;
    if (depth > 4 * q_trunc + 16)
      throw std::logic_error("fountain continued fraction failed to stabilize");
  }
  out.G_cf = prev;
  out.H = out.F - out.G;
  return out;
}

ZSeries triangle_series(int p, int q_trunc, bool product_form) {
  VarSetPtr vars = qz_vars();
  if (!product_form) {
    ZSeries out(vars, q_trunc);
    for (long long l = -(2LL * q_trunc + 4); l <= 2LL * q_trunc + 4; ++l) {
      long long qe = p * l * (l + 1) / 2 + l + 1;
      if (qe < 0 || qe > q_trunc) continue;
      out.add_term(ExpVec{static_cast<int>(qe), static_cast<int>(l * p + 1)}, 1);
    }
    return out;
  }
  // (qz + z^{1-p}) prod_{m>=1}(1 + z^p q^{mp+1}) prod_{m>=2}(1 + z^{-p} q^{(m-1)p-1})
  //              prod_{m>=1}(1 - q^{mp});
  // the m = 1 factor of the middle product is folded into the prefactor so
  // that every q exponent stays nonnegative.
  ZSeries acc(vars, q_trunc);
  acc.add_term(ExpVec{1, 1}, 1);
  acc.add_term(ExpVec{0, 1 - p}, 1);
  for (int m = 1; m * p + 1 <= q_trunc; ++m) {
    ZSeries f = ZSeries::one(vars, q_trunc, 1);
    f.add_term(ExpVec{m * p + 1, p}, 1);
    acc = acc * f;
  }
  for (int m = 2; (m - 1) * p - 1 <= q_trunc; ++m) {
    ZSeries f = ZSeries::one(vars, q_trunc, 1);
    f.add_term(ExpVec{(m - 1) * p - 1, -p}, 1);
    acc = acc * f;
  }
  for (int m = 1; m * p <= q_trunc; ++m) {
    ZSeries f = ZSeries::one(vars, q_trunc, 1);
    f.add_term(ExpVec{m * p, 0}, -1);
    acc = acc * f;
  }
  return acc;
}

namespace {

// Number of non-primitive fountains missing exactly e coins from the full
// pyramid with bottom row k = lp+1 (whose coin count equals the triangle
// weight). Removed sets are upward closed: a removed coin forces the removal
// of every coin it supports. Non-primitive means row 1 loses a coin. The
// bottom row itself is fixed.
Int pyramid_deficit_count(int p, long long l, int e, bool require_row1_gap) {
  if (l < 0) return 0;
  if (l == 0) {
    // Single-coin pyramid: nothing above the bottom row can be removed. It
    // is non-primitive exactly when its bottom row is shorter than p.
    return (e == 0 && (!require_row1_gap || p >= 2)) ? 1 : 0;
  }
  // DFS over rows 1..l: choose the removed subset of each row; it must
  // contain the positions forced by the removals one row below.
  Int count = 0;
  std::function<void(int, const std::vector<char>&, int)> rec =
      [&](int r, const std::vector<char>& removed_below, int used) {
        if (r > l) {
          if (used == e) {
            bool row1_gap = false;
            (void)row1_gap;
            ++count;
          }
          return;
        }
        int width = static_cast<int>(l) * p + 1 - r * p;
        // forced removals: position i is forced if some removed coin below
        // sits in its support i..i+p.
        std::vector<char> forced(width, 0);
        int forced_count = 0;
        for (int i = 0; i < width; ++i) {
          for (int j = i; j <= i + p; ++j)
            if (removed_below[j]) {
              forced[i] = 1;
              ++forced_count;
              break;
            }
        }
        if (used + forced_count > e) return;
        // choose optional removals among the unforced positions
        std::vector<int> optional;
        for (int i = 0; i < width; ++i)
          if (!forced[i]) optional.push_back(i);
        int no = static_cast<int>(optional.size());
        std::vector<char> rem = forced;
        std::function<void(int, int)> choose = [&](int idx, int extra) {
          if (used + forced_count + extra > e) return;
          if (idx == no) {
            if (r == 1 && require_row1_gap) {
              bool any = false;
              for (char c : rem)
                if (c) any = true;
              if (!any) return;
            }
            rec(r + 1, rem, used + forced_count + extra);
            return;
          }
          choose(idx + 1, extra);
          rem[optional[idx]] = 1;
          choose(idx + 1, extra + 1);
          rem[optional[idx]] = 0;
        };
        choose(0, 0);
      };
  std::vector<char> bottom(static_cast<int>(l) * p + 1, 0);
  rec(1, bottom, 0);
  return count;
}

ZSeries pairing_over_l(int p, int q_trunc, bool negative_only) {
  // [z^0] T(q,z) H(q^{-1}, z^{-1}) = sum_l q^{w(l)} sum_n h(n, lp+1) q^{-n}.
  // The full pyramid over a bottom row of lp+1 coins has exactly w(l) coins,
  // so the coefficient of q^e collects h(w(l)-e, lp+1): fountains missing e
  // coins from the pyramid with a gap in row 1. A row-1 gap removes at least
  // one coin from every higher row, so l <= e bounds the sum.
  ZSeries out(single_q(), q_trunc);
  // boundary: l = -1 pairs z^{1-p} against z^0 only when p = 1; the empty
  // triangle meets the empty fountain, h(0,0) = 1.
  if (p == 1 && !negative_only) out.add_term(ExpVec{0}, 1);
  if (negative_only) {
    if (p == 1) out.add_term(ExpVec{0}, 1);
    return out;
  }
  for (long long l = 0; l <= q_trunc + 1; ++l) {
    for (int e = 0; e <= q_trunc; ++e) {
      if (l > e) continue;  // gap propagation needs at least l removals
      Int h = pyramid_deficit_count(p, l, e, true);
      if (h != 0) out.add_term(ExpVec{e}, h);
    }
  }
  return out;
}

}  // namespace

ZSeries coarse_series_p1_formula(int p, int q_trunc) { return pairing_over_l(p, q_trunc, false); }

ZSeries negative_l_contribution(int p, int q_trunc) { return pairing_over_l(p, q_trunc, true); }

bool is_zero_generated_p1(const std::vector<int>& partition, int p) {
  for (auto [i, j] : addable_blocks(partition))
    if ((i + j) % p != 0) return false;
  return true;
}

Int weight0_p1(const std::vector<int>& partition, int p) {
  Int w = 0;
  for (size_t i = 0; i < partition.size(); ++i)
    for (int j = 0; j < partition[i]; ++j)
      if ((static_cast<int>(i) + j) % p == 0) ++w;
  return w;
}

ZSeries coarse_series_p1_brute(int p, int q_trunc) {
  auto run = [&](int cap) {
    ZSeries out(single_q(), q_trunc);
    for_each_partition(cap, [&](const Partition& part) {
      if (!is_zero_generated_p1(part, p)) return;
      Int w = weight0_p1(part, p);
      if (w <= q_trunc) out.add_term(ExpVec{static_cast<int>(w)}, 1);
    });
    return out;
  };
  int cap = (q_trunc + 2) * (2 * p + 2);
  ZSeries first = run(cap);
  ZSeries second = run(cap + (cap + 3) / 4);
  if (!(first == second)) throw std::logic_error("coarse_series_p1: enumeration cap unstable");
  return first;
}

}  // namespace ywq
