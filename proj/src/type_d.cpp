#include "ywq/type_d.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace ywq {

int wall_weight(const WallD& w) {
  int s = 0;
  for (int h : w.heights) s += h;
  return s;
}

bool is_valid_wall(const WallD& w) {
  if (w.n < 4) return false;
  size_t bit_index = 0;
  int prev = 1 << 30;
  int prev_colored = -1;
  uint8_t prev_bit = 0;
  for (size_t i = 0; i < w.heights.size(); ++i) {
    int h = w.heights[i];
    if (h <= 0 || h > prev) return false;
    if (h % (w.n - 1) == 0) {
      if (bit_index >= w.orient.size()) return false;
      uint8_t bit = w.orient[bit_index++];
      if (bit > 1) return false;
      if (h == prev_colored && bit != prev_bit) return false;  // shared position, one color
      prev_colored = h;
      prev_bit = bit;
    } else {
      if (h == prev) return false;  // full columns have distinct heights
    }
    prev = h;
  }
  return bit_index == w.orient.size();
}

int abacus_weight(const AbacusD& ab) {
  long long s = 0;
  for (const auto& [pos, cnt] : ab.count) s += static_cast<long long>(pos) * cnt;
  return static_cast<int>(s);
}

bool is_valid_abacus(const AbacusD& ab) {
  if (ab.n < 4) return false;
  for (const auto& [pos, cnt] : ab.count) {
    if (pos <= 0 || cnt <= 0) return false;
    if (!is_colored_position(pos, ab.n)) {
      if (cnt > 1) return false;
      if (ab.color.count(pos)) return false;
    } else {
      if (!ab.color.count(pos)) return false;
    }
  }
  for (const auto& [pos, c] : ab.color) {
    (void)c;
    if (!ab.count.count(pos)) return false;
    if (!is_colored_position(pos, ab.n)) return false;
  }
  return true;
}

AbacusD wall_to_abacus(const WallD& w) {
  if (!is_valid_wall(w)) throw std::invalid_argument("wall_to_abacus: invalid wall");
  AbacusD ab;
  ab.n = w.n;
  // The orientation bit selects which half block tops the column; the bead
  // color records exactly that choice. (The color switches performed by the
  // reduction steps then track how full columns move past a stack.)
  size_t bit_index = 0;
  for (int h : w.heights) {
    ++ab.count[h];
    if (h % (w.n - 1) == 0) {
      uint8_t bit = w.orient[bit_index++];
      ab.color[h] = bit == 0 ? BeadColor::white : BeadColor::black;
    }
  }
  return ab;
}

WallD abacus_to_wall(const AbacusD& ab) {
  if (!is_valid_abacus(ab)) throw std::invalid_argument("abacus_to_wall: invalid abacus");
  WallD w;
  w.n = ab.n;
  for (auto it = ab.count.rbegin(); it != ab.count.rend(); ++it) {
    for (int c = 0; c < it->second; ++c) {
      w.heights.push_back(it->first);
      if (is_colored_position(it->first, ab.n))
        w.orient.push_back(ab.color.at(it->first) == BeadColor::white ? 0 : 1);
    }
  }
  return w;
}

void for_each_wall(int n, int max_weight, const std::function<void(const AbacusD&)>& fn) {
  AbacusD ab;
  ab.n = n;
  std::function<void(int, int)> rec = [&](int pos, int budget) {
    if (pos == 0) {
      fn(ab);
      return;
    }
    rec(pos - 1, budget);  // position empty
    if (pos > budget) return;
    if (!is_colored_position(pos, n)) {
      ab.count[pos] = 1;
      rec(pos - 1, budget - pos);
      ab.count.erase(pos);
    } else {
      for (int cnt = 1; cnt * pos <= budget; ++cnt) {
        ab.count[pos] = cnt;
        ab.color[pos] = BeadColor::white;
        rec(pos - 1, budget - cnt * pos);
        ab.color[pos] = BeadColor::black;
        rec(pos - 1, budget - cnt * pos);
      }
      ab.count.erase(pos);
      ab.color.erase(pos);
    }
  };
  rec(std::max(max_weight, 0), std::max(max_weight, 0));
}

namespace {

int count_at(const AbacusD& ab, int pos) {
  auto it = ab.count.find(pos);
  return it == ab.count.end() ? 0 : it->second;
}

void add_bead(AbacusD& ab, int pos, BeadColor c) {
  if (pos == 0) return;  // the imaginary position swallows beads
  ++ab.count[pos];
  if (is_colored_position(pos, ab.n)) {
    auto it = ab.color.find(pos);
    if (it == ab.color.end()) ab.color[pos] = c;
    // an occupied stack keeps its color; incoming beads adopt it
  }
}

void remove_bead(AbacusD& ab, int pos) {
  auto it = ab.count.find(pos);
  if (it == ab.count.end()) throw std::logic_error("remove_bead: empty position");
  if (--it->second == 0) {
    ab.count.erase(it);
    ab.color.erase(pos);
  }
}

void flip_colors_between(AbacusD& ab, int lo, int hi) {
  // flip stacks at colored positions strictly between lo and hi
  int step = ab.n - 1;
  for (int pos = (lo / step + 1) * step; pos < hi; pos += step) {
    if (pos <= lo) continue;
    auto it = ab.color.find(pos);
    if (it != ab.color.end()) it->second = flip(it->second);
  }
}

// A stack's drawn color encodes the half-block choice relative to the
// columns below it; the color switches of the reduction steps keep that
// reading for stationary stacks as other columns move past. Symmetrically, a
// bead that moves past other beads carries its color corrected by the
// number of beads crossed.
int beads_between(const AbacusD& ab, int lo, int hi) {
  int c = 0;
  for (auto it = ab.count.upper_bound(lo); it != ab.count.end() && it->first < hi; ++it)
    c += it->second;
  return c;
}

BeadColor carried_color(const AbacusD& ab, int from, int to) {
  BeadColor c = ab.color.at(from);
  return beads_between(ab, to, from) % 2 == 0 ? c : flip(c);
}

// B3 moves a colored bead up one row on its runner when the landing stack
// can absorb it: the arriving bead must match the target stack's color (an
// empty target takes it as is; position 0 is an infinite white stack).
bool b3_applicable(const AbacusD& ab, int pos) {
  int n = ab.n;
  if (!is_colored_position(pos, n) || pos < 2 * n - 2) return false;
  if (!count_at(ab, pos)) return false;
  int target = pos - (2 * n - 2);
  BeadColor arriving = carried_color(ab, pos, target);
  if (target == 0) return arriving == BeadColor::white;
  if (!count_at(ab, target)) return true;
  return ab.color.at(target) == arriving;
}

}  // namespace

std::vector<BarSite> bar_sites(const AbacusD& ab) {
  int n = ab.n;
  std::vector<BarSite> sites;
  for (const auto& [pos, cnt] : ab.count) {
    if (!is_colored_position(pos, n)) {
      // B1: uncolored bead with a free position one row up
      if (pos > 2 * n - 2 && count_at(ab, pos - (2 * n - 2)) == 0)
        sites.push_back({BarStep::B1, pos});
      // B2: first-row pair s, 2n-2-s
      if (pos <= n - 2 && count_at(ab, 2 * n - 2 - pos) > 0)
        sites.push_back({BarStep::B2, pos});
    } else {
      if (b3_applicable(ab, pos)) sites.push_back({BarStep::B3, pos});
      if (cnt >= 2 && pos >= n - 1) sites.push_back({BarStep::B4, pos});
    }
  }
  std::sort(sites.begin(), sites.end(), [](const BarSite& a, const BarSite& b) {
    if (a.position != b.position) return a.position < b.position;
    return static_cast<int>(a.step) < static_cast<int>(b.step);
  });
  return sites;
}

AbacusD apply_bar_step(const AbacusD& ab, const BarSite& site) {
  AbacusD out = ab;
  int n = ab.n;
  switch (site.step) {
    case BarStep::B1: {
      int pos = site.position;
      if (is_colored_position(pos, n) || pos <= 2 * n - 2 || !count_at(ab, pos) ||
          count_at(ab, pos - (2 * n - 2)))
        throw std::invalid_argument("B1: preconditions unmet");
      remove_bead(out, pos);
      add_bead(out, pos - (2 * n - 2), BeadColor::white);
      flip_colors_between(out, pos - (2 * n - 2), pos);
      break;
    }
    case BarStep::B2: {
      int s = site.position;
      int s2 = 2 * n - 2 - s;
      if (s < 1 || s > n - 2 || !count_at(ab, s) || !count_at(ab, s2))
        throw std::invalid_argument("B2: preconditions unmet");
      remove_bead(out, s);
      remove_bead(out, s2);
      flip_colors_between(out, s, s2);
      break;
    }
    case BarStep::B3: {
      int pos = site.position;
      if (!b3_applicable(ab, pos)) throw std::invalid_argument("B3: preconditions unmet");
      BeadColor c = carried_color(ab, pos, pos - (2 * n - 2));
      remove_bead(out, pos);
      add_bead(out, pos - (2 * n - 2), c);
      flip_colors_between(out, pos - (2 * n - 2), pos);  // the crossed stack flips too
      break;
    }
    case BarStep::B4: {
      int pos = site.position;
      if (!is_colored_position(pos, n) || pos < n - 1 || count_at(ab, pos) < 2)
        throw std::invalid_argument("B4: preconditions unmet");
      int target = pos - (n - 1);
      BeadColor c = carried_color(ab, pos, target);
      remove_bead(out, pos);
      remove_bead(out, pos);
      add_bead(out, target, c);
      add_bead(out, target, c);
      break;
    }
  }
  return out;
}

CoreResult core_d(const AbacusD& ab) {
  CoreResult r{ab, 0};
  while (true) {
    std::vector<BarSite> sites = bar_sites(r.core);
    if (sites.empty()) break;
    r.core = apply_bar_step(r.core, sites.front());
    ++r.bars_removed;
    if (r.bars_removed > 4 * abacus_weight(ab) + 64)
      throw std::logic_error("core_d: runaway reduction");
  }
  return r;
}

CoreResult core_d_random(const AbacusD& ab, unsigned seed) {
  std::mt19937 rng(seed);
  CoreResult r{ab, 0};
  while (true) {
    std::vector<BarSite> sites = bar_sites(r.core);
    if (sites.empty()) break;
    std::uniform_int_distribution<size_t> pick(0, sites.size() - 1);
    r.core = apply_bar_step(r.core, sites[pick(rng)]);
    ++r.bars_removed;
    if (r.bars_removed > 4 * abacus_weight(ab) + 64)
      throw std::logic_error("core_d_random: runaway reduction");
  }
  return r;
}

namespace {

// Stack sizes of a core on the two colored runners: m beads on R_{n-1}
// (positions (2i-1)(n-1)), j beads on R_{2n-2} (positions 2i(n-1)), each
// stack holding at most one bead per position, packed from the top.
struct ColoredShape {
  int m = 0;
  int j = 0;
};

ColoredShape colored_shape(const AbacusD& core) {
  int n = core.n;
  ColoredShape s;
  std::vector<int> odd, even;
  for (const auto& [pos, cnt] : core.count) {
    if (!is_colored_position(pos, n)) continue;
    if (cnt != 1) throw std::logic_error("core: colored stack of size > 1");
    int t = pos / (n - 1);
    (t % 2 == 1 ? odd : even).push_back(t);
  }
  s.m = static_cast<int>(odd.size());
  s.j = static_cast<int>(even.size());
  for (int i = 0; i < s.m; ++i)
    if (odd[i] != 2 * i + 1) throw std::logic_error("core: gap on runner n-1");
  for (int i = 0; i < s.j; ++i)
    if (even[i] != 2 * (i + 1)) throw std::logic_error("core: gap on the last runner");
  return s;
}

Int zfun(long long k) { return k % 2 == 0 ? k / 2 : -(k + 1) / 2; }
long long zinv(Int z) { return z >= 0 ? 2 * z : -2 * z - 1; }

// Recolorings of the given configuration that admit no reduction step,
// listed deterministically (all-white interpretation of the mask first).
// Exactly one exists when the first colored runner is empty, two otherwise.
std::vector<AbacusD> stable_colorings_in_context(const AbacusD& base) {
  int n = base.n;
  std::vector<int> positions;
  for (const auto& [pos, cnt] : base.count) {
    (void)cnt;
    if (is_colored_position(pos, n)) positions.push_back(pos);
  }
  std::vector<AbacusD> out;
  int count = static_cast<int>(positions.size());
  for (int mask = 0; mask < (1 << count); ++mask) {
    AbacusD ab = base;
    for (int i = 0; i < count; ++i)
      ab.color[positions[i]] = ((mask >> i) & 1) ? BeadColor::black : BeadColor::white;
    bool stable = true;
    for (int pos : positions)
      if (b3_applicable(ab, pos)) {
        stable = false;
        break;
      }
    if (stable) out.push_back(std::move(ab));
  }
  return out;
}

}  // namespace

ZCoords z_coords(const AbacusD& core) {
  if (!bar_sites(core).empty()) throw std::invalid_argument("z_coords: input is not a core");
  int n = core.n;
  ZCoords z;
  z.n = n;
  z.z.assign(n, 0);
  for (const auto& [pos, cnt] : core.count) {
    if (is_colored_position(pos, n)) continue;
    int r = runner_of(pos, n);
    if (r <= n - 2)
      z.z[r - 1] += cnt;
    else
      z.z[(2 * n - 2 - r) - 1] -= cnt;
  }
  ColoredShape s = colored_shape(core);
  long long k1 = s.m + s.j;
  long long k2 = s.j >= s.m ? s.j - s.m : s.m - s.j - 1;
  Int u = zfun(k1), v = zfun(k2);
  bool swap_pair = false;
  if (s.m >= 1) {
    // the pair is oriented by the half-block reading of the stack at n-1:
    // its drawn color corrected by the beads sitting below it
    BeadColor machine = core.color.at(n - 1);
    BeadColor effective = beads_between(core, 0, n - 1) % 2 == 0 ? machine : flip(machine);
    swap_pair = effective == BeadColor::black;
  }
  z.z[n - 2] = swap_pair ? v : u;
  z.z[n - 1] = swap_pair ? u : v;
  return z;
}

AbacusD core_from_z(const ZCoords& z) {
  int n = z.n;
  AbacusD ab;
  ab.n = n;
  for (int s = 1; s <= n - 2; ++s) {
    Int c = z.z[s - 1];
    int runner = c >= 0 ? s : 2 * n - 2 - s;
    for (Int i = 0; i < std::abs(c); ++i) ab.count[runner + static_cast<int>(i) * (2 * n - 2)] = 1;
  }
  Int u = z.z[n - 2], v = z.z[n - 1];
  long long k1 = zinv(u), k2 = zinv(v);
  bool swapped = false;
  if (k1 < k2) {
    std::swap(k1, k2);
    swapped = true;
  }
  // invert k1 = m + j, k2 = j - m or m - j - 1 (parity selects the branch)
  long long m, j;
  if ((k1 - k2) % 2 == 0) {
    m = (k1 - k2) / 2;
    j = (k1 + k2) / 2;
  } else {
    m = (k1 + k2 + 1) / 2;
    j = (k1 - k2 - 1) / 2;
  }
  for (long long i = 1; i <= m; ++i) {
    ab.count[static_cast<int>(2 * i - 1) * (n - 1)] = 1;
    ab.color[static_cast<int>(2 * i - 1) * (n - 1)] = BeadColor::white;
  }
  for (long long i = 1; i <= j; ++i) {
    ab.count[static_cast<int>(2 * i) * (n - 1)] = 1;
    ab.color[static_cast<int>(2 * i) * (n - 1)] = BeadColor::white;
  }
  std::vector<AbacusD> canon = stable_colorings_in_context(ab);
  if (canon.empty()) throw std::logic_error("core_from_z: no stable coloring");
  if (m == 0) {
    if (canon.size() != 1) throw std::logic_error("core_from_z: unexpected coloring count");
    return canon[0];
  }
  if (canon.size() != 2) throw std::logic_error("core_from_z: unexpected coloring count");
  for (const AbacusD& cand : canon) {
    BeadColor machine = cand.color.at(n - 1);
    BeadColor effective = beads_between(cand, 0, n - 1) % 2 == 0 ? machine : flip(machine);
    if ((effective == BeadColor::black) == swapped) return cand;
  }
  throw std::logic_error("core_from_z: no coloring with the requested orientation");
}

Int core_weight_formula(const ZCoords& z) {
  int n = z.n;
  Int total = 0;
  for (int i = 1; i <= n - 2; ++i)
    total += ((2 * n - 2) * z.z[i - 1] * z.z[i - 1] - (2 * n - 2 * i - 2) * z.z[i - 1]) / 2;
  for (int i = n - 1; i <= n; ++i)
    total += (n - 1) * (2 * z.z[i - 1] * z.z[i - 1] + z.z[i - 1]);
  return total;
}

namespace {

struct PrefixData {
  // prefix sums over z_1..z_{n-2}: for I = {1..i}, z_I = 2 a_I - b_I
  std::vector<Int> a, b, c;  // index i = 0..n-2, entry i built from prefix {1..i}
};

PrefixData prefix_data(const ZCoords& z) {
  int n = z.n;
  PrefixData d;
  d.a.assign(n - 1, 0);
  d.b.assign(n - 1, 0);
  d.c.assign(n - 1, 0);
  Int run = 0;
  d.c[0] = -1;  // empty prefix: z = 0, b = 0, c = -1
  for (int i = 1; i <= n - 2; ++i) {
    run += z.z[i - 1];
    Int b = ((run % 2) + 2) % 2;
    d.b[i] = b;
    d.a[i] = (run + b) / 2;
    d.c[i] = 2 * b - 1;
  }
  return d;
}

}  // namespace

ExpVec core_multiweight_d(const ZCoords& z) {
  int n = z.n;
  PrefixData pre = prefix_data(z);
  // per-index quantities
  std::vector<Int> ai(n - 1, 0), bi(n - 1, 0);
  for (int i = 1; i <= n - 2; ++i) {
    Int zi = z.z[i - 1];
    bi[i] = ((zi % 2) + 2) % 2;
    ai[i] = (zi + bi[i]) / 2;
  }
  Int zn1 = z.z[n - 2], zn = z.z[n - 1];
  Int bpre = pre.b[n - 2], cpre = pre.c[n - 2];

  std::vector<Int> e(n + 1, 0);
  auto add_q = [&](Int mult) {  // the bar monomial q_0 q_1 q_2^2..q_{n-2}^2 q_{n-1} q_n
    e[0] += mult;
    e[1] += mult;
    for (int i = 2; i <= n - 2; ++i) e[i] += 2 * mult;
    e[n - 1] += mult;
    e[n] += mult;
  };

  // q_1^{-sum b_i}, q_t^{-sum_{i<t} 2 a_i - sum_{i>=t} b_i} for 2 <= t <= n-2
  for (int t = 1; t <= n - 2; ++t) {
    Int exp = 0;
    for (int i = 1; i < t; ++i) exp -= 2 * ai[i];
    for (int i = t; i <= n - 2; ++i) exp -= bi[i];
    e[t] += exp;
  }
  // (q_0 q_1^{-1} q_{n-1} q_n)^{-sum a_i}
  Int suma = 0;
  for (int i = 1; i <= n - 2; ++i) suma += ai[i];
  e[0] -= suma;
  e[1] += suma;
  e[n - 1] -= suma;
  e[n] -= suma;
  // (q_0 q_1^{-1})^{a_{1..n-2}}
  e[0] += pre.a[n - 2];
  e[1] -= pre.a[n - 2];
  // q^{(1/2) sum (z_i^2 + b_i) + z_{n-1}^2 + z_n^2}
  Int half = 0;
  for (int i = 1; i <= n - 2; ++i) half += z.z[i - 1] * z.z[i - 1] + bi[i];
  if (half % 2 != 0) throw std::logic_error("core_multiweight: odd half exponent");
  add_q(zn1 * zn1 + zn * zn + half / 2);
  // (q^{b_pre} (q_1^{-1}..q_{n-2}^{-1} q_{n-1}^{-1})^{c_pre})^{z_{n-1}}
  add_q(bpre * zn1);
  for (int i = 1; i <= n - 2; ++i) e[i] -= cpre * zn1;
  e[n - 1] -= cpre * zn1;
  // same with q_n for z_n
  add_q(bpre * zn);
  for (int i = 1; i <= n - 2; ++i) e[i] -= cpre * zn;
  e[n] -= cpre * zn;

  ExpVec out(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (e[i] < 0) throw std::logic_error("core_multiweight: negative exponent");
    out[i] = static_cast<int>(e[i]);
  }
  return out;
}

std::vector<Int> z_to_m(const ZCoords& z) {
  int n = z.n;
  PrefixData pre = prefix_data(z);
  std::vector<Int> bi(n - 1, 0);
  std::vector<Int> bsuf(n, 0);  // b_{t..n-2} suffix values
  {
    Int run = 0;
    for (int t = n - 2; t >= 1; --t) {
      run += z.z[t - 1];
      bsuf[t] = ((run % 2) + 2) % 2;
    }
  }
  Int zn1 = z.z[n - 2], zn = z.z[n - 1];
  Int cpre_all = pre.c[n - 2];
  std::vector<Int> m(n, 0);
  m[0] = -pre.b[n - 2] - cpre_all * (zn1 + zn);
  for (int t = 2; t <= n - 2; ++t)
    m[t - 1] = -2 * pre.a[t - 1] + pre.c[t - 1] * bsuf[t] - cpre_all * (zn1 + zn);
  m[n - 2] = -pre.a[n - 2] - cpre_all * zn1;
  m[n - 1] = -pre.a[n - 2] - cpre_all * zn;
  return m;
}

std::vector<Int> multiweight_d(const AbacusD& ab) {
  CoreResult cr = core_d(ab);
  ZCoords z = z_coords(cr.core);
  ExpVec core_wt = core_multiweight_d(z);
  std::vector<Int> out(core_wt.begin(), core_wt.end());
  int n = ab.n;
  out[0] += cr.bars_removed;
  out[1] += cr.bars_removed;
  for (int i = 2; i <= n - 2; ++i) out[i] += 2LL * cr.bars_removed;
  out[n - 1] += cr.bars_removed;
  out[n] += cr.bars_removed;
  return out;
}

namespace {

struct RowView {
  int t = 0;                   // beads in the row
  int l = 0;                   // beads at the last position
  std::vector<int> runners;    // occupied runners (with multiplicity), ascending
  std::map<int, int> by_runner;
};

std::vector<RowView> rows_of(const AbacusD& ab) {
  int n = ab.n;
  int width = 2 * n - 2;
  int max_row = 0;
  for (const auto& [pos, cnt] : ab.count) {
    (void)cnt;
    max_row = std::max(max_row, row_of(pos, n));
  }
  std::vector<RowView> rows(max_row + 1);  // rows[1..max_row]
  for (const auto& [pos, cnt] : ab.count) {
    int r = row_of(pos, n);
    int run = runner_of(pos, n);
    rows[r].t += cnt;
    rows[r].by_runner[run] += cnt;
    for (int c = 0; c < cnt; ++c) rows[r].runners.push_back(run);
    if (run == width) rows[r].l += cnt;
  }
  for (auto& r : rows) std::sort(r.runners.begin(), r.runners.end());
  return rows;
}

// smallest column index of the stack at `pos` (1-based, columns sorted by
// decreasing height) and the number of full columns shorter than it.
std::pair<int, int> stack_k_nk(const AbacusD& ab, int pos) {
  int taller = 0, shorter_full = 0;
  for (const auto& [p, cnt] : ab.count) {
    if (p > pos) taller += cnt;
    if (p < pos && !is_colored_position(p, ab.n)) shorter_full += cnt;
  }
  return {taller + 1, shorter_full};
}

bool d2_holds_at(const AbacusD& ab, int pos) {
  auto [k, nk] = stack_k_nk(ab, pos);
  bool want_white = (k + nk) % 2 == 0;
  return (ab.color.at(pos) == BeadColor::white) == want_white;
}

}  // namespace

bool is_zero_generated_d(const AbacusD& ab) {
  int n = ab.n;
  int width = 2 * n - 2;
  std::vector<RowView> rows = rows_of(ab);
  long long total = 0;
  for (const auto& [pos, cnt] : ab.count) {
    (void)pos;
    total += cnt;
  }
  for (size_t r = 1; r < rows.size(); ++r) {
    const RowView& row = rows[r];
    if (row.t == 0) continue;
    // (D1) rightmost bead on the last runner; all beads there or odd count
    if (row.l == 0) return false;
    if (row.l != row.t && row.l % 2 == 0) return false;
    // (D2) color of the last-position stack
    int last_pos = static_cast<int>(r) * width;
    if (!d2_holds_at(ab, last_pos)) return false;
    // (D4) beads on R_n..R_{2n-3} pushed right; left part empty unless the
    // right part and the last position are all occupied
    int right_filled = 0;
    for (int run = n; run <= 2 * n - 3; ++run) right_filled += row.by_runner.count(run) ? 1 : 0;
    for (int run = n; run <= 2 * n - 3; ++run) {
      bool occ = row.by_runner.count(run) > 0;
      bool expect = run >= 2 * n - 2 - right_filled;
      if (occ != expect) return false;
    }
    int left_count = 0;
    for (int run = 1; run <= n - 1; ++run) {
      auto it = row.by_runner.find(run);
      if (it != row.by_runner.end()) left_count += it->second;
    }
    if (left_count > 0 && (right_filled != n - 2 || row.l == 0)) return false;
    // (D5) left beads all on R_{n-1} or right packed on R_1..R_{n-2}
    int on_fork = row.by_runner.count(n - 1) ? row.by_runner.at(n - 1) : 0;
    if (on_fork > 0) {
      if (left_count != on_fork) return false;
    } else {
      int occupied = 0;
      for (int run = 1; run <= n - 2; ++run) occupied += row.by_runner.count(run) ? 1 : 0;
      if (occupied != left_count) return false;  // multiplicity one each
      for (int run = 1; run <= n - 2; ++run) {
        bool occ = row.by_runner.count(run) > 0;
        bool expect = run >= n - 1 - left_count;
        if (occ != expect) return false;
      }
    }
  }
  // The parity condition on the total bead count is implied by the stack
  // color rule in this color anchoring; no separate check is needed.
  (void)total;
  return true;
}

bool is_distinguished_d(const AbacusD& ab) {
  if (!is_zero_generated_d(ab)) return false;
  int n = ab.n;
  std::vector<RowView> rows = rows_of(ab);
  for (size_t r = 1; r < rows.size(); ++r) {
    const RowView& row = rows[r];
    if (row.t == 0) continue;
    int s = 0;
    for (int run = 1; run <= n - 1; ++run) {
      auto it = row.by_runner.find(run);
      if (it != row.by_runner.end()) s += it->second;
    }
    int on_fork = row.by_runner.count(n - 1) ? row.by_runner.at(n - 1) : 0;
    if (s > n - 2 && on_fork != s) return false;   // (D6a)
    if (s <= n - 2 && on_fork != 0) return false;  // (D6b)
  }
  return true;
}

TLSequence tl_encode(const AbacusD& ab) {
  if (!is_distinguished_d(ab))
    throw std::invalid_argument("tl_encode: wall is not distinguished 0-generated");
  std::vector<RowView> rows = rows_of(ab);
  TLSequence seq;
  for (size_t r = 1; r < rows.size(); ++r) seq.push_back({rows[r].t, rows[r].l});
  while (!seq.empty() && seq.back() == std::pair<int, int>{0, 0}) seq.pop_back();
  return seq;
}

bool tl_conditions_hold(const TLSequence& seq, int n) {
  long long total = 0;
  for (auto [t, l] : seq) {
    if (t < 0 || l < 0 || l > t) return false;
    if (t > 0 && !(l % 2 == 1 || (l == t && t % 2 == 0))) return false;
    total += t;
  }
  (void)total;
  (void)n;
  return true;
}

std::vector<AbacusD> tl_decode(const TLSequence& seq, int n) {
  if (!tl_conditions_hold(seq, n)) throw std::invalid_argument("tl_decode: conditions violated");
  int width = 2 * n - 2;
  // positions per row are forced by (D4)-(D6); stack colors on R_{n-1} are
  // free, the last-position colors are forced by (D2).
  struct RowPlan {
    std::vector<int> positions;  // with multiplicity
    int fork_count = 0;          // beads on R_{n-1}
  };
  std::vector<RowPlan> plans;
  for (size_t i = 0; i < seq.size(); ++i) {
    auto [t, l] = seq[i];
    RowPlan plan;
    int base = static_cast<int>(i) * width;
    for (int c = 0; c < l; ++c) plan.positions.push_back(base + width);
    int rest = t - l;
    int right = std::min(rest, n - 2);
    for (int c = 0; c < right; ++c) plan.positions.push_back(base + width - 1 - c);
    int s = rest - right;
    if (s > 0) {
      if (s <= n - 2) {
        for (int c = 0; c < s; ++c) plan.positions.push_back(base + n - 2 - c);
      } else {
        plan.fork_count = s;
        for (int c = 0; c < s; ++c) plan.positions.push_back(base + n - 1);
      }
    }
    plans.push_back(plan);
  }
  std::vector<int> fork_rows;
  for (size_t i = 0; i < plans.size(); ++i)
    if (plans[i].fork_count > 0) fork_rows.push_back(static_cast<int>(i));
  std::vector<AbacusD> out;
  for (int mask = 0; mask < (1 << fork_rows.size()); ++mask) {
    AbacusD ab;
    ab.n = n;
    for (size_t i = 0; i < plans.size(); ++i)
      for (int pos : plans[i].positions) {
        ++ab.count[pos];
        if (is_colored_position(pos, n) && !ab.color.count(pos))
          ab.color[pos] = BeadColor::white;  // provisional
      }
    // fork stack colors from the mask
    for (size_t fi = 0; fi < fork_rows.size(); ++fi) {
      int row = fork_rows[fi];
      int pos = row * width + n - 1;
      ab.color[pos] = ((mask >> fi) & 1) ? BeadColor::black : BeadColor::white;
    }
    // last-position stack colors forced by (D2)
    for (size_t i = 0; i < plans.size(); ++i) {
      int pos = static_cast<int>(i + 1) * width;
      if (!ab.count.count(pos)) continue;
      auto [k, nk] = stack_k_nk(ab, pos);
      ab.color[pos] = ((k + nk) % 2 == 1) ? BeadColor::white : BeadColor::black;
    }
    out.push_back(std::move(ab));
  }
  return out;
}

namespace {

// Label content of the cell at height h of a column, expressed as a
// multiweight increment. Depends on the column parity, on h modulo 2n-2 and,
// for the half-block cells, on the orientation bit. Tabulated once per rank
// from the machine's own single-column multiweights, so every consumer stays
// consistent with the core formulas.
struct CellPattern {
  int n;
  // [parity][bit][h-1] for h = 1..2n-2; full cells ignore the bit.
  std::vector<Int> increment[2][2];  // packed (n+1)-vectors per cell
  ExpVec cell(int column_index_1based, int h, int bit) const {
    int parity = column_index_1based % 2;  // 1 = odd column
    int width = 2 * n - 2;
    int hm = (h - 1) % width;
    ExpVec out(n + 1);
    for (int i = 0; i <= n; ++i) out[i] = static_cast<int>(increment[parity][bit][hm * (n + 1) + i]);
    return out;
  }
  bool is_zero_cell(int column_index_1based, int h, int bit) const {
    return cell(column_index_1based, h, bit)[0] != 0;
  }
};

std::vector<Int> wall_multiweight_raw(int n, const std::vector<int>& heights,
                                      const std::vector<uint8_t>& orient);

const CellPattern& cell_pattern(int n) {
  static std::map<int, CellPattern> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  CellPattern pat;
  pat.n = n;
  int width = 2 * n - 2;
  for (int parity = 0; parity < 2; ++parity)
    for (int bit = 0; bit < 2; ++bit) pat.increment[parity][bit].assign(width * (n + 1), 0);
  // odd columns: single column of height h (and h-1) with every bit choice;
  // even columns: the same behind a tall uncolored first column.
  auto single = [&](int h, uint8_t bit) {
    WallD w;
    w.n = n;
    w.heights = {h};
    if (h % (n - 1) == 0) w.orient = {bit};
    return multiweight_d(wall_to_abacus(w));
  };
  int tall = 2 * width + 1;  // uncolored screen column for the even pattern
  while (tall % (n - 1) == 0) ++tall;
  auto behind = [&](int h, uint8_t bit) {
    WallD w;
    w.n = n;
    w.heights = {tall, h};
    if (h % (n - 1) == 0) w.orient = {bit};
    return multiweight_d(wall_to_abacus(w));
  };
  std::vector<Int> screen = single(tall, 0);
  for (int h = 1; h <= width; ++h) {
    for (int bit = 0; bit < 2; ++bit) {
      // odd column: cells 1..h of a lone column
      std::vector<Int> hi = single(h, static_cast<uint8_t>(bit));
      std::vector<Int> lo =
          h == 1 ? std::vector<Int>(n + 1, 0)
                 : single(h - 1, static_cast<uint8_t>(bit));  // bit ignored unless colored
      for (int i = 0; i <= n; ++i) pat.increment[1][bit][(h - 1) * (n + 1) + i] = hi[i] - lo[i];
      // even column: behind the screen
      std::vector<Int> hi2 = behind(h, static_cast<uint8_t>(bit));
      std::vector<Int> lo2 = h == 1 ? screen : behind(h - 1, static_cast<uint8_t>(bit));
      for (int i = 0; i <= n; ++i) pat.increment[0][bit][(h - 1) * (n + 1) + i] = hi2[i] - lo2[i];
    }
  }
  // sanity: the bottom cells carry labels 0 (odd columns) and 1 (even)
  if (pat.increment[1][0][0] != 1 || pat.increment[0][0][1] != 1)
    throw std::logic_error("cell pattern: unexpected bottom row labels");
  auto [pos, inserted] = cache.emplace(n, std::move(pat));
  (void)inserted;
  return pos->second;
}

// Heights and per-column bits of a wall, tallest first.
std::pair<std::vector<int>, std::vector<uint8_t>> wall_data(const AbacusD& ab) {
  WallD w = abacus_to_wall(ab);
  size_t bi = 0;
  std::vector<uint8_t> per_column(w.heights.size(), 0);
  for (size_t c = 0; c < w.heights.size(); ++c)
    if (w.heights[c] % (ab.n - 1) == 0) per_column[c] = w.orient[bi++];
  return {w.heights, per_column};
}

// 0-labelled cells of a column of the given height and top bit, as heights.
// Interior half-cell pairs are decomposed along the bit-0 path; only the top
// cell of a colored-height column uses its orientation bit.
std::vector<int> column_zero_heights(int n, int column_index_1based, int height, uint8_t bit) {
  const CellPattern& pat = cell_pattern(n);
  std::vector<int> out;
  for (int h = 1; h <= height; ++h) {
    int use_bit = (h == height && h % (n - 1) == 0) ? bit : 0;
    if (pat.is_zero_cell(column_index_1based, h, use_bit)) out.push_back(h);
  }
  return out;
}

// The set of 0-labelled cells of the wall, encoded as (column, height).
std::set<std::pair<int, int>> zero_blocks(const AbacusD& ab) {
  auto [heights, bits] = wall_data(ab);
  std::set<std::pair<int, int>> out;
  for (size_t c = 0; c < heights.size(); ++c)
    for (int h : column_zero_heights(ab.n, static_cast<int>(c) + 1, heights[c], bits[c]))
      out.insert({static_cast<int>(c) + 1, h});
  return out;
}

// All walls with the given 0-labelled block set. Each column's height is
// pinned between its highest required 0-cell and the next 0-cell of the
// pattern, so the class is finite.
std::vector<AbacusD> walls_with_zero_set(int n, const std::set<std::pair<int, int>>& target) {
  int width = 2 * n - 2;
  int maxcol = 0, maxh = 0;
  for (auto [c, h] : target) {
    maxcol = std::max(maxcol, c);
    maxh = std::max(maxh, h);
  }
  int columns = maxcol + 1;  // one trailing 0-free (even) column can appear
  int hcap = maxh + 2 * width;
  std::vector<std::vector<std::pair<int, uint8_t>>> options(columns + 1);
  for (int c = 1; c <= columns; ++c) {
    std::vector<int> want;
    for (auto [tc, th] : target)
      if (tc == c) want.push_back(th);
    for (int h = 1; h <= hcap; ++h) {
      int nbits = h % (n - 1) == 0 ? 2 : 1;
      for (int b = 0; b < nbits; ++b)
        if (column_zero_heights(n, c, h, static_cast<uint8_t>(b)) == want)
          options[c].push_back({h, static_cast<uint8_t>(b)});
    }
    if (want.empty()) options[c].push_back({0, 0});  // absent column
  }
  std::vector<AbacusD> out;
  std::vector<std::pair<int, uint8_t>> chosen;
  std::function<void(int)> rec = [&](int c) {
    if (c > columns) {
      WallD w;
      w.n = n;
      for (auto [h, b] : chosen)
        if (h > 0) {
          w.heights.push_back(h);
          if (h % (n - 1) == 0) w.orient.push_back(b);
        }
      if (is_valid_wall(w)) out.push_back(wall_to_abacus(w));
      return;
    }
    int prev = c == 1 ? hcap : chosen[c - 2].first;
    for (auto [h, b] : options[c]) {
      if (h > prev) continue;
      if (h > 0 && c > 1 && chosen[c - 2].first == 0) continue;  // no gaps
      chosen.push_back({h, b});
      rec(c + 1);
      chosen.pop_back();
    }
  };
  rec(1);
  return out;
}

}  // namespace

AbacusD p_map_d(const AbacusD& input) {
  // p(Y) is the unique distinguished wall with the same 0-labelled block set
  // as Y: pick the distinguished member of Y's 0-block class.
  if (is_distinguished_d(input)) return input;
  std::set<std::pair<int, int>> target = zero_blocks(input);
  AbacusD found;
  int matches = 0;
  for (const AbacusD& cand : walls_with_zero_set(input.n, target))
    if (is_distinguished_d(cand)) {
      found = cand;
      ++matches;
    }
  if (matches != 1)
    throw std::logic_error("p_map_d: the 0-block class has " + std::to_string(matches) +
                           " distinguished members");
  return found;
}

Int c_value(int t, int l, int n) {
  if (t < 0 || l < 0 || l > t) throw std::invalid_argument("c_value: invalid (t, l)");
  if (t > 0 && !(l % 2 == 1 || l == t)) throw std::invalid_argument("c_value: row shape");
  auto c2 = [](long long a) { return a < 2 ? 0LL : a * (a - 1) / 2; };
  long long base = l % 2 == 0 ? c2(n - 1) : c2(n);
  int d = t - l;
  if (d <= n - 2) return base - c2(n - 1 - d);
  if (d <= 2 * n - 3) return base - c2(d - n + 1);
  return base;
}

ZSeries orbifold_series_d_enumerate(int n, int trunc) {
  VarSetPtr vars = q_vars(n);
  ZSeries out(vars, trunc);
  for_each_wall(n, trunc, [&](const AbacusD& ab) {
    std::vector<Int> wt = multiweight_d(ab);
    out.add_term(ExpVec(wt.begin(), wt.end()), 1);
  });
  return out;
}

ZSeries orbifold_series_d_closed(int n, int trunc) {
  VarSetPtr vars = q_vars(n);
  ExpVec bar(n + 1, 2);
  bar[0] = bar[1] = bar[n - 1] = bar[n] = 1;
  std::vector<std::vector<Int>> cartan(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) cartan[i][i] = 2;
  for (int i = 1; i < n - 2; ++i) cartan[i - 1][i] = cartan[i][i - 1] = -1;
  cartan[n - 3][n - 2] = cartan[n - 2][n - 3] = -1;
  cartan[n - 3][n - 1] = cartan[n - 1][n - 3] = -1;
  std::vector<int> var_of(n);
  for (int i = 0; i < n; ++i) var_of[i] = i + 1;
  ZSeries theta = theta_series(vars, cartan, var_of, bar, trunc);
  ZSeries eta = eta_factor(vars, bar, -(n + 1), trunc);
  return theta * eta;
}

namespace {

void for_each_distinguished_impl(int n, int max_weight,
                                 const std::function<void(const AbacusD&)>& fn) {
  // Row shapes are forced by (D4)-(D6) given (t, l); enumerate row data with
  // the weight bound, then color choices (fork stacks are free).
  int width = 2 * n - 2;
  int max_rows = max_weight / width + 2;
  TLSequence seq;
  std::function<void(int, int)> rec = [&](int row, int used) {
    // decode trimmed sequences only (once each)
    if (seq.empty() || !(seq.back() == std::pair<int, int>{0, 0})) {
      if (tl_conditions_hold(seq, n)) {
        for (const AbacusD& ab : tl_decode(seq, n)) {
          if (abacus_weight(ab) > max_weight) continue;
          if (!is_distinguished_d(ab))
            throw std::logic_error("tl enumeration produced a non-distinguished wall");
          fn(ab);
        }
      }
    }
    if (row >= max_rows) return;
    int base = row * width;
    // minimal weight of a row with data (t, l) at this depth; iterate t, l
    for (int t = 1;; ++t) {
      // cheapest packing: l beads at the end is the heaviest part; estimate
      // the minimum row weight by the right-packed shape with l = 1
      long long min_weight = 0;
      {
        int l = 1;
        min_weight = base + width;
        int rest = t - l;
        int right = std::min(rest, n - 2);
        for (int c = 0; c < right; ++c) min_weight += base + width - 1 - c;
        int s = rest - right;
        if (s > 0) min_weight += static_cast<long long>(s) * (base + 1);
      }
      if (used + min_weight > max_weight) break;
      for (int l = 1; l <= t; ++l) {
        if (!(l % 2 == 1 || l == t)) continue;
        // exact weight of the forced shape
        long long wrow = static_cast<long long>(l) * (base + width);
        int rest = t - l;
        int right = std::min(rest, n - 2);
        for (int c = 0; c < right; ++c) wrow += base + width - 1 - c;
        int s = rest - right;
        if (s > 0) {
          if (s <= n - 2)
            for (int c = 0; c < s; ++c) wrow += base + n - 2 - c;
          else
            wrow += static_cast<long long>(s) * (base + n - 1);
        }
        if (used + wrow > max_weight) continue;
        seq.push_back({t, l});
        rec(row + 1, used + static_cast<int>(wrow));
        seq.pop_back();
      }
    }
    // also allow an empty row followed by nonempty ones
    seq.push_back({0, 0});
    rec(row + 1, used);
    seq.pop_back();
  };
  rec(0, 0);
}

}  // namespace

ZSeries coarse_series_d_tl(int n, int q_trunc) {
  auto run = [&](int cap) {
    ZSeries out(single_q(), q_trunc);
    for_each_distinguished_impl(n, cap, [&](const AbacusD& ab) {
      Int wt0 = multiweight_d(ab)[0];
      if (wt0 <= q_trunc) out.add_term(ExpVec{static_cast<int>(wt0)}, 1);
    });
    return out;
  };
  int cap = (2 * n - 2) * q_trunc + 2 * n;
  ZSeries first = run(cap);
  ZSeries second = run(cap + 2 * n);
  if (!(first == second)) throw std::logic_error("coarse_series_d: enumeration cap unstable");
  return first;
}

ZSeries coarse_series_d_filter(int n, int q_trunc) {
  auto run = [&](int cap) {
    ZSeries out(single_q(), q_trunc);
    for_each_wall(n, cap, [&](const AbacusD& ab) {
      if (!is_distinguished_d(ab)) return;
      Int wt0 = multiweight_d(ab)[0];
      if (wt0 <= q_trunc) out.add_term(ExpVec{static_cast<int>(wt0)}, 1);
    });
    return out;
  };
  int cap = (2 * n - 2) * q_trunc + 2 * n;
  ZSeries first = run(cap);
  ZSeries second = run(cap + n);
  if (!(first == second)) throw std::logic_error("coarse_series_d filter: cap unstable");
  return first;
}

ZSeries coarse_series_d_substitute(int n, int q_trunc) {
  // identical in structure to the simply laced collapse: zeta of order 2n-1,
  // theta collapses to sum_m zeta^{sum m_i} q^{(1/2) m^T C m}
  std::vector<std::vector<Int>> cartan(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) cartan[i][i] = 2;
  for (int i = 1; i < n - 2; ++i) cartan[i - 1][i] = cartan[i][i - 1] = -1;
  cartan[n - 3][n - 2] = cartan[n - 2][n - 3] = -1;
  cartan[n - 3][n - 1] = cartan[n - 1][n - 3] = -1;
  int order = 2 * n - 1;
  // box bound: m_i^2 <= 2 K (C^{-1})_{ii}; for D_n the inverse diagonal is
  // at most n/2 + 1
  long long box = static_cast<long long>(std::sqrt(2.0 * q_trunc * (n / 2.0 + 1.5))) + 2;
  CSeries theta_sub(single_q(), q_trunc);
  std::vector<Int> m(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      long long q2 = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) q2 += m[a] * cartan[a][b] * m[b];
      if (q2 % 2 != 0) throw std::logic_error("odd norm");
      long long k = q2 / 2;
      if (k > q_trunc) return;
      long long zsum = 0;
      for (int a = 0; a < n; ++a) zsum += m[a];
      theta_sub.add_term(ExpVec{static_cast<int>(k)}, CycInt::zeta_pow(order, zsum));
      return;
    }
    for (long long v = -box; v <= box; ++v) {
      m[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  ZSeries eta = eta_factor(single_q(), ExpVec{1}, -(n + 1), q_trunc);
  CSeries total = theta_sub * to_cyclotomic(eta, order);
  ZSeries out;
  if (!is_integer_series(total, &out))
    throw std::logic_error("coarse_series_d: substitution produced a non-integer coefficient");
  return out;
}

std::vector<AbacusD> p_fiber_d(const AbacusD& distinguished) {
  if (!is_distinguished_d(distinguished))
    throw std::invalid_argument("p_fiber_d: base wall must be distinguished");
  return walls_with_zero_set(distinguished.n, zero_blocks(distinguished));
}

FiberCheckD fiber_identity_d(const AbacusD& distinguished) {
  int n = distinguished.n;
  int order = 2 * n - 1;
  std::vector<AbacusD> fiber = p_fiber_d(distinguished);
  auto xi_exponent = [&](const AbacusD& ab) {
    std::vector<Int> wt = multiweight_d(ab);
    long long e = 2 * wt[0];
    for (int i = 1; i <= n; ++i) e += wt[i];
    return e;
  };
  std::vector<Int> wt_base = multiweight_d(distinguished);
  CycInt sum = CycInt::zero(order);
  bool wt0_consistent = true;
  bool base_present = false;
  for (const AbacusD& ab : fiber) {
    std::vector<Int> wt = multiweight_d(ab);
    if (wt[0] != wt_base[0]) wt0_consistent = false;
    if (ab == distinguished) base_present = true;
    sum += CycInt::zeta_pow(order, xi_exponent(ab));
  }
  FiberCheckD out;
  out.collapses = wt0_consistent && base_present && sum == CycInt::one(order);
  // the c-table form: sum == xi^{e(Y) - sum_i c(t_i, l_i)}
  TLSequence seq = tl_encode(distinguished);
  long long cexp = 0;
  for (auto [t, l] : seq)
    if (t > 0) cexp += c_value(t, l, n);
  out.c_table_matches = sum == CycInt::zeta_pow(order, xi_exponent(distinguished) - cexp);
  return out;
}

AbacusD random_wall(int n, int max_weight, unsigned seed) {
  std::mt19937 rng(seed);
  AbacusD ab;
  ab.n = n;
  int budget = std::uniform_int_distribution<int>(0, max_weight)(rng);
  for (int tries = 0; tries < 8 * max_weight + 16 && budget > 0; ++tries) {
    int pos = std::uniform_int_distribution<int>(1, budget)(rng);
    if (!is_colored_position(pos, n) && count_at(ab, pos)) continue;
    if (is_colored_position(pos, n)) {
      if (!count_at(ab, pos)) {
        BeadColor c = std::uniform_int_distribution<int>(0, 1)(rng) ? BeadColor::black
                                                                    : BeadColor::white;
        ab.color[pos] = c;
      }
      ++ab.count[pos];
    } else {
      ab.count[pos] = 1;
    }
    budget -= pos;
  }
  return ab;
}

}  // namespace ywq
