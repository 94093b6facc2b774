#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ywq/series.hpp"

namespace ywq {

enum class BeadColor : uint8_t { white = 0, black = 1 };
inline BeadColor flip(BeadColor c) {
  return c == BeadColor::white ? BeadColor::black : BeadColor::white;
}

// Type D_n wall: weakly decreasing column heights; heights not divisible by
// n-1 are pairwise distinct; columns whose height is divisible by n-1 end in
// a half block and carry an orientation bit (equal heights share the bit).
struct WallD {
  int n = 4;
  std::vector<int> heights;
  std::vector<uint8_t> orient;  // one bit per column with height % (n-1) == 0

  bool operator==(const WallD&) const = default;
};

int wall_weight(const WallD& w);
bool is_valid_wall(const WallD& w);

// Bead positions 1, 2, 3, ... in rows of width 2n-2. Runners R_k collect the
// positions congruent to k; R_{n-1} and R_{2n-2} hold stacks of beads of a
// single color per position, every other runner at most one bead.
struct AbacusD {
  int n = 4;
  std::map<int, int> count;
  std::map<int, BeadColor> color;  // defined exactly on occupied colored positions

  bool operator==(const AbacusD&) const = default;
};

inline int runner_of(int position, int n) { return (position - 1) % (2 * n - 2) + 1; }
inline int row_of(int position, int n) { return (position - 1) / (2 * n - 2) + 1; }
inline bool is_colored_position(int position, int n) { return position % (n - 1) == 0; }

int abacus_weight(const AbacusD& ab);
bool is_valid_abacus(const AbacusD& ab);

AbacusD wall_to_abacus(const WallD& w);
WallD abacus_to_wall(const AbacusD& ab);

// Enumerates every wall of weight <= max_weight (as abacus configurations),
// deterministic order.
void for_each_wall(int n, int max_weight, const std::function<void(const AbacusD&)>& fn);

// One bar removal step.
enum class BarStep { B1, B2, B3, B4 };
struct BarSite {
  BarStep step;
  int position;  // for B2 the smaller of the pair
};

std::vector<BarSite> bar_sites(const AbacusD& ab);
AbacusD apply_bar_step(const AbacusD& ab, const BarSite& site);

struct CoreResult {
  AbacusD core;
  int bars_removed = 0;
};
// Deterministic exhaustion of B1-B4 (lowest position first, B1<B2<B3<B4).
CoreResult core_d(const AbacusD& ab);
// Random exhaustion order; must reach the same core.
CoreResult core_d_random(const AbacusD& ab, unsigned seed);

// Integer coordinates of a core: z_s = beads on R_s minus beads on
// R_{2n-2-s} for s <= n-2; the colored runners carry the remaining pair.
struct ZCoords {
  int n = 4;
  std::vector<Int> z;  // z_1..z_n

  bool operator==(const ZCoords&) const = default;
};

ZCoords z_coords(const AbacusD& core);
AbacusD core_from_z(const ZCoords& z);

// Total weight of the core with the given coordinates.
Int core_weight_formula(const ZCoords& z);

// Multiweight of the core as an exponent vector over q_0..q_n.
ExpVec core_multiweight_d(const ZCoords& z);

// Lattice coordinates m_1..m_n with
// q^wt(core(z)) = q_1^{m_1}...q_n^{m_n} (q^{1/2})^{m^T C m}.
std::vector<Int> z_to_m(const ZCoords& z);

// Multiweight of an arbitrary wall: core multiweight plus one bar vector
// (1,1,2,...,2,1,1) per removed bar.
std::vector<Int> multiweight_d(const AbacusD& ab);

bool is_zero_generated_d(const AbacusD& ab);
bool is_distinguished_d(const AbacusD& ab);

// Row data (t_i, l_i): total beads and beads at the last position per row.
using TLSequence = std::vector<std::pair<int, int>>;

TLSequence tl_encode(const AbacusD& ab);
bool tl_conditions_hold(const TLSequence& seq, int n);
// All distinguished walls with the given row data (free stack colors give
// the 2^m multiplicity).
std::vector<AbacusD> tl_decode(const TLSequence& seq, int n);

// Push-right map onto distinguished 0-generated walls; preserves the
// 0-weight and restricts to the identity on distinguished walls.
AbacusD p_map_d(const AbacusD& ab);

// Tabulated row statistic.
Int c_value(int t, int l, int n);

// Generating series routes.
ZSeries orbifold_series_d_enumerate(int n, int trunc);
ZSeries orbifold_series_d_closed(int n, int trunc);
ZSeries coarse_series_d_tl(int n, int q_trunc);
ZSeries coarse_series_d_filter(int n, int q_trunc);
ZSeries coarse_series_d_substitute(int n, int q_trunc);

// All walls mapping to the given distinguished wall under p, i.e. sharing
// its 0-labelled block set. Fibers are finite: each column is pinned between
// its highest required 0-cell and the next 0-cell of the pattern.
std::vector<AbacusD> p_fiber_d(const AbacusD& distinguished);

// Substituted fiber sum equals q^{wt_0} (and the c-table exponent matches).
struct FiberCheckD {
  bool collapses = false;       // fiber sum == q^{wt_0}
  bool c_table_matches = false; // xi-exponent equals -sum_i c(t_i, l_i)
};
FiberCheckD fiber_identity_d(const AbacusD& distinguished);

// Random valid wall with weight <= max_weight (abacus form).
AbacusD random_wall(int n, int max_weight, unsigned seed);

}  // namespace ywq
