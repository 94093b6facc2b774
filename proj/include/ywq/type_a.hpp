#pragma once

#include <functional>
#include <set>
#include <vector>

#include "ywq/series.hpp"

namespace ywq {

// Weakly decreasing positive parts; lambda[i] is the height of column i.
using Partition = std::vector<int>;

// Block (i, j) = column i, row j carries label (i - j + shift) mod (rank+1).
struct LabelledPartition {
  Partition parts;
  int rank = 1;   // labels live in Z/(rank+1)
  int shift = 0;  // diagonal a-labelling
};

bool is_valid_partition(const Partition& p);
int partition_weight(const Partition& p);

// Calls fn once for every partition of total size <= max_size (including the
// empty one), sizes in increasing order, lexicographic within a size.
void for_each_partition(int max_size, const std::function<void(const Partition&)>& fn);

// Label counts (wt_0, ..., wt_n).
std::vector<Int> multiweight_a(const LabelledPartition& lp);

// Addable blocks (i, j) whose addition leaves a partition.
std::vector<std::pair<int, int>> addable_blocks(const Partition& p);

// All addable blocks carry label 0 (shift must be 0).
bool is_zero_generated_a(const Partition& p, int rank);

// Finite abacus encoding: bead at lambda_i - i + 1 for every i >= 1, stored
// as the symmetric difference from the vacuum (all nonpositive occupied).
struct AbacusA {
  int rank = 1;
  std::vector<int> positive_occupied;   // sorted ascending
  std::vector<int> nonpositive_vacant;  // sorted ascending

  bool operator==(const AbacusA&) const = default;
};

AbacusA abacus_from_partition(const Partition& p, int rank);
Partition partition_from_abacus(const AbacusA& ab);

struct CoreQuotientA {
  std::vector<Int> a_vector;          // per-runner charges, sum 0
  std::vector<Partition> quotients;   // rank+1 partitions
  Partition core;
};

CoreQuotientA core_quotient_a(const Partition& p, int rank);
Partition partition_from_core_quotient(const CoreQuotientA& cq, int rank);

// Partition whose abacus has all beads pushed up as far as possible, reached
// by removing border strips of length rank+1 one at a time in the given
// order sequence (used to exercise order independence). Returns the core.
Partition core_by_random_removals(const Partition& p, int rank, unsigned seed);

// Smallest 0-generated partition containing p (beads pushed right per row).
Partition p_map_a(const Partition& p, int rank);

// Both routes to the multivariable series of diagonally labelled partitions.
ZSeries orbifold_series_a_enumerate(int rank, int trunc);
ZSeries orbifold_series_a_closed(int rank, int trunc);

// Coarse series: counts of 0-generated partitions by wt_0 (enumeration), or
// the root-of-unity substitution into the closed form. The substitution
// route throws if a non-integer coefficient appears.
ZSeries coarse_series_a_enumerate(int rank, int q_trunc);
ZSeries coarse_series_a_substitute(int rank, int q_trunc);

// Frobenius-partition route: [z^0] of the two hook products.
ZSeries frobenius_series_a(int rank, int trunc);

// Colored F-partition of a labelled partition: rows f, g of label-count
// vectors, one pair per diagonal block.
struct ColoredFPartition {
  std::vector<std::vector<Int>> f;  // f[i][c]
  std::vector<std::vector<Int>> g;
};
ColoredFPartition frobenius_rows(const LabelledPartition& lp);

// Higher rank: product of shifted closed forms / tuple enumeration.
ZSeries higher_rank_series_closed(int rank, const std::vector<int>& shifts, int trunc);
ZSeries higher_rank_series_enumerate(int rank, const std::vector<int>& shifts, int trunc);

// Fiber of the p map over a 0-generated partition: all partitions contained
// in lambda0 with the same 0-labelled block set.
std::vector<Partition> p_fiber_a(const Partition& lambda0, int rank);

// Substituted fiber sum; true iff it collapses to q^{wt_0(lambda0)}.
bool fiber_identity_holds_a(const Partition& lambda0, int rank);

}  // namespace ywq
