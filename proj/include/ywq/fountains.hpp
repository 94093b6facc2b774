#pragma once

#include <vector>

#include "ywq/series.hpp"

namespace ywq {

// Counts of (n, k) p-fountains: k contiguous coins in the bottom row, every
// higher coin resting on p+1 consecutive coins of the row below. Primitive
// means the next-to-bottom row is full (only defined for k >= p).
struct FountainCounts {
  Int total = 0;
  Int primitive = 0;
};
FountainCounts enumerate_fountains(int p, int n, int k);

// Table of f(n,k) and g(n,k) for all n <= n_max, built by enumeration.
struct FountainTable {
  int p = 1;
  int n_max = 0;
  // f[n][k], g[n][k]; k <= n.
  std::vector<std::vector<Int>> f, g;

  Int fval(int n, int k) const;
  Int gval(int n, int k) const;
  Int hval(int n, int k) const { return fval(n, k) - gval(n, k); }
};
FountainTable fountain_table(int p, int n_max);

// Two-variable series over (q, z) with z of weight zero.
struct FountainSeries {
  ZSeries F;      // sum f(n,k) q^n z^k
  ZSeries G;      // via the shift identity G(q,z) = (qz)^p F(q, qz)
  ZSeries G_cf;   // via the continued fraction, deepened until stable
  ZSeries H;      // F - G
};
FountainSeries fountain_series(int p, int q_trunc);

// Triangle series T(q,z): both the explicit sum over l and the triple
// product form (they must agree; `product_form` selects which to build).
ZSeries triangle_series(int p, int q_trunc, bool product_form);

// Z_{X(p,1)}: [z^0] T(q,z) H(q^{-1}, z^{-1}) made explicit as a finite
// double sum, or brute-force enumeration of 0-generated diagrams.
ZSeries coarse_series_p1_formula(int p, int q_trunc);
ZSeries coarse_series_p1_brute(int p, int q_trunc);

// Contribution of the T-terms with l < 0 to the pairing (all but the p = 1
// empty-triangle boundary term must vanish).
ZSeries negative_l_contribution(int p, int q_trunc);

// 0-generated test and 0-weight for the cyclic singularity: generator blocks
// (i, j) must satisfy i + j == 0 mod p.
bool is_zero_generated_p1(const std::vector<int>& partition, int p);
Int weight0_p1(const std::vector<int>& partition, int p);

}  // namespace ywq
