#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ywq/series.hpp"

namespace ywq {

enum class KindClass { A, D, E };

// Finite Cartan matrix, affine Dynkin marks and Coxeter number of a simply
// laced root system. Node 0 is the affine node; finite nodes are 1..n.
struct RootSystem {
  KindClass kind;
  int n = 1;
  std::vector<std::vector<Int>> cartan;             // n x n
  std::vector<std::vector<int>> affine_adjacency;   // (n+1) x (n+1), multiplicities
  std::vector<Int> marks;                           // d_0..d_n
  int coxeter = 2;                                  // h = h_dual

  std::string name() const;
  // Monomial q = prod q_i^{d_i} over variables q_0..q_n.
  ExpVec bar_monomial() const { return ExpVec(marks.begin(), marks.end()); }
};

RootSystem root_system(KindClass kind, int n);
// Parses "A3", "D4", "E6".."E8".
std::optional<RootSystem> parse_root_system(const std::string& text);

// Orbifold closed form over q_0..q_n: eta(prod q_i^{d_i})^{-(n+1)} * theta(C).
ZSeries orbifold_closed_form(const RootSystem& rs, int trunc);

// Coarse series via the root-of-unity collapse, zeta of order 1 + h:
// eta(q)^{-(n+1)} * sum_m zeta^{sum m_i} q^{(1/2) m^T C m}. Throws
// NonIntegralError when the result fails to have integer coefficients.
struct NonIntegralError : std::runtime_error {
  explicit NonIntegralError(const std::string& what, bool conjectural_level)
      : std::runtime_error(what), conjectural(conjectural_level) {}
  bool conjectural;  // true for type E (observation, not theorem)
};
ZSeries coarse_substitution(const RootSystem& rs, int q_trunc);

// Local singularity factor for the global product: either a simply laced
// kind or a cyclic X(p,1).
struct LocalSingularity {
  std::optional<RootSystem> kind;
  int cyclic_p = 0;  // used when kind is empty
};

// eta(q)^{-chi_s0} * prod of local coarse series (chi_s0 = Euler
// characteristic of the smooth locus).
ZSeries global_series(int chi_s0, const std::vector<LocalSingularity>& locals, int q_trunc);

}  // namespace ywq
