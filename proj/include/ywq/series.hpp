#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ywq/cyclotomic.hpp"

namespace ywq {

using ExpVec = std::vector<int>;

// Variable environment shared by the series living over it. Terms are graded
// by the weighted total degree sum_i weights[i]*exp[i]. At most one variable
// (the Laurent one) may carry negative exponents; it conventionally has
// weight 0 so that truncation is by the degree of the remaining variables.
struct VarSet {
  std::vector<std::string> names;
  std::vector<int> weights;
  int laurent = -1;

  bool operator==(const VarSet&) const = default;
  int count() const { return static_cast<int>(names.size()); }
};

using VarSetPtr = std::shared_ptr<const VarSet>;

VarSetPtr make_vars(std::vector<std::string> names);
VarSetPtr make_vars(std::vector<std::string> names, std::vector<int> weights, int laurent = -1);
// q_0, ..., q_n with unit weights.
VarSetPtr q_vars(int n);
// Single variable "q".
VarSetPtr single_q();
// ("q", "z") with weights (1, 0), z Laurent.
VarSetPtr qz_vars();

namespace coeff {
inline bool is_zero(Int c) { return c == 0; }
inline bool is_zero(const CycInt& c) { return c.is_zero(); }
}  // namespace coeff

// Formal power series with exact coefficients, truncated by weighted total
// degree. Terms are kept in a lexicographically ordered map so that
// iteration, printing and serialization are deterministic.
template <class C>
class Series {
public:
  Series() : vars_(single_q()), trunc_(0) {}
  Series(VarSetPtr vars, int trunc) : vars_(std::move(vars)), trunc_(trunc) {
    if (trunc_ < 0) throw std::invalid_argument("series truncation must be >= 0");
  }

  static Series zero(VarSetPtr vars, int trunc) { return Series(std::move(vars), trunc); }
  static Series one(VarSetPtr vars, int trunc, C unit) {
    Series s(std::move(vars), trunc);
    s.add_term(ExpVec(s.vars().count(), 0), std::move(unit));
    return s;
  }

  const VarSet& vars() const { return *vars_; }
  const VarSetPtr& vars_ptr() const { return vars_; }
  int trunc() const { return trunc_; }
  const std::map<ExpVec, C>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  int degree_of(const ExpVec& e) const {
    long long d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += static_cast<long long>(vars_->weights[i]) * e[i];
    return static_cast<int>(d);
  }

  void check_exponents(const ExpVec& e) const {
    if (static_cast<int>(e.size()) != vars_->count())
      throw std::invalid_argument("exponent vector length mismatch");
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] < 0 && static_cast<int>(i) != vars_->laurent)
        throw std::invalid_argument("negative exponent outside the Laurent variable");
  }

  // Adds c * x^e, dropping the term if it exceeds the truncation.
  void add_term(ExpVec e, C c) {
    check_exponents(e);
    if (coeff::is_zero(c)) return;
    if (degree_of(e) > trunc_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), std::move(c));
    } else {
      it->second += c;
      if (coeff::is_zero(it->second)) terms_.erase(it);
    }
  }

  C coeff_of(const ExpVec& e) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return C{};
    return it->second;
  }

  void retruncate(int new_trunc) {
    if (new_trunc > trunc_) throw std::invalid_argument("cannot raise a series truncation");
    trunc_ = new_trunc;
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (degree_of(it->first) > trunc_)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  void require_compatible(const Series& o) const {
    if (!(*vars_ == *o.vars_)) throw std::invalid_argument("series variable sets differ");
  }

  Series operator-() const {
    Series r(vars_, trunc_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  Series operator+(const Series& o) const {
    require_compatible(o);
    Series r(vars_, std::min(trunc_, o.trunc_));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  Series operator-(const Series& o) const {
    require_compatible(o);
    Series r(vars_, std::min(trunc_, o.trunc_));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }

  Series operator*(const Series& o) const {
    require_compatible(o);
    Series r(vars_, std::min(trunc_, o.trunc_));
    const int nv = vars_->count();
    for (const auto& [ea, ca] : terms_) {
      int da = degree_of(ea);
      for (const auto& [eb, cb] : o.terms_) {
        if (da + o.degree_of(eb) > r.trunc_) continue;
        ExpVec e(nv);
        for (int i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    }
    return r;
  }

  Series pow(long long k) const;
  Series inverse() const;

  bool operator==(const Series& o) const {
    return *vars_ == *o.vars_ && trunc_ == o.trunc_ && terms_ == o.terms_;
  }

private:
  VarSetPtr vars_;
  int trunc_;
  std::map<ExpVec, C> terms_;
};

// Integer power; negative powers invert first. Only defined for integer
// coefficients (the only place the artifact needs formal inversion).
template <>
Series<Int> Series<Int>::pow(long long k) const;
template <>
Series<Int> Series<Int>::inverse() const;

using ZSeries = Series<Int>;
using CSeries = Series<CycInt>;

// prod_{m >= 1} (1 - M^m)^power truncated at N, M a monomial of positive
// weighted degree given by its exponent vector.
ZSeries eta_factor(const VarSetPtr& vars, const ExpVec& monomial, long long power, int trunc);

// sum over mbar in Z^n of q_{v(1)}^{m_1} ... q_{v(n)}^{m_n} *
// (q_monomial)^{(1/2) mbar^T C mbar}. C must be symmetric positive definite
// with even diagonal. Every emitted term must have componentwise nonnegative
// combined exponents; violations throw.
ZSeries theta_series(const VarSetPtr& vars, const std::vector<std::vector<Int>>& cartan,
                     const std::vector<int>& var_of_coordinate, const ExpVec& q_monomial,
                     int trunc);

// Variant used to check that the internal lattice enumeration bound is
// conservative: enumerates with the bound enlarged by `extra` and must agree
// with the plain version.
ZSeries theta_series_widened(const VarSetPtr& vars, const std::vector<std::vector<Int>>& cartan,
                             const std::vector<int>& var_of_coordinate, const ExpVec& q_monomial,
                             int trunc, int extra);

struct SubstEntry {
  long long root_exponent = 0;  // a_i
  long long q_exponent = 0;     // b_i >= 0
};

// Maps every term c * prod q_i^{e_i} to c * zeta^{sum a_i e_i} * q^{sum b_i e_i}.
// The caller guarantees that the input series determines the image up to
// q-degree q_trunc (all omitted terms map beyond it).
CSeries substitute_root_of_unity(const ZSeries& s, int order, const std::vector<SubstEntry>& plan,
                                 int q_trunc);

// True iff every coefficient is a plain integer after canonical reduction;
// the integer series is stored through `out` when non-null.
bool is_integer_series(const CSeries& s, ZSeries* out);

// Coefficient of z^0 in a*b where both live over the same variable set with
// a designated Laurent variable. The result lives over the remaining
// variables, truncated at min(trunc a, trunc b).
ZSeries z0_pair(const ZSeries& a, const ZSeries& b);

CSeries to_cyclotomic(const ZSeries& s, int order);

}  // namespace ywq
