#include <doctest.h>

#include <random>

#include "ywq/cyclotomic.hpp"

using namespace ywq;

namespace {

// Naive oracle: multiply as polynomials, then reduce modulo Phi_m by long
// division. Independent of the CycInt internals.
std::vector<Int> naive_mul_mod_phi(int order, const std::vector<Int>& a,
                                   const std::vector<Int>& b) {
  std::vector<Int> conv(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) conv[i + j] += a[i] * b[j];
  const std::vector<Int>& phi = cyclotomic_polynomial(order);
  int d = static_cast<int>(phi.size()) - 1;
  for (int k = static_cast<int>(conv.size()) - 1; k >= d; --k) {
    Int c = conv[k];
    if (c == 0) continue;
    for (int j = 0; j <= d; ++j) conv[k - d + j] -= c * phi[j];
  }
  conv.resize(d, 0);
  conv.resize(d);
  return conv;
}

CycInt from_coords(int order, const std::vector<Int>& coords) {
  CycInt acc = CycInt::zero(order);
  for (size_t i = 0; i < coords.size(); ++i)
    acc += CycInt::zeta_pow(order, static_cast<long long>(i)) * coords[i];
  return acc;
}

}  // namespace

TEST_CASE("cyclotomic polynomials match known values") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<Int>{1, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<Int>{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});
  CHECK(cyclotomic_polynomial(9) == std::vector<Int>{1, 0, 0, 1, 0, 0, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
  CHECK(totient(31) == 30);
  CHECK(cyclotomic_polynomial(31).size() == 31u);
}

TEST_CASE("zeta powers wrap and sum to zero for prime order") {
  for (int m : {2, 3, 5, 7, 11, 13}) {
    CHECK(CycInt::zeta_pow(m, m) == CycInt::one(m));
    CHECK(CycInt::zeta_pow(m, -1) == CycInt::zeta_pow(m, m - 1));
    CycInt s = CycInt::zero(m);
    for (int e = 0; e < m; ++e) s += CycInt::zeta_pow(m, e);
    CHECK(s.is_zero());
    // 1 + zeta + ... + zeta^{m-2} = -zeta^{m-1}
    CycInt t = CycInt::zero(m);
    for (int e = 0; e < m - 1; ++e) t += CycInt::zeta_pow(m, e);
    CHECK(t.is_integer() == (m == 2));
  }
}

TEST_CASE("full geometric sum is -1 in the canonical basis") {
  // zeta + zeta^2 + ... + zeta^{m-1} = -1
  for (int m : {3, 5, 7, 9, 12, 31}) {
    CycInt s = CycInt::zero(m);
    for (int e = 1; e < m; ++e) s += CycInt::zeta_pow(m, e);
    CHECK(s.is_integer());
    CHECK(s.integer_value() == -1);
  }
}

TEST_CASE("multiplication agrees with the naive mod-Phi oracle") {
  std::mt19937 rng(20260810);
  for (int m : {3, 4, 5, 6, 7, 9, 12, 13, 19, 31}) {
    int phi = totient(m);
    std::uniform_int_distribution<Int> coeff(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Int> a(phi), b(phi);
      for (Int& x : a) x = coeff(rng);
      for (Int& x : b) x = coeff(rng);
      CycInt ca = from_coords(m, a), cb = from_coords(m, b);
      CHECK((ca * cb).coords() == naive_mul_mod_phi(m, ca.coords(), cb.coords()));
    }
  }
}

TEST_CASE("mixed order arithmetic is rejected") {
  CHECK_THROWS(CycInt::one(3) + CycInt::one(5));
}
