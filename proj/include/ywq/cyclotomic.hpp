#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ywq {

using Int = long long;

// Coefficients of the m-th cyclotomic polynomial, lowest degree first,
// monic, computed by dividing x^m - 1 by all lower-order cyclotomic
// polynomials. Results are cached per order.
const std::vector<Int>& cyclotomic_polynomial(int order);

// Euler totient.
int totient(int m);

// An element of Z[zeta_m], zeta_m a primitive m-th root of unity, stored
// in the canonical basis 1, zeta, ..., zeta^{phi(m)-1} (reduced mod Phi_m).
// Two values are equal iff their coordinate vectors are equal.
class CycInt {
public:
  CycInt() : order_(1), c_(1, 0) {}
  CycInt(int order, Int constant);

  static CycInt zero(int order) { return CycInt(order, 0); }
  static CycInt one(int order) { return CycInt(order, 1); }
  // zeta^e, e arbitrary integer (reduced mod order).
  static CycInt zeta_pow(int order, long long e);

  int order() const { return order_; }
  const std::vector<Int>& coords() const { return c_; }

  bool is_zero() const;
  // True iff all coordinates except the constant one vanish.
  bool is_integer() const;
  Int integer_value() const;  // requires is_integer()

  CycInt operator-() const;
  CycInt& operator+=(const CycInt& o);
  CycInt& operator-=(const CycInt& o);
  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator*(const CycInt& o) const;
  CycInt& operator*=(const CycInt& o) { return *this = *this * o; }
  CycInt operator*(Int k) const;

  bool operator==(const CycInt& o) const = default;

  // Renders as a polynomial in "zeta", e.g. "1 - zeta + 2*zeta^3".
  std::string to_string() const;

private:
  // Reduce an arbitrary coefficient vector (degree < order is enough)
  // modulo Phi_m into canonical coordinates.
  static std::vector<Int> reduce(int order, std::vector<Int> poly);
  void check_same_order(const CycInt& o) const;

  int order_;
  std::vector<Int> c_;
};

std::ostream& operator<<(std::ostream& os, const CycInt& v);

}  // namespace ywq
