#include "ywq/cyclotomic.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ywq {

int totient(int m) {
  if (m < 1) throw std::invalid_argument("totient: order must be positive");
  int result = m;
  int x = m;
  for (int p = 2; p * p <= x; ++p) {
    if (x % p == 0) {
      result -= result / p;
      while (x % p == 0) x /= p;
    }
  }
  if (x > 1) result -= result / x;
  return result;
}

namespace {

// Exact division of integer polynomials, quotient returned, throws if the
// division is not exact. Divisor must be monic. Coefficients low to high.
std::vector<Int> exact_divide(std::vector<Int> num, const std::vector<Int>& den) {
  if (den.empty() || den.back() != 1)
    throw std::logic_error("exact_divide: divisor must be monic");
  int dn = static_cast<int>(num.size()) - 1;
  int dd = static_cast<int>(den.size()) - 1;
  if (dn < dd) throw std::logic_error("exact_divide: degree underflow");
  std::vector<Int> quot(dn - dd + 1, 0);
  for (int k = dn - dd; k >= 0; --k) {
    Int c = num[k + dd];
    quot[k] = c;
    if (c != 0)
      for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
  }
  for (Int c : num)
    if (c != 0) throw std::logic_error("exact_divide: division not exact");
  return quot;
}

struct OrderData {
  int phi;
  std::vector<Int> poly;  // Phi_m
  // x^k mod Phi_m for phi <= k < order, each a vector of length phi.
  std::vector<std::vector<Int>> high_powers;
};

const OrderData& order_data(int m) {
  static std::map<int, OrderData> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");

  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, recursively.
  std::function<const std::vector<Int>&(int)> phi_poly = [&](int k) -> const std::vector<Int>& {
    auto found = cache.find(k);
    if (found != cache.end()) return found->second.poly;
    std::vector<Int> p(k + 1, 0);
    p[0] = -1;
    p[k] = 1;
    for (int d = 1; d < k; ++d)
      if (k % d == 0) p = exact_divide(std::move(p), phi_poly(d));
    OrderData data;
    data.phi = static_cast<int>(p.size()) - 1;
    data.poly = std::move(p);
    auto [pos, inserted] = cache.emplace(k, std::move(data));
    (void)inserted;
    return pos->second.poly;
  };
  phi_poly(m);

  OrderData& data = cache.at(m);
  if (data.phi != totient(m)) throw std::logic_error("cyclotomic degree mismatch");
  // Precompute reductions of x^phi .. x^{m-1}; x^{phi + t} = x^t * (x^phi mod Phi).
  data.high_powers.clear();
  std::vector<Int> cur(data.phi, 0);
  // x^phi mod Phi = -(lower part of Phi).
  for (int i = 0; i < data.phi; ++i) cur[i] = -data.poly[i];
  data.high_powers.push_back(cur);
  for (int k = data.phi + 1; k < m; ++k) {
    std::vector<Int> next(data.phi, 0);
    // multiply cur by x, reducing the overflow term.
    Int top = cur[data.phi - 1];
    for (int i = data.phi - 1; i > 0; --i) next[i] = cur[i - 1];
    next[0] = 0;
    if (top != 0)
      for (int i = 0; i < data.phi; ++i) next[i] += top * data.high_powers[0][i];
    data.high_powers.push_back(next);
    cur = std::move(next);
  }
  return data;
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(int order) { return order_data(order).poly; }

CycInt::CycInt(int order, Int constant) : order_(order), c_(order_data(order).phi, 0) {
  if (!c_.empty()) c_[0] = constant;
  if (c_.empty()) c_.push_back(constant);  // never happens: phi >= 1
}

std::vector<Int> CycInt::reduce(int order, std::vector<Int> poly) {
  const OrderData& data = order_data(order);
  std::vector<Int> out(data.phi, 0);
  for (int k = 0; k < static_cast<int>(poly.size()); ++k) {
    Int c = poly[k];
    if (c == 0) continue;
    int e = k % order;
    if (e < data.phi) {
      out[e] += c;
    } else {
      const std::vector<Int>& rep = data.high_powers[e - data.phi];
      for (int i = 0; i < data.phi; ++i) out[i] += c * rep[i];
    }
  }
  return out;
}

CycInt CycInt::zeta_pow(int order, long long e) {
  long long r = e % order;
  if (r < 0) r += order;
  std::vector<Int> poly(static_cast<size_t>(r) + 1, 0);
  poly[static_cast<size_t>(r)] = 1;
  CycInt v;
  v.order_ = order;
  v.c_ = reduce(order, std::move(poly));
  return v;
}

bool CycInt::is_zero() const {
  for (Int c : c_)
    if (c != 0) return false;
  return true;
}

bool CycInt::is_integer() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Int CycInt::integer_value() const {
  if (!is_integer()) throw std::logic_error("CycInt: not an integer");
  return c_[0];
}

void CycInt::check_same_order(const CycInt& o) const {
  if (order_ != o.order_) throw std::invalid_argument("CycInt: mixed cyclotomic orders");
}

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (Int& c : r.c_) c = -c;
  return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
  check_same_order(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
  check_same_order(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycInt CycInt::operator+(const CycInt& o) const {
  CycInt r = *this;
  r += o;
  return r;
}

CycInt CycInt::operator-(const CycInt& o) const {
  CycInt r = *this;
  r -= o;
  return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
  check_same_order(o);
  std::vector<Int> conv(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) conv[i + j] += c_[i] * o.c_[j];
  }
  CycInt r;
  r.order_ = order_;
  r.c_ = reduce(order_, std::move(conv));
  return r;
}

CycInt CycInt::operator*(Int k) const {
  CycInt r = *this;
  for (Int& c : r.c_) c *= k;
  return r;
}

std::string CycInt::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    Int c = c_[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Int a = c < 0 ? -c : c;
    if (i == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "zeta";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycInt& v) { return os << v.to_string(); }

}  // namespace ywq
