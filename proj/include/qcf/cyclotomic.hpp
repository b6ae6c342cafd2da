#pragma once

#include "qcf/rational.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcf {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero scalar") {}
};

namespace poly {

/// Dense polynomial over Q, coefficient of x^i at index i.
using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  trim(out);
  return out;
}

/// Quotient and remainder; `d` must be nonzero after trimming.
inline std::pair<Poly, Poly> divmod(Poly n, Poly d) {
  trim(n);
  trim(d);
  if (d.empty()) throw DivisionByZero();
  if (n.size() < d.size()) return {Poly{}, n};
  Poly q(n.size() - d.size() + 1);
  const Rational lead = d.back();
  for (std::size_t k = n.size(); k-- >= d.size();) {
    if (n[k] == 0) continue;
    Rational t = n[k] / lead;
    std::size_t shift = k - (d.size() - 1);
    q[shift] = t;
    for (std::size_t j = 0; j < d.size(); ++j) n[shift + j] -= t * d[j];
  }
  trim(q);
  trim(n);
  return {q, n};
}

/// Remainder modulo a monic polynomial.
inline void reduce_monic(Poly& p, const Poly& m) {
  const std::size_t deg = m.size() - 1;
  for (std::size_t k = p.size(); k-- > deg;) {
    if (p[k] == 0) continue;
    Rational t = p[k];
    for (std::size_t j = 0; j <= deg; ++j) p[k - deg + j] -= t * m[j];
  }
  if (p.size() > deg) p.resize(deg);
}

}  // namespace poly

inline std::uint64_t euler_totient(std::uint64_t m) {
  std::uint64_t result = m;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

/// Phi_m, computed by dividing x^m - 1 by Phi_d for every proper divisor d.
inline const poly::Poly& cyclotomic_polynomial(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
  static std::mutex guard;
  static std::map<std::uint64_t, poly::Poly> cache;
  {
    std::lock_guard lock(guard);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  poly::Poly num(m + 1);
  num[0] = -1;
  num[m] = 1;
  for (std::uint64_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    num = poly::divmod(num, cyclotomic_polynomial(d)).first;
  }
  std::lock_guard lock(guard);
  return cache.emplace(m, std::move(num)).first->second;
}

/// An element of Q(zeta_m), stored as its residue modulo Phi_m in the
/// power basis 1, zeta, ..., zeta^(phi(m)-1).
class CyclotomicScalar {
 public:
  CyclotomicScalar() : conductor_(1), coeffs_(1) {}
  CyclotomicScalar(long long v) : conductor_(1), coeffs_{Rational(v)} {}  // NOLINT
  CyclotomicScalar(Rational v) : conductor_(1), coeffs_{std::move(v)} {}  // NOLINT

  /// Build from an arbitrary polynomial in zeta_m; reduces modulo Phi_m.
  static CyclotomicScalar from_polynomial(std::uint64_t m, poly::Poly p) {
    if (m == 0) throw std::invalid_argument("conductor must be positive");
    const auto& phi = cyclotomic_polynomial(m);
    poly::reduce_monic(p, phi);
    p.resize(phi.size() - 1);
    CyclotomicScalar out;
    out.conductor_ = m;
    out.coeffs_ = std::move(p);
    return out;
  }

  static CyclotomicScalar zeta(std::uint64_t m, long long k = 1) {
    if (m == 0) throw std::invalid_argument("conductor must be positive");
    long long e = k % static_cast<long long>(m);
    if (e < 0) e += static_cast<long long>(m);
    poly::Poly p(static_cast<std::size_t>(e) + 1);
    p[static_cast<std::size_t>(e)] = 1;
    return from_polynomial(m, std::move(p));
  }

  std::uint64_t conductor() const { return conductor_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }
  /// Only meaningful when is_rational().
  const Rational& rational_value() const { return coeffs_[0]; }

  /// Same value expressed over Q(zeta_L); requires conductor() | L.
  CyclotomicScalar lifted(std::uint64_t L) const {
    if (L == conductor_) return *this;
    if (L % conductor_ != 0) throw std::invalid_argument("lift target is not a multiple of the conductor");
    const std::uint64_t step = L / conductor_;
    poly::Poly p((coeffs_.size() - 1) * step + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i * step] = coeffs_[i];
    return from_polynomial(L, std::move(p));
  }

  CyclotomicScalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (conductor_ == 1) return CyclotomicScalar(Rational(1) / coeffs_[0]);
    // Extended Euclid: find u with a*u = 1 mod Phi_m.
    poly::Poly r0 = cyclotomic_polynomial(conductor_), r1 = coeffs_;
    poly::trim(r1);
    poly::Poly s0{}, s1{Rational(1)};
    while (!(r1.size() == 1)) {
      auto [q, r] = poly::divmod(r0, r1);
      poly::Poly s2 = s0;
      auto qs = poly::mul(q, s1);
      if (s2.size() < qs.size()) s2.resize(qs.size());
      for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
      poly::trim(s2);
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    for (auto& c : s1) c /= r1[0];
    return from_polynomial(conductor_, std::move(s1));
  }

  std::optional<CyclotomicScalar> try_divide(const CyclotomicScalar& d) const {
    if (d.is_zero()) return std::nullopt;
    return *this * d.inverse();
  }

  CyclotomicScalar pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    CyclotomicScalar result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  CyclotomicScalar operator-() const {
    CyclotomicScalar out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  CyclotomicScalar& operator+=(const CyclotomicScalar& o) { return combine(o, +1); }
  CyclotomicScalar& operator-=(const CyclotomicScalar& o) { return combine(o, -1); }

  CyclotomicScalar& operator*=(const CyclotomicScalar& o) {
    if (o.conductor_ == 1) {
      for (auto& c : coeffs_) c *= o.coeffs_[0];
      return *this;
    }
    if (conductor_ == 1) {
      Rational k = coeffs_[0];
      *this = o;
      for (auto& c : coeffs_) c *= k;
      return *this;
    }
    const std::uint64_t L = std::lcm(conductor_, o.conductor_);
    auto a = lifted(L), b = o.lifted(L);
    *this = from_polynomial(L, poly::mul(a.coeffs_, b.coeffs_));
    return *this;
  }
  CyclotomicScalar& operator/=(const CyclotomicScalar& o) { return *this *= o.inverse(); }

  friend CyclotomicScalar operator+(CyclotomicScalar a, const CyclotomicScalar& b) { return a += b; }
  friend CyclotomicScalar operator-(CyclotomicScalar a, const CyclotomicScalar& b) { return a -= b; }
  friend CyclotomicScalar operator*(CyclotomicScalar a, const CyclotomicScalar& b) { return a *= b; }
  friend CyclotomicScalar operator/(CyclotomicScalar a, const CyclotomicScalar& b) { return a /= b; }

  friend bool operator==(const CyclotomicScalar& a, const CyclotomicScalar& b) {
    if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
    const std::uint64_t L = std::lcm(a.conductor_, b.conductor_);
    return a.lifted(L).coeffs_ == b.lifted(L).coeffs_;
  }

  /// "p/q" for rational values, otherwise "cyc(m)[c0,c1,...]".
  std::string to_string() const {
    if (is_rational()) return qcf::to_string(coeffs_[0]);
    std::string out = "cyc(" + std::to_string(conductor_) + ")[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) out += ",";
      out += qcf::to_string(coeffs_[i]);
    }
    return out + "]";
  }

  static CyclotomicScalar parse(std::string_view text) {
    if (text.substr(0, 4) != "cyc(") return CyclotomicScalar(parse_rational(text));
    auto close = text.find(')');
    auto open = text.find('[', close);
    auto end = text.rfind(']');
    if (close == std::string_view::npos || open != close + 1 || end == std::string_view::npos || end < open)
      throw std::invalid_argument("malformed cyclotomic scalar '" + std::string(text) + "'");
    std::uint64_t m = std::stoull(std::string(text.substr(4, close - 4)));
    if (m == 0) throw std::invalid_argument("conductor must be positive");
    poly::Poly p;
    auto body = text.substr(open + 1, end - open - 1);
    while (!body.empty()) {
      auto comma = body.find(',');
      p.push_back(parse_rational(body.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    if (p.size() != euler_totient(m))
      throw std::invalid_argument("cyclotomic scalar needs phi(m) coefficients");
    return from_polynomial(m, std::move(p));
  }

  friend std::ostream& operator<<(std::ostream& os, const CyclotomicScalar& s) { return os << s.to_string(); }

 private:
  CyclotomicScalar& combine(const CyclotomicScalar& o, int sign) {
    if (conductor_ != o.conductor_) {
      const std::uint64_t L = std::lcm(conductor_, o.conductor_);
      if (L != conductor_) *this = lifted(L);
      if (L != o.conductor_) return combine(o.lifted(L), sign);
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (sign > 0)
        coeffs_[i] += o.coeffs_[i];
      else
        coeffs_[i] -= o.coeffs_[i];
    }
    return *this;
  }

  std::uint64_t conductor_;
  std::vector<Rational> coeffs_;
};

using Scalar = CyclotomicScalar;

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const CyclotomicScalar& s) { return s.is_zero(); }

/// zeta_m^k kept in lowest terms, so the stored pair always names a
/// primitive root of the stored order.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(std::uint64_t m, long long k) {
    if (m == 0) throw std::invalid_argument("root of unity of order 0");
    long long e = k % static_cast<long long>(m);
    if (e < 0) e += static_cast<long long>(m);
    std::uint64_t g = std::gcd(static_cast<std::uint64_t>(e), m);
    order_ = m / g;
    exponent_ = static_cast<long long>(static_cast<std::uint64_t>(e) / g);
  }

  /// Requires gcd(k, m) = 1.
  static RootOfUnity primitive(std::uint64_t m, long long k = 1) {
    long long e = k % static_cast<long long>(m);
    if (e < 0) e += static_cast<long long>(m);
    if (std::gcd(static_cast<std::uint64_t>(e), m) != 1)
      throw std::invalid_argument("exponent not coprime to the order");
    return RootOfUnity(m, k);
  }

  std::uint64_t order() const { return order_; }
  long long exponent() const { return exponent_; }

  RootOfUnity pow(long long e) const {
    // exponent * e mod order without overflow for the small orders used here
    long long m = static_cast<long long>(order_);
    long long r = ((e % m) + m) % m;
    return RootOfUnity(order_, (exponent_ * r) % m);
  }
  RootOfUnity inverse() const { return RootOfUnity(order_, -exponent_); }

  friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
    std::uint64_t L = std::lcm(a.order_, b.order_);
    long long e = a.exponent_ * static_cast<long long>(L / a.order_) + b.exponent_ * static_cast<long long>(L / b.order_);
    return RootOfUnity(L, e);
  }
  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

  CyclotomicScalar to_scalar() const { return CyclotomicScalar::zeta(order_, exponent_); }

  std::string to_string() const {
    return "zeta(" + std::to_string(order_) + ")^" + std::to_string(exponent_);
  }

 private:
  std::uint64_t order_ = 1;
  long long exponent_ = 0;
};

}  // namespace qcf
