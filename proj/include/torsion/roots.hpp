#pragma once

// Roots of unity as exponents in Q/Z, and torsion points of the torus as vectors of them.

#include <compare>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "torsion/cyclotomic.hpp"
#include "torsion/numbers.hpp"

namespace torsion {

/// e^{2 pi i num/den} with 0 <= num < den and gcd(num, den) = 1 (or 0/1).
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(Int num, Int den) {
    if (den <= 0) throw InvalidArgument("root of unity denominator must be positive");
    num = floorMod(num, den);
    Int g = std::gcd(num, den);
    if (num == 0) g = den;
    num_ = num / g;
    den_ = den / g;
  }
  static RootOfUnity fromRational(const Rational& r) {
    Rational frac = r - Rational(floorDiv(BigInt(r.get_num()), BigInt(r.get_den())));
    return RootOfUnity(toInt(frac.get_num()), toInt(frac.get_den()));
  }

  Int num() const noexcept { return num_; }
  Int den() const noexcept { return den_; }
  /// Multiplicative order of the root of unity.
  Int order() const noexcept { return den_; }
  bool isOne() const noexcept { return num_ == 0; }
  Rational asRational() const { return Rational(num_, den_); }

  Cyclo value() const { return Cyclo::rootOfUnity(num_, den_); }

  /// Group operation (multiplication of roots = addition of exponents).
  friend RootOfUnity operator+(const RootOfUnity& a, const RootOfUnity& b) {
    Int l = lcmInt(a.den_, b.den_);
    return RootOfUnity(checked::add(checked::mul(a.num_, l / a.den_), checked::mul(b.num_, l / b.den_)), l);
  }
  friend RootOfUnity operator-(const RootOfUnity& a) { return RootOfUnity(-a.num_, a.den_); }
  friend RootOfUnity operator-(const RootOfUnity& a, const RootOfUnity& b) { return a + (-b); }
  /// k-th power.
  friend RootOfUnity operator*(Int k, const RootOfUnity& a) {
    return RootOfUnity(floorMod(checked::mul(floorMod(k, a.den_), a.num_), a.den_), a.den_);
  }

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  friend auto operator<=>(const RootOfUnity& a, const RootOfUnity& b) {
    if (auto c = a.den_ <=> b.den_; c != 0) return c;
    return a.num_ <=> b.num_;
  }

  std::string toString() const { return std::to_string(num_) + "/" + std::to_string(den_); }
  friend std::ostream& operator<<(std::ostream& os, const RootOfUnity& r) { return os << r.toString(); }

 private:
  Int num_ = 0;
  Int den_ = 1;
};

using TorsionPoint = std::vector<RootOfUnity>;

/// Order of a torsion point: lcm of coordinate orders.
inline Int pointOrder(const TorsionPoint& q) {
  Int l = 1;
  for (const auto& c : q) l = lcmInt(l, c.den());
  return l;
}

/// The character value omega^v, returned as an exponent in Q/Z.
inline RootOfUnity pointPower(const TorsionPoint& q, std::span<const Int> v) {
  if (q.size() != v.size()) throw InvalidArgument("pointPower: dimension mismatch");
  RootOfUnity acc;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (v[i] != 0) acc = acc + v[i] * q[i];
  return acc;
}

inline std::string pointToString(const TorsionPoint& q) {
  std::string s = "(";
  for (std::size_t i = 0; i < q.size(); ++i) s += (i ? ", " : "") + q[i].toString();
  return s + ")";
}

/// Exponent p such that a primitive m-th root of unity omega is conjugate to omega^p, with
/// omega^p = -omega (4 | m), -omega^2 (m = 2k, k odd) or omega^2 (m odd).
inline Int conjugateExponent(Int m) {
  if (m < 1) throw InvalidArgument("order must be positive");
  if (m % 4 == 0) return m / 2 + 1;
  if (m % 2 == 0) return m / 2 + 2;
  return 2;
}

}  // namespace torsion
