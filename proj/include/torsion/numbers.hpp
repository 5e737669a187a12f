#pragma once

// Elementary number theory on machine integers, plus checked 64-bit arithmetic.

#include <cstdint>
#include <numeric>
#include <vector>

#include <gmpxx.h>

#include "torsion/errors.hpp"

namespace torsion {

using Int = std::int64_t;
using BigInt = mpz_class;
using Rational = mpq_class;

namespace checked {

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer overflow in addition");
  return r;
}
inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow("integer overflow in subtraction");
  return r;
}
inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer overflow in multiplication");
  return r;
}

// Generic fallbacks so templated algorithms also run on BigInt.
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }

}  // namespace checked

/// Floor division and the matching non-negative modulus.
template <class T>
T floorDiv(const T& a, const T& b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}
template <class T>
T floorMod(const T& a, const T& b) {
  T r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

inline Int absValue(Int x) { return x < 0 ? -x : x; }
inline BigInt absValue(const BigInt& x) { return abs(x); }

inline Int gcdInt(Int a, Int b) { return std::gcd(a, b); }
inline Int lcmInt(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = std::gcd(a, b);
  return checked::mul(a / g < 0 ? -(a / g) : a / g, b < 0 ? -b : b);
}

/// Extended gcd: returns g >= 0 with s*a + t*b = g.
template <class T>
T extendedGcd(const T& a, const T& b, T& s, T& t) {
  T oldR = a, r = b, oldS = 1, curS = 0, oldT = 0, curT = 1;
  while (r != 0) {
    T q = oldR / r;
    T tmp = oldR - q * r;
    oldR = r;
    r = tmp;
    tmp = oldS - q * curS;
    oldS = curS;
    curS = tmp;
    tmp = oldT - q * curT;
    oldT = curT;
    curT = tmp;
  }
  if (oldR < 0) {
    oldR = -oldR;
    oldS = -oldS;
    oldT = -oldT;
  }
  s = oldS;
  t = oldT;
  return oldR;
}

inline Int eulerPhi(Int n) {
  Int result = n;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

inline std::vector<Int> divisors(Int n) {
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Q(zeta_m) = Q(zeta_{m/2}) when m = 2 (mod 4); canonical levels are odd or divisible by 4.
inline Int canonicalLevel(Int m) { return (m % 4 == 2) ? m / 2 : m; }

inline Int toInt(const BigInt& z) {
  if (!z.fits_slong_p()) throw Overflow("integer does not fit in 64 bits");
  return z.get_si();
}

}  // namespace torsion
