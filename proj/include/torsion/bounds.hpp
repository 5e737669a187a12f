#pragma once

// Exact evaluation of the explicit upper bounds for numbers of maximal torsion cosets.
//
// Constants whose exponents are rational are kept as formal products of powers. Everything else
// is an exact integer or rational.

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "torsion/poly.hpp"

namespace torsion {

namespace detail {

inline BigInt bigPow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// Refuse results that would not fit in memory comfortably.
inline unsigned long checkedExponent(const BigInt& base, const BigInt& e, const char* what) {
  constexpr double maxBits = 1e8;
  double bits = e.get_d() * static_cast<double>(mpz_sizeinbase(base.get_mpz_t(), 2));
  if (!e.fits_ulong_p() || bits > maxBits) throw Overflow(std::string(what) + ": value too large to expand");
  return e.get_ui();
}

inline void requireDimension(std::size_t n, std::size_t least) {
  if (n < least) throw InvalidArgument("bound requires n >= " + std::to_string(least));
}

}  // namespace detail

/// A formal product of powers base^exponent with positive integer bases and rational exponents.
struct PowerProduct {
  std::vector<std::pair<BigInt, Rational>> factors;

  PowerProduct& operator*=(const PowerProduct& b) {
    for (const auto& f : b.factors) factors.push_back(f);
    return *this;
  }

  /// Merge equal bases and drop trivial factors.
  PowerProduct simplified() const {
    std::vector<std::pair<BigInt, Rational>> fs = factors;
    std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    PowerProduct out;
    for (const auto& [b, e] : fs) {
      if (b == 1 || e == 0) continue;
      if (!out.factors.empty() && out.factors.back().first == b)
        out.factors.back().second += e;
      else
        out.factors.push_back({b, e});
    }
    return out;
  }

  bool isInteger() const {
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.second.get_den() == 1 && f.second >= 0; });
  }

  /// Exact integer value; requires integral exponents.
  BigInt value() const {
    if (!isInteger()) throw InvalidArgument("power product with fractional exponent is not an integer");
    BigInt r = 1;
    for (const auto& [b, e] : factors) r *= detail::bigPow(b, detail::checkedExponent(b, e.get_num(), "power product"));
    return r;
  }

  double log2() const {
    double s = 0;
    for (const auto& [b, e] : factors) s += e.get_d() * std::log2(b.get_d());
    return s;
  }

  std::string toString() const {
    auto s = simplified();
    if (s.factors.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < s.factors.size(); ++i) {
      if (i) out += " * ";
      out += s.factors[i].first.get_str() + "^" + s.factors[i].second.get_str();
    }
    return out;
  }
};

/// (11d)^{n^2} * C(n+d, d)^{3 C(n+d, d)^2}.
inline BigInt evertseSchmidtBound(std::size_t n, Int d) {
  detail::requireDimension(n, 1);
  if (d < 1) throw InvalidArgument("degree must be positive");
  BigInt c = detail::binomial(n + static_cast<unsigned long>(d), static_cast<unsigned long>(d));
  BigInt e = 3 * c * c;
  return detail::bigPow(11 * BigInt(d), n * n) * detail::bigPow(c, detail::checkedExponent(c, e, "evertseSchmidtBound"));
}

/// Isolated torsion points on a plane curve of degree d: 11 d^2 + d.
inline BigInt planeCurveBound(Int d) {
  if (d < 1) throw InvalidArgument("degree must be positive");
  return 11 * BigInt(d) * d + d;
}

/// Isolated torsion points on a plane curve in terms of the Newton polygon area.
inline Rational polygonAreaBound(const Rational& vol2) {
  if (vol2 < 0) throw InvalidArgument("area must be nonnegative");
  return 22 * vol2;
}

/// Area of the Newton polygon of a polynomial in two variables.
inline Rational newtonPolygonArea(const LaurentPolynomial& f) {
  if (f.nvars() != 2) throw InvalidArgument("newtonPolygonArea: two variables required");
  auto pts = f.support();
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 3) return 0;
  auto cross = [](const Exponent& o, const Exponent& a, const Exponent& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Exponent> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  BigInt twice = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    twice += BigInt(a[0]) * b[1] - BigInt(a[1]) * b[0];
  }
  Rational area(abs(twice), 2);
  area.canonicalize();
  return area;
}

// Hypersurface bound c1(n) d^{c2(n)}.

inline PowerProduct hypersurfaceConstant(std::size_t n) {
  detail::requireDimension(n, 2);
  Rational e = Rational(3, 2) * BigInt(2 + n) * detail::bigPow(5, n);
  return PowerProduct{{{BigInt(n), e}}};
}

inline Rational hypersurfaceExponent(std::size_t n) {
  detail::requireDimension(n, 2);
  Rational c(49 * detail::bigPow(5, n - 2) - 4 * BigInt(n) - 9, 16);
  c.canonicalize();
  return c;
}

// Variety bound c3(n) d^{c4(n)}.

inline PowerProduct varietyConstant(std::size_t n) {
  detail::requireDimension(n, 2);
  Rational s = 0;
  for (std::size_t i = 2; i + 1 <= n - 1; ++i) s += hypersurfaceExponent(i);
  PowerProduct p{{{BigInt(n), BigInt(2 + n) * detail::bigPow(2, n - 2) * s}}};
  for (std::size_t i = 2; i <= n; ++i) p *= hypersurfaceConstant(i);
  return p.simplified();
}

inline Rational varietyExponent(std::size_t n) {
  detail::requireDimension(n, 2);
  Rational s = detail::bigPow(2, n - 1);
  for (std::size_t i = 2; i <= n; ++i) s += hypersurfaceExponent(i) * detail::bigPow(2, n - i);
  return s;
}

/// Degree bound after rescaling to a full exponent lattice: n^2 (n+1)! d.
inline BigInt rescaleDegree(std::size_t n, const BigInt& d) { return BigInt(n * n) * detail::factorial(n + 1) * d; }

/// Degree bound for the eliminated companions: n(n+1)d + 2(n-1)(n^2-1) n! d^3.
inline BigInt projectionDegree(std::size_t n, const BigInt& d) {
  detail::requireDimension(n, 1);
  return BigInt(n * (n + 1)) * d + 2 * BigInt(n - 1) * BigInt(n * n - 1) * detail::factorial(n) * d * d * d;
}

/// Upper bound for the number of maximal torsion cosets of a hypersurface of degree at most d,
/// from the recurrence T(n,d) <= (2nd)^{n+1} T(n-1, n^{8+4n} d^2) T(n-1, n^{8+4n} d^3), T(2,d) <= 11d^2 + d.
inline BigInt hypersurfaceRecurrenceBound(std::size_t n, const BigInt& d) {
  detail::requireDimension(n, 2);
  if (d < 1) throw InvalidArgument("degree must be positive");
  if (n == 2) return 11 * d * d + d;
  if (mpz_sizeinbase(d.get_mpz_t(), 2) > (1u << 16)) throw Overflow("hypersurfaceRecurrenceBound: value too large to expand");
  BigInt k = detail::bigPow(BigInt(n), 8 + 4 * n);
  BigInt lead = detail::bigPow(2 * BigInt(n) * d, n + 1);
  return lead * hypersurfaceRecurrenceBound(n - 1, k * d * d) * hypersurfaceRecurrenceBound(n - 1, k * d * d * d);
}

/// Upper bound for T(i, n, d), the maximal i-dimensional cosets on a hypersurface of degree d.
inline BigInt cosetCountBound(std::size_t i, std::size_t n, const BigInt& d) {
  if (n == 0 || i >= n) throw InvalidArgument("cosetCountBound: need i < n");
  if (n == 1) return d;
  return hypersurfaceRecurrenceBound(n, d);
}

using CosetCountTable = std::function<BigInt(std::size_t i, std::size_t n, const BigInt& d)>;

/// Right-hand sides bounding T^n_i(f) for irreducible f of degree d with full exponent lattice,
/// in terms of counts in dimension n-1 supplied by `t`. Index i runs over 0..n-1.
inline std::vector<BigInt> fullLatticeRecurrence(std::size_t n, const BigInt& d, const CosetCountTable& t = cosetCountBound) {
  detail::requireDimension(n, 2);
  const BigInt family = detail::bigPow(2, n + 1) - 1;
  const BigInt c2 = projectionDegree(n, d);
  const BigInt dd = 2 * d * d;
  // Sum of T(s, n-1, 2d^2) for s = from..n-2.
  auto tail = [&](std::size_t from) {
    BigInt sum = 0;
    for (std::size_t s = from; s + 2 <= n; ++s) sum += t(s, n - 1, dd);
    return sum;
  };
  std::vector<BigInt> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == n - 1) {
      out[i] = 1;
    } else if (i == 0) {
      out[i] = family * (t(0, n - 1, c2) * tail(1) + d * t(0, n - 1, dd));
    } else if (i == 1) {
      out[i] = family * (t(1, n - 1, c2) * tail(1) + t(0, n - 1, dd));
    } else {
      out[i] = family * t(i, n - 1, c2) * tail(i - 1);
    }
  }
  return out;
}

/// N_tor(n, d) <= T(n, d) N_tor(n-1, n^{2+n} d^2) with N_tor(1, d) = d.
inline BigInt varietyRecurrenceBound(std::size_t n, const BigInt& d) {
  detail::requireDimension(n, 1);
  if (n == 1) return d;
  return hypersurfaceRecurrenceBound(n, d) * varietyRecurrenceBound(n - 1, detail::bigPow(BigInt(n), 2 + n) * d * d);
}

struct BoundCatalog {
  std::size_t n = 0;
  Int d = 0;
  BigInt evertseSchmidt;
  BigInt planeCurve;
  PowerProduct hypersurfaceConstant;
  Rational hypersurfaceExponent;
  PowerProduct varietyConstant;
  Rational varietyExponent;
  BigInt rescaleDegree;
  BigInt projectionDegree;
  std::vector<BigInt> fullLatticeRecurrence;
  BigInt hypersurfaceRecurrence;
  BigInt varietyRecurrence;
};

inline BoundCatalog boundCatalog(std::size_t n, Int d) {
  detail::requireDimension(n, 2);
  if (d < 1) throw InvalidArgument("degree must be positive");
  BoundCatalog c;
  c.n = n;
  c.d = d;
  c.evertseSchmidt = evertseSchmidtBound(n, d);
  c.planeCurve = planeCurveBound(d);
  c.hypersurfaceConstant = hypersurfaceConstant(n);
  c.hypersurfaceExponent = hypersurfaceExponent(n);
  c.varietyConstant = varietyConstant(n);
  c.varietyExponent = varietyExponent(n);
  c.rescaleDegree = rescaleDegree(n, d);
  c.projectionDegree = projectionDegree(n, d);
  c.fullLatticeRecurrence = fullLatticeRecurrence(n, d);
  c.hypersurfaceRecurrence = hypersurfaceRecurrenceBound(n, d);
  c.varietyRecurrence = varietyRecurrenceBound(n, d);
  return c;
}

}  // namespace torsion
